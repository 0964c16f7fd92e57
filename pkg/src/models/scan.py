"""
Pydantic models and records for parameter scans
"""
from dataclasses import dataclass, field
from typing import List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.models.params import IntegrationConfig, SystemParams

Axis = Literal["delta", "Delta", "G", "locked"]
Engine = Literal["analytic", "bloch", "timedomain"]

_AXIS_ALIASES = {
    "locked_delta_equals_Delta": "locked",
    "locked_delta_equals_delta": "locked",
}


class ScanSpec(BaseModel):
    """Request model for a one-dimensional scan"""

    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={
            "example": {
                "axis": "delta",
                "lo": -10.0,
                "hi": 20.0,
                "points": 601,
                "engine": "analytic",
            }
        },
    )

    axis: Axis = Field(default="delta", description="Swept coordinate; locked sets delta = Delta")
    lo: float = Field(..., description="First grid value, units of gamma")
    hi: float = Field(..., description="Last grid value, units of gamma")
    points: int = Field(default=601, ge=2, description="Number of grid points")
    base: SystemParams = Field(default_factory=SystemParams, description="Values of the fixed parameters")
    engine: Engine = Field(default="analytic", description="Engine evaluating each point")
    integration: IntegrationConfig = Field(default_factory=IntegrationConfig,
                                           description="Settings for the time-domain engine")
    workers: int = Field(default=1, ge=1, description="Points evaluated concurrently")

    @field_validator("axis", mode="before")
    @classmethod
    def normalize_axis(cls, v):
        return _AXIS_ALIASES.get(v, v)

    @model_validator(mode="after")
    def check_range(self) -> "ScanSpec":
        if not self.lo < self.hi:
            raise ValueError(f"Scan range must satisfy lo < hi, got [{self.lo}, {self.hi}]")
        return self

    def values(self) -> np.ndarray:
        """Grid of axis values"""
        return np.linspace(self.lo, self.hi, self.points)

    def params_at(self, value: float) -> SystemParams:
        """Parameter set at one axis value"""
        value = float(value)
        if self.axis == "locked":
            return self.base.locked(value)
        return self.base.replace(**{self.axis: value})


@dataclass(frozen=True)
class SusceptibilityPoint:
    """Normalized susceptibilities at one scan coordinate"""
    value: float
    delta: float
    Delta: float
    G: complex
    chi_minus: complex
    chi_plus: Optional[complex]
    term_coh_pp: Optional[complex]
    term_coh_mm: Optional[complex]
    term_pop: Optional[complex]
    populations: Optional[Tuple[float, float, float, float]]
    engine: str

    @property
    def has_terms(self) -> bool:
        return self.term_coh_pp is not None


@dataclass(frozen=True)
class FlaggedPoint:
    """Grid point that produced no susceptibility"""
    value: float
    kind: Literal["dropped", "error"]
    reason: str


@dataclass(frozen=True)
class ScanResult:
    """Ordered scan output"""
    spec: ScanSpec
    engine: str
    points: List[SusceptibilityPoint] = field(default_factory=list)
    flagged: List[FlaggedPoint] = field(default_factory=list)

    def coordinates(self) -> np.ndarray:
        return np.array([p.value for p in self.points])

    def chi_minus(self) -> np.ndarray:
        return np.array([p.chi_minus for p in self.points], dtype=complex)

    def point_at(self, value: float, tol: float = 1e-9) -> Optional[SusceptibilityPoint]:
        """Point whose axis value matches within tol"""
        for point in self.points:
            if abs(point.value - value) <= tol:
                return point
        return None


@dataclass(frozen=True)
class GainInterval:
    """Maximal run of the axis with Im chi- below -tol"""
    lo: float
    hi: float
    grid_lo: float
    grid_hi: float
    min_im_chi: float
    argmin: float


@dataclass(frozen=True)
class FeatureReport:
    """Transparency points, gain windows, dispersion zeros and predicted markers"""
    transparency_points: List[float]
    gain_intervals: List[GainInterval]
    dispersion_zeros: List[float]
    delta_zero: Optional[float] = None
    cardano_markers: List[float] = field(default_factory=list)
    lambda_zero_markers: List[float] = field(default_factory=list)
    refined: bool = True
