"""
Pydantic models for the physical inputs of a simulation
All frequencies and rates are in units of gamma = A/12.
"""
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, field_validator

from src.utils.validators import require_finite, require_nonzero_coupling, require_positive


class SystemParams(BaseModel):
    """Physical parameters of the four-level system"""

    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={
            "example": {
                "B": 2.0,
                "B_prime": 6.0,
                "Delta": 4.0,
                "delta": 4.0,
                "G": 0.5,
                "gamma1": 4.0,
                "gamma2": 2.0,
            }
        },
    )

    B: float = Field(default=2.0, description="Excited-state half-splitting (separation 2B)")
    B_prime: float = Field(default=6.0, description="Ground-state half-splitting (separation 2B')")
    Delta: float = Field(default=4.0, description="Control detuning from the e+ <-> g+ line")
    delta: float = Field(default=4.0, description="Probe detuning from the e+ <-> g- line")
    G: complex = Field(default=0.5 + 0j, description="Control Rabi half-amplitude")
    gamma1: float = Field(default=4.0, description="Cross decay rate e- -> g+ and e+ -> g-")
    gamma2: float = Field(default=2.0, description="Direct decay rate e+ -> g+ and e- -> g-")

    @field_validator("G", mode="before")
    @classmethod
    def coerce_complex(cls, v: Any) -> complex:
        """Accept real numbers and numeric strings for G"""
        if isinstance(v, str):
            v = v.strip().replace(" ", "")
        try:
            return complex(v)
        except (TypeError, ValueError) as exc:
            raise ValueError(f"G must be a number, got {v!r}") from exc

    @field_validator("G")
    @classmethod
    def check_coupling(cls, v: complex) -> complex:
        require_nonzero_coupling(v)
        return v

    @field_validator("gamma1", "gamma2")
    @classmethod
    def check_rate(cls, v: float, info) -> float:
        require_positive(info.field_name, v)
        return v

    @field_validator("B", "B_prime", "Delta", "delta")
    @classmethod
    def check_frequency(cls, v: float, info) -> float:
        require_finite(info.field_name, v)
        return v

    def replace(self, **changes: Any) -> "SystemParams":
        """Return a validated copy with some fields changed"""
        return type(self).model_validate({**self.model_dump(), **changes})

    def locked(self, detuning: float) -> "SystemParams":
        """Copy with probe and control detunings both set to the given value"""
        return self.replace(delta=detuning, Delta=detuning)

    def at_two_photon_resonance(self) -> "SystemParams":
        """Copy with delta = Delta = B' - B"""
        return self.locked(self.B_prime - self.B)


class IntegrationConfig(BaseModel):
    """Settings for the time-domain oracle"""

    model_config = ConfigDict(frozen=True)

    probe_amplitude: float = Field(default=1e-3, ge=0.0, description="Probe half-amplitude for both g- and g+")
    t_end: float = Field(default=2000.0, gt=0.0, description="Total integration time, units of 1/gamma")
    dt: float = Field(default=2e-3, gt=0.0, description="Requested step; snapped down to divide the beat period")
    demod_window: float = Field(default=0.25, gt=0.0, le=0.5, description="Trailing fraction of the run used for demodulation")
    samples_per_period: int = Field(default=16, ge=4, description="Stored samples per beat period")
