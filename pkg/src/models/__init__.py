from .params import SystemParams, IntegrationConfig
from .derived import DerivedRates, SaturationFactors, SidebandCoefficients, derive
from .states import (
    BASIS,
    ZerothOrderState,
    FirstOrderResponse,
    CardanoRoots,
    DensityMatrix,
    LiouvillianBlocks,
    HarmonicComponents,
)
from .scan import ScanSpec, ScanResult, SusceptibilityPoint, FlaggedPoint, GainInterval, FeatureReport

__all__ = [
    "SystemParams",
    "IntegrationConfig",
    "DerivedRates",
    "SaturationFactors",
    "SidebandCoefficients",
    "derive",
    "BASIS",
    "ZerothOrderState",
    "FirstOrderResponse",
    "CardanoRoots",
    "DensityMatrix",
    "LiouvillianBlocks",
    "HarmonicComponents",
    "ScanSpec",
    "ScanResult",
    "SusceptibilityPoint",
    "FlaggedPoint",
    "GainInterval",
    "FeatureReport",
]
