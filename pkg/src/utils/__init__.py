from .exceptions import (
    CrossTalkError,
    ParameterValidationError,
    DegenerateSplittingError,
    EngineError,
    SingularDenominatorError,
    DegenerateSteadyStateError,
    ResonantDegeneracyError,
    NonConvergenceError,
    StepSizeError,
)
from .validators import validate_system_params, density_matrix_defects

__all__ = [
    "CrossTalkError",
    "ParameterValidationError",
    "DegenerateSplittingError",
    "EngineError",
    "SingularDenominatorError",
    "DegenerateSteadyStateError",
    "ResonantDegeneracyError",
    "NonConvergenceError",
    "StepSizeError",
    "validate_system_params",
    "density_matrix_defects",
]
