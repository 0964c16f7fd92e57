"""
Exception hierarchy for CrossTalk
Each category carries the process exit code the CLI reports for it.
"""
from typing import Optional


class CrossTalkError(Exception):
    """Base class for every error raised by the simulator"""
    exit_code = 1


class ParameterValidationError(CrossTalkError, ValueError):
    """Physical inputs violate a model invariant"""
    exit_code = 2


class DegenerateSplittingError(ParameterValidationError):
    """Ground and excited splittings coincide where a formula divides by B' - B"""


class EngineError(CrossTalkError):
    """A numerical engine could not produce a trustworthy result"""
    exit_code = 3


class SingularDenominatorError(EngineError):
    """A closed-form denominator vanished"""

    def __init__(self, name: str, magnitude: float):
        self.name = name
        self.magnitude = magnitude
        super().__init__(f"Denominator {name} is singular (|{name}| = {magnitude:.3e})")


class DegenerateSteadyStateError(EngineError):
    """The control-only evolution has more than one steady state"""


class ResonantDegeneracyError(EngineError):
    """Probe and control beat at zero frequency, so sidebands merge with DC"""

    def __init__(self, omega12: float, message: Optional[str] = None):
        self.omega12 = omega12
        super().__init__(message or f"omega12 = {omega12:.3e} is zero; sideband expansion does not apply")


class NonConvergenceError(EngineError):
    """Demodulated amplitudes have not settled within the averaging window"""


class StepSizeError(EngineError):
    """Integration step is too coarse for the dynamics"""
