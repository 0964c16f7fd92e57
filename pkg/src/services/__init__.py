from .analytic_service import AnalyticSolver, solve_cubic
from .bloch_service import BlochSolver
from .timedomain_service import TimeDomainSolver, Trajectory
from .spectra_service import SpectraService
from .verification_service import VerificationService, VerificationReport

__all__ = [
    "AnalyticSolver",
    "solve_cubic",
    "BlochSolver",
    "TimeDomainSolver",
    "Trajectory",
    "SpectraService",
    "VerificationService",
    "VerificationReport",
]
