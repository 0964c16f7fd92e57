"""
Utility functions for validating physical inputs and numerical results
"""
import math
from typing import Union

import numpy as np

from src.utils.exceptions import ParameterValidationError

Number = Union[int, float, complex]


def require_finite(name: str, value: Number) -> None:
    """
    Reject NaN and infinite values

    Args:
        name: Parameter name used in the error message
        value: Real or complex value to check

    Raises:
        ParameterValidationError: If any component is not finite
    """
    z = complex(value)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ParameterValidationError(f"{name} must be finite, got {value!r}")


def require_positive(name: str, value: float) -> None:
    """
    Require a strictly positive finite real value

    Args:
        name: Parameter name used in the error message
        value: Value to check

    Raises:
        ParameterValidationError: If value is not finite or not > 0
    """
    require_finite(name, value)
    if not value > 0:
        raise ParameterValidationError(f"{name} must be > 0, got {value!r}")


def require_nonzero_coupling(G: Number) -> None:
    """
    Require a usable control coupling

    At G = 0 the control-only steady state is not unique and the pumping
    rates degenerate to 0/0.

    Raises:
        ParameterValidationError: If G is zero or not finite
    """
    require_finite("G", G)
    if abs(complex(G)) == 0.0:
        raise ParameterValidationError("G must be nonzero; the steady state is not unique at G = 0")


def validate_system_params(params) -> None:
    """
    Check every SystemParams invariant

    Scans build parameter sets by copying, so engines call this again
    before trusting their inputs.

    Args:
        params: A SystemParams instance

    Raises:
        ParameterValidationError: On the first violated invariant
    """
    for name in ("B", "B_prime", "Delta", "delta"):
        require_finite(name, getattr(params, name))
    require_positive("gamma1", params.gamma1)
    require_positive("gamma2", params.gamma2)
    require_nonzero_coupling(params.G)


def density_matrix_defects(matrix: np.ndarray, tol: float) -> list:
    """
    List the ways a 4x4 matrix fails to be a density matrix

    Args:
        matrix: Candidate density matrix
        tol: Tolerance for hermiticity, trace and positivity

    Returns:
        Human readable defects, empty if the matrix is valid
    """
    defects = []
    hermiticity = float(np.max(np.abs(matrix - matrix.conj().T)))
    if hermiticity > tol:
        defects.append(f"not Hermitian (max deviation {hermiticity:.3e})")
    trace = complex(np.trace(matrix))
    if abs(trace - 1.0) > tol:
        defects.append(f"trace {trace:.12g} != 1")
    lowest = float(np.min(np.linalg.eigvalsh(0.5 * (matrix + matrix.conj().T))))
    if lowest < -tol:
        defects.append(f"negative eigenvalue {lowest:.3e}")
    return defects
