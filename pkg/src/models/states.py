"""
Numeric records produced by the analytic, Floquet and time-domain engines
"""
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

# Ordered basis; density vectors are row-major over BASIS x BASIS
BASIS: Tuple[str, ...] = ("e+", "e-", "g+", "g-")
E_PLUS, E_MINUS, G_PLUS, G_MINUS = range(4)


def flat_index(row: int, col: int) -> int:
    """Position of rho[row, col] in the 16-component density vector"""
    return 4 * row + col


@dataclass(frozen=True)
class ZerothOrderState:
    """Closed-form steady state under the control field alone"""
    pop_e_plus: float
    pop_e_minus: float
    pop_g_plus: float
    pop_g_minus: float
    coh_g_plus_e_plus: complex
    coh_g_minus_e_minus: complex

    @property
    def populations(self) -> Tuple[float, float, float, float]:
        return (self.pop_e_plus, self.pop_e_minus, self.pop_g_plus, self.pop_g_minus)


@dataclass(frozen=True)
class FirstOrderResponse:
    """
    Sideband coherences per unit probe amplitude

    rho_ep_gm drives the sigma- susceptibility, rho_em_gp the sigma+ one.
    The terms split rho_ep_gm into the rho_{g+e+} coherence contribution,
    the rho_{g-e-} coherence contribution and the population-difference
    contribution. The time-domain engine cannot separate them and leaves
    them as None.
    """
    rho_ep_gm: complex
    rho_em_gp: complex
    term_coh_pp: Optional[complex] = None
    term_coh_mm: Optional[complex] = None
    term_pop: Optional[complex] = None

    @property
    def has_terms(self) -> bool:
        return self.term_coh_pp is not None

    @property
    def term_sum(self) -> Optional[complex]:
        if not self.has_terms:
            return None
        return self.term_coh_pp + self.term_coh_mm + self.term_pop


@dataclass(frozen=True)
class CardanoRoots:
    """Roots of r^3 + a2 r^2 + a1 r + a0 = 0 with the Cardano intermediates"""
    a2: float
    a1: float
    a0: float
    Qc: float
    Rc: float
    A_plus: complex
    A_minus: complex
    roots: Tuple[complex, complex, complex]
    residuals: Tuple[float, float, float]

    def real_roots(self, tol: float = 1e-9) -> Tuple[float, ...]:
        """Roots whose imaginary part vanishes, sorted ascending"""
        return tuple(sorted(r.real for r in self.roots if abs(r.imag) <= tol))


@dataclass(frozen=True)
class DensityMatrix:
    """4x4 density matrix over (e+, e-, g+, g-)"""
    matrix: np.ndarray

    @property
    def vector(self) -> np.ndarray:
        return self.matrix.reshape(16)

    @property
    def populations(self) -> Tuple[float, float, float, float]:
        return tuple(float(v) for v in np.real(np.diag(self.matrix)))

    @property
    def trace(self) -> complex:
        return complex(np.trace(self.matrix))

    def element(self, row: int, col: int) -> complex:
        return complex(self.matrix[row, col])

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(0.5 * (self.matrix + self.matrix.conj().T))


@dataclass(frozen=True)
class LiouvillianBlocks:
    """
    Linear operators on the density vector

    d vec(rho)/dt = [L0 + g- e^{-iwt} V_minus + g-* e^{iwt} W_minus
                     + g+ e^{-iwt} V_plus + g+* e^{iwt} W_plus] vec(rho)
    """
    L0: np.ndarray
    V_minus: np.ndarray
    W_minus: np.ndarray
    V_plus: np.ndarray
    W_plus: np.ndarray

    def generator(self, g_minus: complex, g_plus: complex, phase: complex) -> np.ndarray:
        """Full operator at e^{-iwt} = phase (|phase| = 1)"""
        conj_phase = np.conj(phase)
        return (
            self.L0
            + g_minus * phase * self.V_minus
            + np.conj(g_minus) * conj_phase * self.W_minus
            + g_plus * phase * self.V_plus
            + np.conj(g_plus) * conj_phase * self.W_plus
        )


@dataclass(frozen=True)
class HarmonicComponents:
    """Zeroth order state and the four first-order sideband matrices"""
    zeroth: np.ndarray
    minus_prime: np.ndarray
    minus_double_prime: np.ndarray
    plus_prime: np.ndarray
    plus_double_prime: np.ndarray
