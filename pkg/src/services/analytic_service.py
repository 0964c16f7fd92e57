"""
Analytic Service for CrossTalk
Closed-form steady state, first-order sideband coherences, the Lambda-system
limit, two-photon-resonance reductions and the dispersion-zero cubics.
"""
import cmath
import logging
import math
from typing import Tuple

from src.models.derived import derive
from src.models.params import SystemParams
from src.models.states import CardanoRoots, FirstOrderResponse, ZerothOrderState
from src.utils.exceptions import DegenerateSplittingError, SingularDenominatorError

logger = logging.getLogger("crosstalk")

SINGULAR_TOL = 1e-14
NEWTON_STEPS = 3


def solve_cubic(a2: float, a1: float, a0: float) -> CardanoRoots:
    """
    Solve r^3 + a2 r^2 + a1 r + a0 = 0 by Cardano's formula

    The cube root is taken on the principal branch of whichever of R +/- sqrt(D)
    has the larger magnitude, its partner follows from S*T = -Qc, and each
    root is then polished with a few Newton steps so the result does not
    depend on the branch.

    Args:
        a2: Quadratic coefficient
        a1: Linear coefficient
        a0: Constant coefficient

    Returns:
        CardanoRoots with intermediates, roots and substitution residuals
    """
    Qc = (3.0 * a1 - a2 * a2) / 9.0
    Rc = (9.0 * a2 * a1 - 27.0 * a0 - 2.0 * a2 ** 3) / 54.0
    sqrt_disc = cmath.sqrt(Qc ** 3 + Rc ** 2)

    upper, lower = Rc + sqrt_disc, Rc - sqrt_disc
    S = (upper if abs(upper) >= abs(lower) else lower) ** (1.0 / 3.0)
    T = -Qc / S if S != 0 else 0j

    A_plus = S + T
    A_minus = S - T
    shift = -a2 / 3.0
    rotation = 0.5j * math.sqrt(3.0) * A_minus
    candidates = (
        shift + A_plus,
        shift - 0.5 * A_plus + rotation,
        shift - 0.5 * A_plus - rotation,
    )

    def cubic(r: complex) -> complex:
        return ((r + a2) * r + a1) * r + a0

    roots = []
    for r in candidates:
        r = complex(r)
        for _ in range(NEWTON_STEPS):
            slope = (3.0 * r + 2.0 * a2) * r + a1
            if slope == 0:
                break
            r -= cubic(r) / slope
        if abs(r.imag) <= 1e-12 * max(1.0, abs(r)):
            r = complex(r.real, 0.0)
        roots.append(r)

    residuals = tuple(abs(cubic(r)) for r in roots)
    scale = max(1.0, abs(a2), abs(a1), abs(a0))
    if max(residuals) > 1e-9 * scale:
        logger.warning("Cubic residual %.3e exceeds tolerance for (a2, a1, a0) = (%g, %g, %g)",
                       max(residuals), a2, a1, a0)

    return CardanoRoots(
        a2=a2, a1=a1, a0=a0, Qc=Qc, Rc=Rc,
        A_plus=A_plus, A_minus=A_minus,
        roots=tuple(roots), residuals=residuals,
    )


class AnalyticSolver:
    """Closed-form susceptibilities of the cross-talking four-level system"""

    def zeroth_order(self, params: SystemParams) -> ZerothOrderState:
        """
        Steady state under the control field alone

        Args:
            params: Physical parameters

        Returns:
            ZerothOrderState with populations and the two control coherences
        """
        rates, sat, _ = derive(params)
        gamma12 = params.gamma1 + params.gamma2
        G_conj = complex(params.G).conjugate()
        pop_e = sat.x * sat.y / sat.Q
        return ZerothOrderState(
            pop_e_plus=pop_e,
            pop_e_minus=pop_e,
            pop_g_plus=sat.x * (gamma12 + sat.y) / sat.Q,
            pop_g_minus=sat.y * (gamma12 + sat.x) / sat.Q,
            coh_g_plus_e_plus=-1j * sat.x * G_conj * gamma12 / (sat.c * sat.Q),
            coh_g_minus_e_minus=-1j * sat.y * G_conj * gamma12 / (sat.d * sat.Q),
        )

    def first_order(self, params: SystemParams) -> FirstOrderResponse:
        """
        First-order sideband coherences and the decomposition of rho_ep_gm

        Raises:
            SingularDenominatorError: If |M1| or |M2| falls below 1e-14
        """
        _, _, sb = derive(params)
        for name, value in (("M1", sb.M1), ("M2", sb.M2)):
            if abs(value) < SINGULAR_TOL:
                raise SingularDenominatorError(name, abs(value))

        zeroth = self.zeroth_order(params)
        G = complex(params.G)
        G2 = abs(G) ** 2
        R1 = zeroth.coh_g_plus_e_plus
        R2 = zeroth.coh_g_minus_e_minus

        term_coh_pp = G * sb.a_plus * sb.p_plus * R1 / sb.M1
        term_coh_mm = G * sb.b_plus * sb.p_plus * R2 / sb.M1
        term_pop = (
            1j * (sb.a_plus * sb.b_plus * sb.p_plus + G2 * (sb.a_plus + sb.b_plus))
            * (zeroth.pop_g_minus - zeroth.pop_e_plus) / sb.M1
        )
        rho_em_gp = (
            G * sb.b_minus * sb.q_minus * R1
            + G * sb.a_minus * sb.q_minus * R2
            + 1j * (sb.a_minus * sb.b_minus * sb.q_minus + G2 * (sb.a_minus + sb.b_minus))
            * (zeroth.pop_g_plus - zeroth.pop_e_minus)
        ) / sb.M2

        return FirstOrderResponse(
            rho_ep_gm=term_coh_pp + term_coh_mm + term_pop,
            rho_em_gp=rho_em_gp,
            term_coh_pp=term_coh_pp,
            term_coh_mm=term_coh_mm,
            term_pop=term_pop,
        )

    def lambda_system(self, params: SystemParams) -> complex:
        """Probe response of the isolated Lambda system with all population in g-"""
        rates, _, _ = derive(params)
        two_photon = 1j * (params.delta - params.Delta) - rates.Gamma_gg
        denominator = two_photon * (1j * params.delta - rates.Gamma) + abs(complex(params.G)) ** 2
        if abs(denominator) < SINGULAR_TOL:
            raise SingularDenominatorError("lambda", abs(denominator))
        return -1j * two_photon / denominator

    def lambda_population_form(self, params: SystemParams, population_difference: float = 1.0) -> complex:
        """
        Lambda response written with the sideband coefficients

        Args:
            params: Physical parameters
            population_difference: rho_{g-g-} - rho_{e+e+} of the Lambda system

        Returns:
            i b+ / (b+ q+ + |G|^2) times the population difference
        """
        _, _, sb = derive(params)
        denominator = sb.b_plus * sb.q_plus + abs(complex(params.G)) ** 2
        if abs(denominator) < SINGULAR_TOL:
            raise SingularDenominatorError("b+q+ + |G|^2", abs(denominator))
        return 1j * sb.b_plus / denominator * population_difference

    def two_photon_reduction(self, params: SystemParams) -> complex:
        """
        rho_ep_gm at delta = Delta = B' - B in closed form

        The detunings of params are overridden.
        """
        resonant = params.at_two_photon_resonance()
        rates, _, _ = derive(resonant)
        split = resonant.B_prime - resonant.B
        G2 = abs(complex(resonant.G)) ** 2
        return complex(-split / (2.0 * (rates.Gamma ** 2 + split ** 2 + 2.0 * G2)))

    def two_photon_bracket(self, params: SystemParams) -> Tuple[complex, complex]:
        """
        Population and coherence parts of the two-photon-resonance value

        Returns:
            (population_part, coherence_part); their sum is two_photon_reduction
        """
        resonant = params.at_two_photon_resonance()
        _, sat, sb = derive(resonant)
        gamma12 = resonant.gamma1 + resonant.gamma2
        prefactor = 1j * sat.x * gamma12 / (2.0 * sb.q_plus * sat.Q)
        return prefactor, -prefactor * sb.q_plus / sat.c

    def delta_zero(self, params: SystemParams) -> float:
        """
        Locked detuning where the dispersion of the sigma- probe vanishes

        Raises:
            DegenerateSplittingError: If B' = B
        """
        rates, _, _ = derive(params)
        split = params.B_prime - params.B
        if abs(split) < 1e-12:
            raise DegenerateSplittingError("delta_zero requires B' != B")
        return (2.0 * split ** 2 + rates.Gamma ** 2) / split

    def cardano_roots(self, params: SystemParams) -> CardanoRoots:
        """Roots of the dispersion cubic with a1 = Gamma_gg^2 + 2 Gamma Gamma_gg + |G|^2"""
        rates, _, _ = derive(params)
        Gamma_gg = rates.Gamma_gg
        a1 = Gamma_gg ** 2 + 2.0 * rates.Gamma * Gamma_gg + abs(complex(params.G)) ** 2
        return solve_cubic(params.Delta, a1, params.Delta * Gamma_gg ** 2)

    def lambda_dispersion_roots(self, params: SystemParams) -> CardanoRoots:
        """
        Offsets u = delta - Delta where Re(lambda_system) vanishes

        Re(lambda_system) = 0 reduces to
        u^3 + Delta u^2 + (Gamma_gg^2 - |G|^2) u + Delta Gamma_gg^2 = 0.
        """
        rates, _, _ = derive(params)
        Gamma_gg = rates.Gamma_gg
        a1 = Gamma_gg ** 2 - abs(complex(params.G)) ** 2
        return solve_cubic(params.Delta, a1, params.Delta * Gamma_gg ** 2)
