"""
Derived rates, saturation factors and sideband coefficients
"""
from dataclasses import dataclass
from typing import NamedTuple

from src.models.params import SystemParams
from src.utils.validators import validate_system_params


@dataclass(frozen=True)
class DerivedRates:
    """Dephasing rates and the probe-control beat frequency"""
    Gamma: float
    Gamma_ee: float
    Gamma_gg: float
    omega12: float


@dataclass(frozen=True)
class SaturationFactors:
    """Zeroth-order denominators, pumping rates and their normalization"""
    c: complex
    d: complex
    x: float
    y: float
    Q: float


@dataclass(frozen=True)
class SidebandCoefficients:
    """Coefficients of the first-order sideband equations"""
    a_plus: complex
    a_minus: complex
    b_plus: complex
    b_minus: complex
    p_plus: complex
    p_minus: complex
    q_plus: complex
    q_minus: complex
    M1: complex
    M2: complex


class Derivation(NamedTuple):
    rates: DerivedRates
    saturation: SaturationFactors
    sideband: SidebandCoefficients


def derive(params: SystemParams) -> Derivation:
    """
    Evaluate every derived quantity of a parameter set

    Args:
        params: Physical parameters

    Returns:
        (DerivedRates, SaturationFactors, SidebandCoefficients)

    Raises:
        ParameterValidationError: If G = 0 or a decay rate is not positive
    """
    validate_system_params(params)

    G = complex(params.G)
    G2 = abs(G) ** 2
    gamma12 = params.gamma1 + params.gamma2
    Gamma = gamma12 / 2.0
    Gamma_ee = gamma12
    Gamma_gg = 0.0
    omega12 = params.delta - params.Delta + 2.0 * params.B_prime

    c = complex(Gamma, params.Delta)
    d = complex(Gamma, params.Delta + 2.0 * params.B - 2.0 * params.B_prime)
    x = 2.0 * G2 * Gamma / abs(d) ** 2
    y = 2.0 * G2 * Gamma / abs(c) ** 2
    Q = (x + y) * gamma12 + 4.0 * x * y

    a_plus = complex(Gamma_ee, -omega12 + 2.0 * params.B)
    a_minus = complex(Gamma_ee, -omega12 - 2.0 * params.B)
    b_plus = complex(Gamma_gg, -omega12 + 2.0 * params.B_prime)
    b_minus = complex(Gamma_gg, -omega12 - 2.0 * params.B_prime)
    p_plus = complex(Gamma, -omega12 + params.Delta + 2.0 * params.B)
    p_minus = complex(Gamma, -omega12 - params.Delta - 2.0 * params.B)
    q_plus = complex(Gamma, -omega12 - params.Delta + 2.0 * params.B_prime)
    q_minus = complex(Gamma, -omega12 + params.Delta - 2.0 * params.B_prime)

    M1 = a_plus * b_plus * p_plus * q_plus + G2 * (p_plus + q_plus) * (a_plus + b_plus)
    M2 = a_minus * b_minus * p_minus * q_minus + G2 * (p_minus + q_minus) * (a_minus + b_minus)

    return Derivation(
        DerivedRates(Gamma=Gamma, Gamma_ee=Gamma_ee, Gamma_gg=Gamma_gg, omega12=omega12),
        SaturationFactors(c=c, d=d, x=x, y=y, Q=Q),
        SidebandCoefficients(
            a_plus=a_plus, a_minus=a_minus,
            b_plus=b_plus, b_minus=b_minus,
            p_plus=p_plus, p_minus=p_minus,
            q_plus=q_plus, q_minus=q_minus,
            M1=M1, M2=M2,
        ),
    )
