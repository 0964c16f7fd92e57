"""
Bloch Service for CrossTalk
Handles the density-matrix equations as linear operators on the 16-component
density vector: steady state by null-space extraction and the first-order
sideband response by shifted linear solves.
"""
import logging
from typing import Dict, Tuple

import numpy as np

from src.models.derived import derive
from src.models.params import SystemParams
from src.models.states import (
    E_MINUS,
    E_PLUS,
    G_MINUS,
    G_PLUS,
    DensityMatrix,
    FirstOrderResponse,
    HarmonicComponents,
    LiouvillianBlocks,
    flat_index,
)
from src.utils.exceptions import DegenerateSteadyStateError, ResonantDegeneracyError
from src.utils.validators import density_matrix_defects

logger = logging.getLogger("crosstalk")

EP, EM, GP, GM = E_PLUS, E_MINUS, G_PLUS, G_MINUS
NULL_GAP_TOL = 1e-8
RESONANCE_TOL = 1e-12

# Each probe term's hermitian conjugate multiplies the conjugate phase
_PARTNER = {"L0": "L0", "Vm": "Wm", "Wm": "Vm", "Vp": "Wp", "Wp": "Vp"}


class _OperatorBuilder:
    """Accumulates equation terms into the five operator blocks"""

    def __init__(self):
        self.blocks: Dict[str, np.ndarray] = {
            name: np.zeros((16, 16), dtype=complex) for name in _PARTNER
        }

    def add(self, block: str, target: Tuple[int, int], source: Tuple[int, int], coeff: complex) -> None:
        """
        Add coeff * rho[source] to d rho[target]/dt

        Off-diagonal targets also receive the conjugate equation for the
        transposed element. Population equations list their conjugate terms
        explicitly.
        """
        self.blocks[block][flat_index(*target), flat_index(*source)] += coeff
        if target[0] != target[1]:
            mirror = flat_index(target[1], target[0])
            self.blocks[_PARTNER[block]][mirror, flat_index(source[1], source[0])] += np.conj(coeff)

    def close_trace(self) -> None:
        """d rho_{g+g+}/dt is minus the sum of the other population derivatives"""
        rows = [flat_index(i, i) for i in (EP, EM, GM)]
        target = flat_index(GP, GP)
        for matrix in self.blocks.values():
            matrix[target, :] = -matrix[rows, :].sum(axis=0)


class BlochSolver:
    """Generic linear-algebra solution of the density-matrix equations"""

    def assemble(self, params: SystemParams) -> LiouvillianBlocks:
        """
        Encode the equation set as operator blocks

        Probe blocks are per unit probe amplitude: V multiplies g e^{-iwt},
        W multiplies g* e^{iwt}.

        Args:
            params: Physical parameters

        Returns:
            LiouvillianBlocks for the row-major (e+, e-, g+, g-) vectorization
        """
        rates, _, _ = derive(params)
        G = complex(params.G)
        Gc = G.conjugate()
        Gamma, Gamma_ee, Gamma_gg = rates.Gamma, rates.Gamma_ee, rates.Gamma_gg
        Delta, B, Bp = params.Delta, params.B, params.B_prime
        g1, g2 = params.gamma1, params.gamma2

        ops = _OperatorBuilder()
        add = ops.add

        # rho_{e+g-}
        add("L0", (EP, GM), (EP, GM), -(1j * (-Delta + 2 * Bp) + Gamma))
        add("L0", (EP, GM), (GP, GM), 1j * G)
        add("L0", (EP, GM), (EP, EM), -1j * G)
        add("Vm", (EP, GM), (GM, GM), 1j)
        add("Vm", (EP, GM), (EP, EP), -1j)

        # rho_{e-g+}
        add("L0", (EM, GP), (EM, GP), -(1j * (-Delta - 2 * B) + Gamma))
        add("L0", (EM, GP), (GM, GP), 1j * G)
        add("L0", (EM, GP), (EM, EP), -1j * G)
        add("Vp", (EM, GP), (GP, GP), 1j)
        add("Vp", (EM, GP), (EM, EM), -1j)

        # rho_{e+g+}
        add("L0", (EP, GP), (EP, GP), -(-1j * Delta + Gamma))
        add("L0", (EP, GP), (GP, GP), 1j * G)
        add("L0", (EP, GP), (EP, EP), -1j * G)
        add("Vm", (EP, GP), (GM, GP), 1j)
        add("Vp", (EP, GP), (EP, EM), -1j)

        # rho_{e-g-}
        add("L0", (EM, GM), (EM, GM), -(1j * (-Delta - 2 * B + 2 * Bp) + Gamma))
        add("L0", (EM, GM), (GM, GM), 1j * G)
        add("L0", (EM, GM), (EM, EM), -1j * G)
        add("Vp", (EM, GM), (GP, GM), 1j)
        add("Vm", (EM, GM), (EM, EP), -1j)

        # rho_{g+g-}
        add("L0", (GP, GM), (GP, GM), -(2j * Bp + Gamma_gg))
        add("L0", (GP, GM), (EP, GM), 1j * Gc)
        add("L0", (GP, GM), (GP, EM), -1j * G)
        add("Wp", (GP, GM), (EM, GM), 1j)
        add("Vm", (GP, GM), (GP, EP), -1j)

        # rho_{e+e-}
        add("L0", (EP, EM), (EP, EM), -(2j * B + Gamma_ee))
        add("L0", (EP, EM), (EP, GM), -1j * Gc)
        add("L0", (EP, EM), (GP, EM), 1j * G)
        add("Wp", (EP, EM), (EP, GP), -1j)
        add("Vm", (EP, EM), (GM, EM), 1j)

        # rho_{g-g-}
        add("L0", (GM, GM), (EM, EM), g2)
        add("L0", (GM, GM), (EP, EP), g1)
        add("L0", (GM, GM), (EM, GM), 1j * Gc)
        add("L0", (GM, GM), (GM, EM), -1j * G)
        add("Wm", (GM, GM), (EP, GM), 1j)
        add("Vm", (GM, GM), (GM, EP), -1j)

        # rho_{e-e-}
        add("L0", (EM, EM), (EM, EM), -(g1 + g2))
        add("L0", (EM, EM), (GM, EM), 1j * G)
        add("L0", (EM, EM), (EM, GM), -1j * Gc)
        add("Vp", (EM, EM), (GP, EM), 1j)
        add("Wp", (EM, EM), (EM, GP), -1j)

        # rho_{e+e+}
        add("L0", (EP, EP), (EP, EP), -(g1 + g2))
        add("L0", (EP, EP), (GP, EP), 1j * G)
        add("L0", (EP, EP), (EP, GP), -1j * Gc)
        add("Vm", (EP, EP), (GM, EP), 1j)
        add("Wm", (EP, EP), (EP, GM), -1j)

        ops.close_trace()
        blocks = ops.blocks
        return LiouvillianBlocks(
            L0=blocks["L0"],
            V_minus=blocks["Vm"],
            W_minus=blocks["Wm"],
            V_plus=blocks["Vp"],
            W_plus=blocks["Wp"],
        )

    def steady_state_zeroth(self, params: SystemParams) -> DensityMatrix:
        """
        Control-only steady state from the null space of L0

        Raises:
            DegenerateSteadyStateError: If the singular-value gap shows a
                null space of dimension > 1
        """
        return self._steady_state(self.assemble(params).L0)

    def sideband_response(self, params: SystemParams) -> FirstOrderResponse:
        """
        First-order coherences from the e^{-iwt} harmonic of each probe

        The three terms of rho_ep_gm come from driving with the rho_{g+e+}
        part, the rho_{g-e-} part and the remainder of the steady state
        separately.

        Raises:
            ResonantDegeneracyError: If omega12 = 0
        """
        _, response = self.solve(params)
        return response

    def solve(self, params: SystemParams) -> Tuple[DensityMatrix, FirstOrderResponse]:
        """Steady state and sideband response from one assembly"""
        omega12 = self._beat_frequency(params)
        blocks = self.assemble(params)
        rho0 = self._steady_state(blocks.L0)
        shifted = blocks.L0 + 1j * omega12 * np.eye(16)

        v0 = rho0.vector
        parts = {}
        for name, element in (("coh_pp", (GP, EP)), ("coh_mm", (GM, EM))):
            part = np.zeros(16, dtype=complex)
            part[flat_index(*element)] = v0[flat_index(*element)]
            parts[name] = part
        parts["pop"] = v0 - parts["coh_pp"] - parts["coh_mm"]

        target = flat_index(EP, GM)
        terms = {
            name: complex(np.linalg.solve(shifted, -blocks.V_minus @ part)[target])
            for name, part in parts.items()
        }
        plus = np.linalg.solve(shifted, -blocks.V_plus @ v0)

        response = FirstOrderResponse(
            rho_ep_gm=terms["coh_pp"] + terms["coh_mm"] + terms["pop"],
            rho_em_gp=complex(plus[flat_index(EM, GP)]),
            term_coh_pp=terms["coh_pp"],
            term_coh_mm=terms["coh_mm"],
            term_pop=terms["pop"],
        )
        return rho0, response

    def harmonics(self, params: SystemParams) -> HarmonicComponents:
        """
        All first-order sideband matrices

        rho = rho0 + g- e^{-iwt} X'(-1) + g-* e^{iwt} X''(-1)
                   + g+ e^{-iwt} X'(+1) + g+* e^{iwt} X''(+1) + O(g^2)
        """
        omega12 = self._beat_frequency(params)
        blocks = self.assemble(params)
        rho0 = self._steady_state(blocks.L0)
        v0 = rho0.vector
        identity = np.eye(16)
        lower = blocks.L0 + 1j * omega12 * identity
        upper = blocks.L0 - 1j * omega12 * identity

        def harmonic(shifted: np.ndarray, coupling: np.ndarray) -> np.ndarray:
            return np.linalg.solve(shifted, -coupling @ v0).reshape(4, 4)

        return HarmonicComponents(
            zeroth=rho0.matrix,
            minus_prime=harmonic(lower, blocks.V_minus),
            minus_double_prime=harmonic(upper, blocks.W_minus),
            plus_prime=harmonic(lower, blocks.V_plus),
            plus_double_prime=harmonic(upper, blocks.W_plus),
        )

    @staticmethod
    def _beat_frequency(params: SystemParams) -> float:
        rates, _, _ = derive(params)
        if abs(rates.omega12) < RESONANCE_TOL:
            raise ResonantDegeneracyError(rates.omega12)
        return rates.omega12

    @staticmethod
    def _steady_state(L0: np.ndarray) -> DensityMatrix:
        # Row scaling leaves the null space unchanged and evens out the spectrum
        scale = np.max(np.abs(L0), axis=1)
        scale[scale == 0] = 1.0
        _, singular, vh = np.linalg.svd(L0 / scale[:, None])
        gap = singular[-2] / singular[0]
        if gap < NULL_GAP_TOL:
            raise DegenerateSteadyStateError(
                f"Steady state is not unique (singular-value gap {gap:.3e})"
            )

        vector = vh[-1].conj()
        matrix = vector.reshape(4, 4)
        matrix = matrix / np.trace(matrix)
        matrix = 0.5 * (matrix + matrix.conj().T)
        for defect in density_matrix_defects(matrix, 1e-8):
            logger.warning("Steady state %s", defect)
        logger.debug("Null space gap %.3e, residual singular value %.3e", gap, singular[-1] / singular[0])
        return DensityMatrix(matrix)
