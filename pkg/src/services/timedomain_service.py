"""
Time-Domain Service for CrossTalk
Integrates the full time-dependent density-matrix equations with a finite
probe and extracts the sideband amplitudes by demodulation.
"""
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Union

import numpy as np

from src.models.derived import derive
from src.models.params import IntegrationConfig, SystemParams
from src.models.states import E_MINUS, E_PLUS, G_MINUS, G_PLUS, FirstOrderResponse, LiouvillianBlocks
from src.utils.exceptions import (
    NonConvergenceError,
    ParameterValidationError,
    ResonantDegeneracyError,
    StepSizeError,
)

logger = logging.getLogger("crosstalk")

TRACE_DRIFT_TOL = 1e-7
STEP_RATE_LIMIT = 0.25


@dataclass(frozen=True)
class Trajectory:
    """Density matrices sampled at a fixed number of points per beat period"""
    times: np.ndarray
    states: np.ndarray
    omega12: float
    step: float
    samples_per_period: int
    probe_amplitude: float

    def __len__(self) -> int:
        return len(self.times)

    @property
    def final(self) -> np.ndarray:
        return self.states[-1]

    def to_csv(self, path: Union[str, Path]) -> Path:
        """Write t followed by re/im pairs of the 16 row-major components"""
        path = Path(path)
        flat = self.states.reshape(len(self.times), 16)
        columns = [self.times]
        header = ["t"]
        for k in range(16):
            row, col = divmod(k, 4)
            columns += [flat[:, k].real, flat[:, k].imag]
            header += [f"re_rho_{row}{col}", f"im_rho_{row}{col}"]
        np.savetxt(path, np.column_stack(columns), delimiter=",", header=",".join(header),
                   comments="", fmt="%.9e")
        return path


class TimeDomainSolver:
    """
    Fixed-step fourth-order Runge-Kutta oracle

    The equations of motion are built here from the rotating-frame
    Hamiltonian and the four decay channels, separately from the
    element-by-element operators of BlochSolver.
    """

    @staticmethod
    def lindblad_blocks(params: SystemParams) -> LiouvillianBlocks:
        """
        Hamiltonian plus Lindblad decay as operator blocks

        Probe blocks are per unit probe amplitude, matching
        LiouvillianBlocks.generator.
        """
        B, Bp, Delta = params.B, params.B_prime, params.Delta
        G = complex(params.G)
        identity = np.eye(4)

        def commutator(H: np.ndarray) -> np.ndarray:
            return -1j * (np.kron(H, identity) - np.kron(identity, H.T))

        def transition(upper: int, lower: int) -> np.ndarray:
            op = np.zeros((4, 4), dtype=complex)
            op[upper, lower] = -1.0
            return op

        H0 = np.diag([2 * Bp - Delta, 2 * Bp - Delta - 2 * B, 2 * Bp, 0.0]).astype(complex)
        control = G * (transition(E_PLUS, G_PLUS) + transition(E_MINUS, G_MINUS))
        H0 += control + control.conj().T
        L0 = commutator(H0)

        channels = (
            (G_PLUS, E_PLUS, params.gamma2),
            (G_MINUS, E_MINUS, params.gamma2),
            (G_PLUS, E_MINUS, params.gamma1),
            (G_MINUS, E_PLUS, params.gamma1),
        )
        for lower, upper, rate in channels:
            J = np.zeros((4, 4))
            J[lower, upper] = math.sqrt(rate)
            JdJ = J.T @ J
            L0 += np.kron(J, J) - 0.5 * np.kron(JdJ, identity) - 0.5 * np.kron(identity, JdJ.T)

        minus = transition(E_PLUS, G_MINUS)
        plus = transition(E_MINUS, G_PLUS)
        return LiouvillianBlocks(
            L0=L0,
            V_minus=commutator(minus),
            W_minus=commutator(minus.conj().T),
            V_plus=commutator(plus),
            W_plus=commutator(plus.conj().T),
        )

    def integrate(self, params: SystemParams, cfg: IntegrationConfig) -> Trajectory:
        """
        Integrate from |g-><g-| with g- = g+ = probe_amplitude

        The step is shortened so that an integer number of steps spans one
        beat period. The RK4 step of a linear system is a matrix, and with
        that step the matrices repeat every period, so one period of them is
        built and multiplied out per sampling interval.

        Args:
            params: Physical parameters
            cfg: Integration settings

        Returns:
            Trajectory sampled samples_per_period times per period

        Raises:
            ResonantDegeneracyError: If omega12 = 0
            StepSizeError: If the step is too coarse or the trace drifts
        """
        rates, _, _ = derive(params)
        omega = rates.omega12
        if abs(omega) < 1e-12:
            raise ResonantDegeneracyError(omega)

        blocks = self.lindblad_blocks(params)
        period = 2.0 * math.pi / abs(omega)
        per_sample = max(1, math.ceil(period / (cfg.samples_per_period * cfg.dt)))
        steps_per_period = per_sample * cfg.samples_per_period
        h = period / steps_per_period

        fastest = float(np.max(np.abs(np.linalg.eigvals(blocks.L0)))) + abs(omega)
        if h * fastest > STEP_RATE_LIMIT:
            raise StepSizeError(
                f"Step {h:.3e} too large for rate {fastest:.3e} (limit h*rate <= {STEP_RATE_LIMIT})"
            )

        eps = cfg.probe_amplitude
        identity = np.eye(16, dtype=complex)

        def generator(t: float) -> np.ndarray:
            return blocks.generator(eps, eps, np.exp(-1j * omega * t))

        def rk4_map(t: float) -> np.ndarray:
            A1, A2, A3 = generator(t), generator(t + 0.5 * h), generator(t + h)
            K1 = A1
            K2 = A2 @ (identity + 0.5 * h * K1)
            K3 = A2 @ (identity + 0.5 * h * K2)
            K4 = A3 @ (identity + h * K3)
            return identity + (h / 6.0) * (K1 + 2.0 * K2 + 2.0 * K3 + K4)

        sample_maps = []
        for j in range(cfg.samples_per_period):
            composed = identity
            for n in range(j * per_sample, (j + 1) * per_sample):
                composed = rk4_map(n * h) @ composed
            sample_maps.append(composed)

        n_samples = int(math.ceil(cfg.t_end / (per_sample * h)))
        states = np.empty((n_samples + 1, 16), dtype=complex)
        vector = np.zeros(16, dtype=complex)
        vector[4 * G_MINUS + G_MINUS] = 1.0
        states[0] = vector
        for k in range(n_samples):
            vector = sample_maps[k % cfg.samples_per_period] @ vector
            states[k + 1] = vector

        times = np.arange(n_samples + 1) * (per_sample * h)
        matrices = states.reshape(-1, 4, 4)
        drift = float(np.max(np.abs(np.trace(matrices, axis1=1, axis2=2) - 1.0)))
        if drift > TRACE_DRIFT_TOL:
            raise StepSizeError(f"Trace drifted by {drift:.3e}; reduce dt")

        logger.debug("Integrated %d samples to t=%.1f with step %.3e (omega12=%.4f)",
                     n_samples, times[-1], h, omega)
        return Trajectory(
            times=times,
            states=matrices,
            omega12=omega,
            step=h,
            samples_per_period=cfg.samples_per_period,
            probe_amplitude=eps,
        )

    def demodulate(self, trajectory: Trajectory, params: SystemParams, cfg: IntegrationConfig) -> FirstOrderResponse:
        """
        Project the probe coherences onto e^{-i omega12 t}

        The window is the trailing demod_window fraction of the samples,
        snapped to whole periods. Both halves of the window are demodulated
        separately to check that transients have died out.

        Raises:
            ParameterValidationError: If the probe amplitude is zero
            NonConvergenceError: If the half-window estimates disagree
        """
        eps = trajectory.probe_amplitude
        if eps <= 0:
            raise ParameterValidationError("Demodulation needs a nonzero probe amplitude")

        per_period = trajectory.samples_per_period
        periods = int(cfg.demod_window * (len(trajectory) - 1)) // per_period
        if periods < 2:
            raise NonConvergenceError(
                f"Trajectory too short: demodulation window holds {periods} period(s)"
            )
        start = len(trajectory) - periods * per_period
        times = trajectory.times[start:]
        states = trajectory.states[start:]
        carrier = np.exp(1j * trajectory.omega12 * times)

        def project(row: int, col: int, sl: slice) -> complex:
            return complex(np.mean(states[sl, row, col] * carrier[sl])) / eps

        half = (periods // 2) * per_period
        tolerance = max(1e-3, 10.0 * eps)
        values = {}
        for name, (row, col) in (("minus", (E_PLUS, G_MINUS)), ("plus", (E_MINUS, G_PLUS))):
            full = project(row, col, slice(None))
            first = project(row, col, slice(0, half))
            second = project(row, col, slice(half, None))
            spread = abs(first - second)
            if spread > tolerance * max(abs(full), 1e-12):
                raise NonConvergenceError(
                    f"Sideband {name} not settled: half-window estimates differ by {spread:.3e}"
                )
            values[name] = full

        return FirstOrderResponse(rho_ep_gm=values["minus"], rho_em_gp=values["plus"])

    def response(self, params: SystemParams, cfg: IntegrationConfig) -> FirstOrderResponse:
        """Integrate and demodulate in one call"""
        return self.demodulate(self.integrate(params, cfg), params, cfg)
