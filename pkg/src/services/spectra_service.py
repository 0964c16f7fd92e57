"""
Spectra Service for CrossTalk
Handles parameter sweeps over delta, Delta, G or the locked delta = Delta line
and locates transparency points, gain windows and dispersion zeros.
"""
import asyncio
import logging
from typing import Callable, List, Optional, Sequence, Union

import numpy as np
from pydantic import ValidationError
from scipy.optimize import bisect

from src.models.derived import derive
from src.models.params import IntegrationConfig, SystemParams
from src.models.scan import (
    FeatureReport,
    FlaggedPoint,
    GainInterval,
    ScanResult,
    ScanSpec,
    SusceptibilityPoint,
)
from src.services.analytic_service import AnalyticSolver
from src.services.bloch_service import BlochSolver
from src.services.timedomain_service import TimeDomainSolver
from src.utils.exceptions import CrossTalkError, DegenerateSplittingError

logger = logging.getLogger("crosstalk")

LAMBDA_ENGINE = "lambda"
RESONANCE_TOL = 1e-12
ZERO_TOL = 1e-8
BISECT_XTOL = 1e-13
DUPLICATE_TOL = 1e-9

Outcome = Union[SusceptibilityPoint, FlaggedPoint]


class SpectraService:
    """Scan engine and feature detector"""

    def __init__(
        self,
        analytic: Optional[AnalyticSolver] = None,
        bloch: Optional[BlochSolver] = None,
        timedomain: Optional[TimeDomainSolver] = None,
    ):
        self.analytic = analytic or AnalyticSolver()
        self.bloch = bloch or BlochSolver()
        self.timedomain = timedomain or TimeDomainSolver()

    def evaluate_point(
        self,
        params: SystemParams,
        engine: str,
        integration: Optional[IntegrationConfig] = None,
        value: Optional[float] = None,
    ) -> SusceptibilityPoint:
        """
        Susceptibilities at one parameter set

        Args:
            params: Physical parameters
            engine: analytic, bloch, timedomain or lambda
            integration: Time-domain settings
            value: Scan coordinate to record, defaults to delta

        Returns:
            SusceptibilityPoint

        Raises:
            CrossTalkError: Whatever the engine raises
        """
        if engine == "analytic":
            response = self.analytic.first_order(params)
            populations = self.analytic.zeroth_order(params).populations
        elif engine == "bloch":
            rho0, response = self.bloch.solve(params)
            populations = rho0.populations
        elif engine == "timedomain":
            cfg = integration or IntegrationConfig()
            trajectory = self.timedomain.integrate(params, cfg)
            response = self.timedomain.demodulate(trajectory, params, cfg)
            populations = tuple(float(v) for v in np.real(np.diagonal(trajectory.final)))
        elif engine == LAMBDA_ENGINE:
            return SusceptibilityPoint(
                value=params.delta if value is None else value,
                delta=params.delta, Delta=params.Delta, G=complex(params.G),
                chi_minus=self.analytic.lambda_system(params), chi_plus=None,
                term_coh_pp=None, term_coh_mm=None, term_pop=None,
                populations=(0.0, 0.0, 0.0, 1.0), engine=LAMBDA_ENGINE,
            )
        else:
            raise ValueError(f"Unknown engine: {engine}")

        return SusceptibilityPoint(
            value=params.delta if value is None else value,
            delta=params.delta, Delta=params.Delta, G=complex(params.G),
            chi_minus=response.rho_ep_gm, chi_plus=response.rho_em_gp,
            term_coh_pp=response.term_coh_pp, term_coh_mm=response.term_coh_mm,
            term_pop=response.term_pop, populations=populations, engine=engine,
        )

    def scan(self, spec: ScanSpec) -> ScanResult:
        """
        Evaluate every grid point of a scan with the requested engine

        Points with omega12 = 0 are dropped and engine failures become
        flagged records; neither aborts the scan.
        """
        return self._run(spec, spec.engine)

    def lambda_reference_scan(self, spec: ScanSpec) -> ScanResult:
        """Same grid evaluated with the isolated Lambda-system response"""
        return self._run(spec, LAMBDA_ENGINE)

    def detect_features(
        self,
        result: ScanResult,
        tol: float = 1e-9,
        transparency_tol: float = 1e-8,
    ) -> FeatureReport:
        """
        Locate spectral features of a scan

        Sign changes between grid points are refined by bisection on the
        engine itself. Time-domain scans are too costly to refine; their
        crossings are reported as bracket midpoints with refined=False.

        Args:
            result: Output of scan or lambda_reference_scan
            tol: Gain threshold on -Im chi-
            transparency_tol: Threshold on |Im chi-| for transparency

        Returns:
            FeatureReport
        """
        xs = result.coordinates()
        chi = result.chi_minus()
        refine = result.engine != "timedomain"
        evaluate = self._chi_function(result)

        transparency = self._zeros(xs, chi.imag, lambda v: evaluate(v).imag, transparency_tol, refine)
        dispersion = self._zeros(xs, chi.real, lambda v: evaluate(v).real, ZERO_TOL, refine)
        gains = self._gain_intervals(xs, chi.imag, lambda v: evaluate(v).imag + tol, tol, refine)

        base = result.spec.base
        try:
            delta_zero = self.analytic.delta_zero(base)
        except DegenerateSplittingError:
            delta_zero = None
        cardano = [base.Delta + r for r in self.analytic.cardano_roots(base).real_roots()]
        lambda_markers = [base.Delta + u for u in self.analytic.lambda_dispersion_roots(base).real_roots()]

        logger.info(
            "Features (%s): %d transparency point(s), %d gain interval(s), %d dispersion zero(s)",
            result.engine, len(transparency), len(gains), len(dispersion),
        )
        return FeatureReport(
            transparency_points=transparency,
            gain_intervals=gains,
            dispersion_zeros=dispersion,
            delta_zero=delta_zero,
            cardano_markers=cardano,
            lambda_zero_markers=lambda_markers,
            refined=refine,
        )

    def _run(self, spec: ScanSpec, engine: str) -> ScanResult:
        values = spec.values()
        logger.info("Scanning %s over [%g, %g] with %d points (engine=%s, workers=%d)",
                    spec.axis, spec.lo, spec.hi, spec.points, engine, spec.workers)
        if spec.workers > 1:
            outcomes = asyncio.run(self._evaluate_concurrently(spec, values, engine))
        else:
            outcomes = [self._evaluate(spec, value, engine) for value in values]

        points = [o for o in outcomes if isinstance(o, SusceptibilityPoint)]
        flagged = [o for o in outcomes if isinstance(o, FlaggedPoint)]
        if flagged:
            logger.warning("%d of %d point(s) flagged", len(flagged), len(outcomes))
        return ScanResult(spec=spec, engine=engine, points=points, flagged=flagged)

    async def _evaluate_concurrently(self, spec: ScanSpec, values: np.ndarray, engine: str) -> List[Outcome]:
        semaphore = asyncio.Semaphore(spec.workers)

        async def run(value: float) -> Outcome:
            async with semaphore:
                return await asyncio.to_thread(self._evaluate, spec, value, engine)

        # gather keeps the input order
        return list(await asyncio.gather(*(run(value) for value in values)))

    def _evaluate(self, spec: ScanSpec, value: float, engine: str) -> Outcome:
        value = float(value)
        try:
            params = spec.params_at(value)
            rates, _, _ = derive(params)
            if abs(rates.omega12) < RESONANCE_TOL:
                logger.warning("Dropping %s=%g: omega12 = 0", spec.axis, value)
                return FlaggedPoint(value=value, kind="dropped", reason="omega12 = 0")
            point = self.evaluate_point(params, engine, spec.integration, value=value)
        except (CrossTalkError, ValidationError) as e:
            logger.warning("Point %s=%g failed: %s", spec.axis, value, e)
            return FlaggedPoint(value=value, kind="error", reason=f"{type(e).__name__}: {e}")
        logger.debug("%s=%g chi-=%s", spec.axis, value, point.chi_minus)
        return point

    def _chi_function(self, result: ScanResult) -> Callable[[float], complex]:
        spec = result.spec

        def evaluate(value: float) -> complex:
            params = spec.params_at(value)
            return self.evaluate_point(params, result.engine, spec.integration, value=value).chi_minus

        return evaluate

    @staticmethod
    def _zeros(
        xs: np.ndarray,
        ys: np.ndarray,
        f: Callable[[float], float],
        threshold: float,
        refine: bool,
    ) -> List[float]:
        found = [float(x) for x, y in zip(xs, ys) if abs(y) < threshold]
        for i in range(len(xs) - 1):
            a, b = ys[i], ys[i + 1]
            if abs(a) < threshold or abs(b) < threshold or a * b >= 0:
                continue
            if not refine:
                found.append(0.5 * float(xs[i] + xs[i + 1]))
                continue
            try:
                root = bisect(f, float(xs[i]), float(xs[i + 1]), xtol=BISECT_XTOL, maxiter=200)
            except (ValueError, RuntimeError, CrossTalkError) as e:
                logger.debug("Bisection failed in [%g, %g]: %s", xs[i], xs[i + 1], e)
                continue
            if abs(f(root)) < threshold:
                found.append(float(root))
            else:
                logger.debug("Discarding crossing at %.12g: residual %.3e", root, abs(f(root)))
        return _deduplicate(found)

    @staticmethod
    def _gain_intervals(
        xs: np.ndarray,
        im: np.ndarray,
        shifted: Callable[[float], float],
        tol: float,
        refine: bool,
    ) -> List[GainInterval]:
        mask = im < -tol
        intervals = []
        i = 0
        n = len(xs)
        while i < n:
            if not mask[i]:
                i += 1
                continue
            j = i
            while j + 1 < n and mask[j + 1]:
                j += 1

            def edge(outside: int, inside: int) -> float:
                if not refine:
                    return float(xs[inside])
                a, b = sorted((float(xs[outside]), float(xs[inside])))
                try:
                    return float(bisect(shifted, a, b, xtol=BISECT_XTOL, maxiter=200))
                except (ValueError, RuntimeError, CrossTalkError):
                    return float(xs[inside])

            lo = edge(i - 1, i) if i > 0 else float(xs[i])
            hi = edge(j + 1, j) if j + 1 < n else float(xs[j])
            k = i + int(np.argmin(im[i:j + 1]))
            intervals.append(GainInterval(
                lo=min(lo, hi), hi=max(lo, hi),
                grid_lo=float(xs[i]), grid_hi=float(xs[j]),
                min_im_chi=float(im[k]), argmin=float(xs[k]),
            ))
            i = j + 1
        return intervals


def _deduplicate(values: Sequence[float]) -> List[float]:
    unique: List[float] = []
    for v in sorted(values):
        if not unique or v - unique[-1] > DUPLICATE_TOL:
            unique.append(v)
    return unique
