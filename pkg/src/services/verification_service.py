"""
Verification Service for CrossTalk
Three-engine comparison of the sigma- and sigma+ sideband coherences

Pipeline: grid scan per engine -> pairwise relative deviations -> pass/fail per pair
"""
import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from src.models.params import IntegrationConfig, SystemParams
from src.models.scan import ScanResult, ScanSpec
from src.services.spectra_service import SpectraService

logger = logging.getLogger("crosstalk")


@dataclass(frozen=True)
class PairDeviation:
    """Largest relative disagreement between two engines"""
    engines: Tuple[str, str]
    max_relative: float
    worst_delta: float
    tolerance: float
    missing: int = 0

    @property
    def passed(self) -> bool:
        return self.missing == 0 and self.max_relative <= self.tolerance


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of a three-engine comparison"""
    results: Dict[str, ScanResult]
    deviations: List[PairDeviation]

    @property
    def passed(self) -> bool:
        return all(d.passed for d in self.deviations)


class VerificationService:
    """Cross-checks the analytic, Floquet and time-domain engines"""

    ENGINES = ("analytic", "bloch", "timedomain")

    # Relative tolerance per engine pair
    TOLERANCES = {
        ("analytic", "bloch"): 1e-9,
        ("analytic", "timedomain"): 1e-3,
        ("bloch", "timedomain"): 1e-3,
    }

    def __init__(self, spectra: Optional[SpectraService] = None):
        self.spectra = spectra or SpectraService()

    def run(
        self,
        base: SystemParams,
        lo: float = -10.0,
        hi: float = 20.0,
        points: int = 21,
        integration: Optional[IntegrationConfig] = None,
        workers: int = 1,
    ) -> VerificationReport:
        """
        Scan delta with every engine and compare pointwise

        Args:
            base: Fixed parameters
            lo: First delta
            hi: Last delta
            points: Grid size
            integration: Time-domain settings
            workers: Points evaluated concurrently per scan

        Returns:
            VerificationReport with the max deviation of each engine pair
        """
        logger.info("Running three-engine verification on %d points", points)
        results = {}
        for engine in self.ENGINES:
            spec = ScanSpec(
                axis="delta", lo=lo, hi=hi, points=points, base=base, engine=engine,
                integration=integration or IntegrationConfig(), workers=workers,
            )
            results[engine] = self.spectra.scan(spec)

        deviations = [self._compare(results[a], results[b], a, b) for a, b in self.TOLERANCES]
        for d in deviations:
            logger.info("%s vs %s: max relative deviation %.3e at delta=%g (%s)",
                        d.engines[0], d.engines[1], d.max_relative, d.worst_delta,
                        "ok" if d.passed else "FAILED")
        return VerificationReport(results=results, deviations=deviations)

    def _compare(self, first: ScanResult, second: ScanResult, a: str, b: str) -> PairDeviation:
        """
        Relative deviation of both coherences over the grid

        A grid point that either engine failed on, or that only one scan
        holds, makes the pair fail with an infinite deviation. So does an
        empty scan.
        """
        lookup = {p.value: p for p in second.points}
        failed = [f.value for f in first.flagged + second.flagged if f.kind == "error"]
        unmatched = [p.value for p in first.points if p.value not in lookup]
        unmatched += [v for v in lookup if v not in {p.value for p in first.points}]

        worst, worst_delta = 0.0, float("nan")
        if failed or unmatched or not first.points:
            missing = sorted(failed + unmatched)
            logger.warning("%s vs %s: %d grid point(s) without a value from both engines",
                           a, b, len(missing))
            worst = math.inf
            worst_delta = missing[0] if missing else float("nan")
        else:
            for p in first.points:
                q = lookup[p.value]
                for x, y in ((p.chi_minus, q.chi_minus), (p.chi_plus, q.chi_plus)):
                    deviation = abs(x - y) / max(abs(x), abs(y), 1e-300)
                    if deviation > worst:
                        worst, worst_delta = deviation, p.value
        return PairDeviation(
            engines=(a, b),
            max_relative=float(worst),
            worst_delta=worst_delta,
            tolerance=self.TOLERANCES[(a, b)],
            missing=len(failed) + len(unmatched),
        )
