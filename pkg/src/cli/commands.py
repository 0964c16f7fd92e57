"""
Command handlers for CrossTalk
Figure reproduction, generic scans, single points and engine verification
"""
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from src.cli.output import OutputDocument, feature_lines, flagged_lines, format_number
from src.config import settings
from src.models.params import IntegrationConfig, SystemParams
from src.models.scan import ScanResult, ScanSpec
from src.services.spectra_service import SpectraService
from src.services.verification_service import VerificationService

logger = logging.getLogger("crosstalk")

Command = Literal["fig2", "fig3a", "fig3b", "fig4", "fig5", "scan", "point", "verify"]

# Default grids per figure; fig3b sweeps G at delta = Delta = B' - B
FIGURES: Dict[str, Dict[str, Any]] = {
    "fig2": {"axis": "delta", "lo": -10.0, "hi": 20.0, "points": 601},
    "fig3a": {"axis": "locked", "lo": -10.0, "hi": 15.0, "points": 501},
    "fig3b": {"axis": "G", "lo": 0.06, "hi": 3.0, "points": 50},
    "fig4": {"axis": "delta", "lo": -10.0, "hi": 20.0, "points": 601},
    "fig5": {"axis": "locked", "lo": -10.0, "hi": 15.0, "points": 501},
    "scan": {"axis": "delta", "lo": -10.0, "hi": 20.0, "points": 601},
    "verify": {"axis": "delta", "lo": -10.0, "hi": 20.0, "points": 21},
}

PARAM_FLAGS = {
    "B": "B",
    "B_prime": "B-prime",
    "Delta": "Delta",
    "delta": "delta",
    "G": "G",
    "gamma1": "gamma1",
    "gamma2": "gamma2",
}


class RunConfig(BaseModel):
    """Fully resolved settings of one CLI invocation"""

    model_config = ConfigDict(frozen=True)

    command: Command
    params: SystemParams = Field(default_factory=settings.default_params)
    axis: str = "delta"
    lo: float = -10.0
    hi: float = 20.0
    points: int = Field(default=601, ge=2)
    engine: Literal["analytic", "bloch", "timedomain"] = "analytic"
    output: Optional[Path] = None
    format: Literal["csv", "json"] = "csv"
    scale_a_mhz: Optional[float] = Field(default=None, gt=0)
    workers: int = Field(default=1, ge=1)
    integration: IntegrationConfig = Field(default_factory=settings.integration_config)

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        """
        Merge built-in defaults, environment, config file and flags

        Args:
            args: Parsed command line

        Returns:
            Validated RunConfig

        Raises:
            OSError: If the config file cannot be read
            pydantic.ValidationError: If any value is invalid
        """
        file_values: Dict[str, Any] = {}
        if getattr(args, "config", None):
            with open(args.config, "r", encoding="utf-8") as f:
                file_values = json.load(f)
            logger.info("Loaded config file %s", args.config)

        overrides = {k: file_values[k] for k in PARAM_FLAGS if k in file_values}
        overrides.update({k: getattr(args, k) for k in PARAM_FLAGS if getattr(args, k, None) is not None})
        params = settings.default_params(**overrides)
        if args.command == "fig3b":
            params = params.at_two_photon_resonance()

        grid = dict(FIGURES.get(args.command, FIGURES["scan"]))
        grid.update({k: file_values[k] for k in ("axis", "lo", "hi", "points") if k in file_values})
        grid.update({k: getattr(args, k) for k in ("axis", "lo", "hi", "points")
                     if getattr(args, k, None) is not None})

        integration = settings.integration_config().model_dump()
        integration.update(file_values.get("integration", {}))
        for key in ("probe_amplitude", "t_end", "dt"):
            if getattr(args, key, None) is not None:
                integration[key] = getattr(args, key)

        def pick(name: str, default: Any) -> Any:
            value = getattr(args, name, None)
            if value is not None:
                return value
            return file_values.get(name, default)

        return cls(
            command=args.command,
            params=params,
            engine=pick("engine", settings.DEFAULT_ENGINE),
            output=pick("output", None),
            format=pick("format", settings.OUTPUT_FORMAT),
            scale_a_mhz=pick("scale_a_mhz", None),
            workers=pick("workers", settings.SCAN_WORKERS),
            integration=IntegrationConfig(**integration),
            **grid,
        )

    def scan_spec(self, engine: Optional[str] = None) -> ScanSpec:
        return ScanSpec(
            axis=self.axis, lo=self.lo, hi=self.hi, points=self.points,
            base=self.params, engine=engine or self.engine,
            integration=self.integration, workers=self.workers,
        )


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one subcommand per figure or task"""
    common = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    physics = common.add_argument_group("physical parameters (units of gamma)")
    for dest, flag in PARAM_FLAGS.items():
        kind = str if dest == "G" else float
        physics.add_argument(f"--{flag}", dest=dest, type=kind, default=None)
    common.add_argument("--engine", choices=["analytic", "bloch", "timedomain"], default=None)
    common.add_argument("-o", "--output", default=None, help="Output file (default: stdout)")
    common.add_argument("--format", choices=["csv", "json"], default=None)
    common.add_argument("--scale-a-mhz", dest="scale_a_mhz", type=float, default=None,
                        help=f"A/2pi in MHz for an extra delta_mhz column (39K: {settings.EINSTEIN_A_MHZ})")
    common.add_argument("--config", default=None, help="JSON file with parameter overrides")
    common.add_argument("--workers", type=int, default=None)
    common.add_argument("--log-level", dest="log_level", default=None)
    timedomain = common.add_argument_group("time-domain oracle")
    timedomain.add_argument("--probe-amplitude", dest="probe_amplitude", type=float, default=None)
    timedomain.add_argument("--t-end", dest="t_end", type=float, default=None)
    timedomain.add_argument("--dt", type=float, default=None)

    grid = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    grid.add_argument("--lo", type=float, default=None)
    grid.add_argument("--hi", type=float, default=None)
    grid.add_argument("--points", type=int, default=None)

    parser = argparse.ArgumentParser(
        prog="crosstalk",
        description="Probe susceptibilities of a cross-talking J=1/2 <-> J=1/2 system",
        allow_abbrev=False,
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("fig2", parents=[common, grid], help="delta scan with the Lambda reference")
    sub.add_parser("fig3a", parents=[common, grid], help="locked delta = Delta scan, dispersion")
    sub.add_parser("fig3b", parents=[common, grid], help="G scan at delta = Delta = B' - B")
    sub.add_parser("fig4", parents=[common, grid], help="delta scan with the term decomposition")
    sub.add_parser("fig5", parents=[common, grid], help="locked delta = Delta scan, absorption")
    scan = sub.add_parser("scan", parents=[common, grid], help="generic scan")
    scan.add_argument("--axis", choices=["delta", "Delta", "G", "locked"], default=None)
    sub.add_parser("point", parents=[common], help="single parameter point")
    sub.add_parser("verify", parents=[common, grid], help="three-engine comparison")
    return parser


class CommandRunner:
    """Executes one RunConfig and writes its output"""

    def __init__(self, spectra: Optional[SpectraService] = None):
        self.spectra = spectra or SpectraService()
        self.verification = VerificationService(self.spectra)

    def run(self, config: RunConfig) -> int:
        """
        Execute a command

        Returns:
            Process exit status; 1 when verification exceeds tolerance
        """
        logger.info("Running %s (engine=%s)", config.command, config.engine)
        doc = OutputDocument(command=config.command, params=config.params, scale_a_mhz=config.scale_a_mhz)
        status = 0

        if config.command == "point":
            doc.meta["engine"] = config.engine
            doc.add_points([self.spectra.evaluate_point(config.params, config.engine, config.integration)])
        elif config.command == "verify":
            status = self._verify(config, doc)
        else:
            self._scan(config, doc)

        self._write(doc.render(config.format), config.output)
        return status

    def _scan(self, config: RunConfig, doc: OutputDocument) -> None:
        spec = config.scan_spec()
        result = self.spectra.scan(spec)
        self._describe(doc, spec, result)
        doc.add_points(result.points)

        if config.command == "fig2":
            reference = self.spectra.lambda_reference_scan(spec)
            doc.meta["reference_engine"] = reference.engine
            doc.flagged += [f"lambda {line}" for line in flagged_lines(reference.flagged)]
            doc.add_points(reference.points)

    def _describe(self, doc: OutputDocument, spec: ScanSpec, result: ScanResult) -> None:
        doc.meta.update({
            "engine": result.engine,
            "axis": spec.axis,
            "lo": format_number(spec.lo),
            "hi": format_number(spec.hi),
            "points": str(spec.points),
        })
        if result.engine == "timedomain":
            doc.meta.update({k: format_number(v) for k, v in spec.integration.model_dump().items()})
        doc.flagged += flagged_lines(result.flagged)
        if spec.axis in ("delta", "locked") and len(result.points) >= 2:
            report = self.spectra.detect_features(result, tol=settings.GAIN_TOL,
                                                  transparency_tol=settings.TRANSPARENCY_TOL)
            doc.meta.update({f"features.{k}": v for k, v in feature_lines(report).items()})

    def _verify(self, config: RunConfig, doc: OutputDocument) -> int:
        report = self.verification.run(
            config.params, lo=config.lo, hi=config.hi, points=config.points,
            integration=config.integration, workers=config.workers,
        )
        for d in report.deviations:
            key = f"max_deviation.{d.engines[0]}_vs_{d.engines[1]}"
            doc.meta[key] = f"{format_number(d.max_relative)} (tolerance {format_number(d.tolerance)})"
        for result in report.results.values():
            doc.flagged += [f"{result.engine} {line}" for line in flagged_lines(result.flagged)]
            doc.add_points(result.points)
        doc.meta["verification"] = "passed" if report.passed else "failed"
        return 0 if report.passed else 1

    @staticmethod
    def _write(text: str, output: Optional[Path]) -> None:
        if output is None:
            sys.stdout.write(text)
            return
        output.parent.mkdir(parents=True, exist_ok=True)
        output.write_text(text, encoding="utf-8")
        logger.info("Wrote %s", output)
