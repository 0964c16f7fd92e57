"""
CSV and JSON writers for scan output
Numbers are written with 9 significant digits in lowercase scientific
notation so that repeated runs produce identical files.
"""
import json
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from src.models.params import SystemParams
from src.models.scan import FeatureReport, FlaggedPoint, SusceptibilityPoint

COLUMNS = [
    "delta_over_gamma",
    "Delta_over_gamma",
    "G_over_gamma",
    "re_chi_minus",
    "im_chi_minus",
    "re_chi_plus",
    "im_chi_plus",
    "re_term_coh_pp",
    "im_term_coh_pp",
    "re_term_coh_mm",
    "im_term_coh_mm",
    "re_term_pop",
    "im_term_pop",
    "engine",
]
MHZ_COLUMN = "delta_mhz"


def format_number(value: Optional[float]) -> str:
    """9 significant digits, lowercase scientific; missing values become nan"""
    if value is None or math.isnan(value):
        return "nan"
    return format(float(value), ".8e")


def _parts(value: Optional[complex]) -> List[str]:
    if value is None:
        return ["nan", "nan"]
    z = complex(value)
    return [format_number(z.real), format_number(z.imag)]


def point_row(point: SusceptibilityPoint, scale_a_mhz: Optional[float] = None) -> Dict[str, str]:
    """
    One output row

    Args:
        point: Evaluated scan point
        scale_a_mhz: A / 2pi in MHz; adds delta in MHz using gamma = A / 12

    Returns:
        Column name to formatted value
    """
    values = [format_number(point.delta), format_number(point.Delta), format_number(abs(point.G))]
    for z in (point.chi_minus, point.chi_plus, point.term_coh_pp, point.term_coh_mm, point.term_pop):
        values += _parts(z)
    values.append(point.engine)
    row = dict(zip(COLUMNS, values))
    if scale_a_mhz is not None:
        row[MHZ_COLUMN] = format_number(point.delta * scale_a_mhz / 12.0)
    return row


def params_header(params: SystemParams) -> Dict[str, str]:
    """Resolved parameters as formatted strings"""
    G = complex(params.G)
    return {
        "B": format_number(params.B),
        "B_prime": format_number(params.B_prime),
        "Delta": format_number(params.Delta),
        "delta": format_number(params.delta),
        "G_re": format_number(G.real),
        "G_im": format_number(G.imag),
        "gamma1": format_number(params.gamma1),
        "gamma2": format_number(params.gamma2),
    }


def feature_lines(report: FeatureReport) -> Dict[str, str]:
    """Feature report flattened into header entries"""
    def join(values: Sequence[float]) -> str:
        return " ".join(format_number(v) for v in values) or "none"

    gains = " ".join(
        f"[{format_number(g.lo)},{format_number(g.hi)}]" for g in report.gain_intervals
    ) or "none"
    return {
        "transparency_points": join(report.transparency_points),
        "gain_intervals": gains,
        "dispersion_zeros": join(report.dispersion_zeros),
        "delta_zero": format_number(report.delta_zero),
        "lambda_zero_markers": join(report.lambda_zero_markers),
        "refined": str(report.refined).lower(),
    }


def flagged_lines(flagged: Sequence[FlaggedPoint]) -> List[str]:
    return [f"{format_number(f.value)} {f.kind} ({f.reason})" for f in flagged]


@dataclass
class OutputDocument:
    """Header metadata plus rows, rendered as CSV or JSON"""
    command: str
    params: SystemParams
    meta: Dict[str, str] = field(default_factory=dict)
    flagged: List[str] = field(default_factory=list)
    rows: List[Dict[str, str]] = field(default_factory=list)
    scale_a_mhz: Optional[float] = None

    @property
    def columns(self) -> List[str]:
        return COLUMNS + ([MHZ_COLUMN] if self.scale_a_mhz is not None else [])

    def add_points(self, points: Sequence[SusceptibilityPoint]) -> None:
        self.rows.extend(point_row(p, self.scale_a_mhz) for p in points)

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return self.to_json()
        return self.to_csv()

    def to_csv(self) -> str:
        lines = [f"# command: {self.command}"]
        lines += [f"# params.{k}: {v}" for k, v in params_header(self.params).items()]
        lines += [f"# {k}: {v}" for k, v in self.meta.items()]
        lines += [f"# flagged: {entry}" for entry in self.flagged]
        columns = self.columns
        lines.append(",".join(columns))
        lines += [",".join(row.get(c, "nan") for c in columns) for row in self.rows]
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        document = {
            "command": self.command,
            "params": params_header(self.params),
            "meta": self.meta,
            "flagged": self.flagged,
            "columns": self.columns,
            "rows": self.rows,
        }
        return json.dumps(document, indent=2) + "\n"
