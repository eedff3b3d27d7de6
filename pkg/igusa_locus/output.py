"""
Output Generation Module.

This module renders reports as JSON, CSV, plain text and Excel. Exact values
are always written as strings ("125/18", "2*sqrt(2)"), never as floats.
"""

import json
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Union

import pandas as pd

from .config import OutputFormat
from .hm_families import HMCurve, HMPoint, curve
from .locus import LocusReport
from .polarization import RIEMANN_DENOMINATOR, PolarizationData, Witness

CSV_COLUMNS = [
    "D",
    "h_tilde",
    "pi0",
    "twisting",
    "twist_divisors",
    "rho_min",
    "rho_max",
    "rho_exact",
    "irreducible",
]


def _exact(x) -> Optional[str]:
    return None if x is None else str(x)


# =============================================================================
# DICTIONARIES
# =============================================================================

def report_to_dict(report: LocusReport) -> dict:
    return {
        "D": report.D,
        "primes": list(report.primes),
        "h_tilde": report.h_tilde,
        "pi0": report.pi0,
        "twisting": report.twisting,
        "twist_divisors": list(report.twist_divisors),
        "rho_exact": report.rho_exact,
        "rho_feasible": sorted(report.rho_feasible),
        "rho_bounds": None if report.rho_bounds is None else [_exact(b) for b in report.rho_bounds],
        "irreducible": report.irreducible,
        "splits": [
            [
                {
                    "kind": cls.kind,
                    "w0_order": cls.w0_order,
                    "contribution": cls.contribution,
                    "generators": list(cls.generators),
                    "count": n,
                }
                for cls, n in split
            ]
            for split in report.splits
        ],
        "dropped_splits": report.dropped_splits,
        "class_numbers": {str(delta): h for delta, h in report.class_numbers.items()},
        "roots_of_unity": None if report.roots_of_unity is None else {
            "holds": report.roots_of_unity.holds,
            "reason": report.roots_of_unity.reason,
        },
        "mu": _exact(report.mu),
        "twist_witnesses": [{"chi": str(chi), "m": m} for chi, m in report.twist_witnesses],
    }


def _witness_dict(witness: Optional[Witness]) -> Optional[dict]:
    if witness is None:
        return None
    return {"omega": str(witness.omega), "m": str(witness.m)}


def polarization_to_dict(data: PolarizationData) -> dict:
    order = data.order
    return {
        "D": order.algebra.disc,
        "algebra": {"a": str(order.algebra.a), "b": str(order.algebra.b)},
        "order_basis": [str(e) for e in order.basis],
        "order_disc": order.disc,
        "mu": str(data.mu),
        "nrd_mu": str(data.mu.nrd()),
        "riemann_form": [list(row) for row in data.form.matrix],
        "riemann_denominator": RIEMANN_DENOMINATOR,
        "pfaffian": data.form.pfaffian,
        "degree": data.degree,
        "rosati_positive": data.rosati_positive,
        "twists": [{"chi": str(chi), "m": m} for chi, m in data.twists],
        "twist_witnesses": [_witness_dict(w) for w in data.twist_witnesses],
        "sign_witness": _witness_dict(data.sign_witness),
    }


def curve_to_dict(hm_curve: HMCurve) -> dict:
    return {
        "family": hm_curve.family,
        "t": str(hm_curve.params.t),
        "s": str(hm_curve.params.s),
        "f": [str(c) for c in hm_curve.f_coeffs],
        "degenerate": hm_curve.degenerate,
    }


def point_to_dict(family: int, point: HMPoint) -> dict:
    return {
        "t": str(point.t),
        "s": str(point.s),
        "degenerate": point.degenerate,
        "curve": curve_to_dict(curve(family, point.t, point.s)),
    }


def to_json(payload) -> str:
    return json.dumps(payload, indent=2) + "\n"


# =============================================================================
# TABLES
# =============================================================================

def reports_frame(reports: Iterable[LocusReport]) -> pd.DataFrame:
    rows = [
        {
            "D": r.D,
            "h_tilde": r.h_tilde,
            "pi0": r.pi0,
            "twisting": r.twisting,
            "twist_divisors": ";".join(str(m) for m in r.twist_divisors),
            "rho_min": r.rho_min,
            "rho_max": r.rho_max,
            "rho_exact": "" if r.rho_exact is None else r.rho_exact,
            "irreducible": r.irreducible,
        }
        for r in reports
    ]
    return pd.DataFrame(rows, columns=CSV_COLUMNS)


def summarize(reports: Sequence[LocusReport]) -> pd.DataFrame:
    """Summary statistics DataFrame."""
    reducible = [r.D for r in reports if not r.irreducible]
    summary_metrics = [
        "Admissible Discriminants",
        "Twisting",
        "Non-twisting",
        "Irreducible",
        "Reducible",
        "Reducible D",
        "Undetermined rho (several feasible counts)",
        "Largest rho",
    ]
    summary_values = [
        len(reports),
        sum(1 for r in reports if r.twisting),
        sum(1 for r in reports if not r.twisting),
        len(reports) - len(reducible),
        len(reducible),
        ", ".join(str(D) for D in reducible) if reducible else "None",
        sum(1 for r in reports if r.rho_exact is None),
        max(r.rho_max for r in reports) if reports else "N/A",
    ]
    return pd.DataFrame({
        "Metric": summary_metrics,
        "Value": [str(v) for v in summary_values],
    })


# =============================================================================
# RENDERING
# =============================================================================

def _text_block(payload: dict) -> str:
    lines = []
    for key, value in payload.items():
        if isinstance(value, list) and value and isinstance(value[0], (list, dict)):
            lines.append(f"{key}:")
            lines.extend(f"  {json.dumps(item)}" for item in value)
        else:
            lines.append(f"{key}: {json.dumps(value) if isinstance(value, (dict, list)) else value}")
    return "\n".join(lines) + "\n"


def render(payload: Union[dict, list], fmt: OutputFormat) -> str:
    """Render a single report-like payload (analyze, polarize, hm) as JSON or text."""
    if fmt == OutputFormat.TEXT:
        if isinstance(payload, list):
            return "\n".join(_text_block(item) for item in payload)
        return _text_block(payload)
    return to_json(payload)


def render_tabulation(reports: List[LocusReport], fmt: OutputFormat) -> str:
    if fmt == OutputFormat.JSON:
        return to_json([report_to_dict(r) for r in reports])
    frame = reports_frame(reports)
    if fmt == OutputFormat.CSV:
        return frame.to_csv(index=False)
    if fmt == OutputFormat.TEXT:
        table = frame.to_string(index=False) if len(frame) else "(no admissible D)"
        summary = summarize(reports).to_string(index=False)
        return f"{table}\n\n{summary}\n"
    raise ValueError(f"{fmt.value} output is written with write_tabulation")


def write_tabulation(reports: List[LocusReport], fmt: OutputFormat, output_path: Path) -> None:
    """Write a tabulation to a file; xlsx gets a Reports sheet and a Summary sheet."""
    output_path = Path(output_path)
    if fmt == OutputFormat.XLSX:
        with pd.ExcelWriter(output_path, engine="openpyxl") as writer:
            reports_frame(reports).to_excel(writer, sheet_name="Reports", index=False)
            summarize(reports).to_excel(writer, sheet_name="Summary", index=False)
        return
    with open(output_path, "w", encoding="utf-8", newline="") as fh:
        fh.write(render_tabulation(reports, fmt))