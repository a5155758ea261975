"""Report and plot-data serialization.

Files are UTF-8 with LF line endings.  Floats are written in their shortest
round-trip form (``repr``), so identical runs give identical bytes.
"""

from __future__ import annotations

import csv
import io
import json
import re
from pathlib import Path

import mpmath
import numpy as np

from . import __version__
from .checks import MU_CONVENTION, RHO_CONVENTION
from .inequalities import FLOOR, SLACK
from .reports import InequalityReport, _plain

REPORT_FIELDS = ("check_name", "samples", "violations", "worst_margin", "estimated_constant",
                 "passed", "details")
PLOT_COLUMNS = ("base_point_id", "log10_dist", "log10_image_dist", "bound_value")


def _cell(value):
    value = _plain(value)
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (dict, list)):
        return json.dumps(value, ensure_ascii=False, separators=(",", ":"))
    return str(value)


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_cell(v) for v in row])
    return buf.getvalue()


def _write(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def safe_name(name: str) -> str:
    """File stem for a check name: ``fnt[r=0.1]`` -> ``fnt_r0.1``."""
    return re.sub(r"[^A-Za-z0-9_.-]+", "_", name.replace("=", "")).strip("_")


def report_text(report: InequalityReport, fmt: str) -> str:
    d = report.to_dict()
    if fmt == "json":
        return json.dumps(d, indent=2, ensure_ascii=False) + "\n"
    return _csv_text(REPORT_FIELDS, [[d[k] for k in REPORT_FIELDS]])


def conventions() -> dict:
    return {"mu": MU_CONVENTION, "rho": RHO_CONVENTION, "slack": SLACK, "floor": FLOOR,
            "theorem_constant": "C = M = 2^(2q) / q"}


def versions() -> dict:
    return {"holder_resolvent": __version__, "numpy": np.__version__, "mpmath": mpmath.__version__}


def summary_dict(reports, meta: dict, exit_code: int) -> dict:
    return {
        "exit_code": exit_code,
        "all_passed": all(r.passed for r in reports),
        "reverified_violation": any(r.reverified_violation for r in reports),
        **meta,
        "versions": versions(),
        "conventions": conventions(),
        "checks": [{"check_name": r.check_name, "passed": r.passed, "samples": r.samples,
                    "violations": r.violations, "worst_margin": r.worst_margin,
                    "estimated_constant": r.estimated_constant} for r in reports],
    }


def write_reports(reports, out_dir, fmt: str, meta: dict, exit_code: int) -> list[Path]:
    """One file per report plus ``summary.<fmt>``; returns the written paths."""
    out = Path(out_dir)
    paths = []
    for r in reports:
        p = out / f"{safe_name(r.check_name)}.{fmt}"
        _write(p, report_text(r, fmt))
        paths.append(p)
    summary = _plain(summary_dict(reports, meta, exit_code))
    p = out / f"summary.{fmt}"
    if fmt == "json":
        _write(p, json.dumps(summary, indent=2, ensure_ascii=False) + "\n")
    else:
        head = {k: v for k, v in summary.items() if k != "checks"}
        rows = [[c[k] for k in ("check_name", "passed", "samples", "violations", "worst_margin",
                                "estimated_constant")] for c in summary["checks"]]
        text = "".join(f"# {k}: {_cell(v)}\n" for k, v in head.items())
        text += _csv_text(("check_name", "passed", "samples", "violations", "worst_margin",
                           "estimated_constant"), rows)
        _write(p, text)
    paths.append(p)
    return paths


def emit_plot_data(fits: dict, out_dir) -> list[Path]:
    """Point clouds and bound line of each Hoelder fit as CSV.

    ``fits`` maps a check name to a :class:`~holder_resolvent.fitting.HolderFit`.
    An empty mapping writes a header-only ``plot_data.csv``.
    """
    out = Path(out_dir)
    if not fits:
        p = out / "plot_data.csv"
        _write(p, _csv_text(PLOT_COLUMNS, []))
        return [p]
    paths = []
    for name in sorted(fits):
        pts = fits[name].points
        rows = zip(*(np.asarray(pts[c]).tolist() for c in PLOT_COLUMNS))
        p = out / f"plot_{safe_name(name)}.csv"
        _write(p, _csv_text(PLOT_COLUMNS, rows))
        paths.append(p)
    return paths
