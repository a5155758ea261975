"""Report records produced by the checks."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


def _plain(value):
    """Convert numpy scalars/arrays and non-finite floats into JSON-safe Python values."""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_plain(v) for v in value.tolist()]
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating, float)):
        v = float(value)
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return v
    return value


@dataclass
class InequalityReport:
    """Outcome of one sampled check.

    ``worst_margin`` is signed (negative means the inequality failed on
    that sample); ``violations`` counts margins below ``-tolerance`` only.
    ``passed`` folds in any extra failure condition a check has (solver
    failures, non-finite constants).
    """

    check_name: str
    samples: int
    violations: int
    worst_margin: float
    estimated_constant: float | None = None
    passed: bool = True
    details: dict = field(default_factory=dict)

    @property
    def reverified_violation(self) -> bool:
        return bool(self.details.get("witness_reverified", False)) and self.violations > 0

    def to_dict(self) -> dict:
        return {
            "check_name": self.check_name,
            "samples": int(self.samples),
            "violations": int(self.violations),
            "worst_margin": _plain(self.worst_margin),
            "estimated_constant": _plain(self.estimated_constant),
            "passed": bool(self.passed),
            "details": _plain(self.details),
        }

    def summary_line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        const = "" if self.estimated_constant is None else f" constant={self.estimated_constant:.6g}"
        return (f"{status} {self.check_name}: samples={self.samples} violations={self.violations} "
                f"worst_margin={self.worst_margin:.3e}{const}")


def worst_index(margins: np.ndarray) -> int:
    """Index of the smallest finite margin (0 if none)."""
    m = np.where(np.isfinite(margins), margins, np.inf)
    return int(np.argmin(m)) if m.size else 0
