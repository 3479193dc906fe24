"""Structured pass/fail records for verification suites."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

__all__ = ["VerificationReport", "make_report", "reports_to_jsonl",
           "all_passed"]


@dataclass(frozen=True)
class VerificationReport:
    suite: str
    name: str
    params: dict
    residual: float
    tol: float
    passed: bool
    seed: int = None
    wall_ms: float = 0.0

    def to_json(self) -> str:
        d = {
            "suite": self.suite,
            "name": self.name,
            "params": self.params,
            "residual": self.residual,
            "tol": self.tol,
            "passed": self.passed,
            "seed": self.seed,
            "wall_ms": self.wall_ms,
        }
        return json.dumps(d, sort_keys=True, default=_jsonable)


def _jsonable(v):
    if isinstance(v, complex):
        return {"re": v.real, "im": v.imag}
    if hasattr(v, "item"):
        return v.item()
    return str(v)


def make_report(suite, name, residual, tol, params=None, seed=None,
                wall_ms=0.0) -> VerificationReport:
    """Build a report; `passed` is always residual <= tol."""
    residual = float(residual)
    return VerificationReport(suite=suite, name=name, params=params or {},
                              residual=residual, tol=float(tol),
                              passed=bool(residual <= tol), seed=seed,
                              wall_ms=float(wall_ms))


def reports_to_jsonl(reports) -> str:
    """Canonically ordered JSON lines (sorted, so output is deterministic)."""
    lines = [r.to_json() for r in reports]
    return "\n".join(sorted(lines)) + ("\n" if lines else "")


def all_passed(reports) -> bool:
    return all(r.passed for r in reports)
