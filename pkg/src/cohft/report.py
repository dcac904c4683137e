"""Verification reports shared by the comparison checks, the strata suite and the CLI."""

from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction


@dataclass
class Report:
    check: str
    params: dict
    passed: bool = True
    failure: dict | None = None
    details: dict = field(default_factory=dict)
    seconds: float | None = None

    def fail(self, reason, **cell):
        """Record the first failure; later ones only go into details."""
        if self.passed:
            self.passed = False
            self.failure = {"reason": reason, **cell}
        else:
            self.details.setdefault("furtherFailures", []).append({"reason": reason, **cell})
        return self

    def require(self, ok, reason, **cell):
        if not ok:
            self.fail(reason, **cell)
        return ok

    def to_json(self):
        out = {"check": self.check, "params": _plain(self.params), "pass": self.passed}
        if self.failure is not None:
            out["firstFailureCell"] = _plain(self.failure)
        if self.details:
            out["details"] = _plain(self.details)
        if self.seconds is not None:
            out["seconds"] = round(self.seconds, 3)
        return out

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        where = "" if self.failure is None else f"  first failure: {self.failure}"
        return f"[{status}] {self.check} {self.params}{where}"


@contextmanager
def timed(report: Report):
    start = time.perf_counter()
    try:
        yield report
    finally:
        report.seconds = time.perf_counter() - start


def _plain(x):
    """JSON-friendly view: ints stay ints, exact rationals become "p/q", other values their str()."""
    if x is None or isinstance(x, (bool, int, float, str)):
        return x
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else x.numerator
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return str(x)
