"""Pass/fail records for identity checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .exact import Poly, SeriesY, scalar_to_json


def _jsonable(x: Any) -> Any:
    if x is None or isinstance(x, (bool, str)):
        return x
    if isinstance(x, SeriesY):
        return [_jsonable(c) for c in x.coeffs]
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    try:
        return scalar_to_json(x)
    except TypeError:
        return str(x)


@dataclass
class Check:
    identity: str
    indices: dict
    holds: bool
    lhs: Any = None
    rhs: Any = None
    note: str = ""

    def to_json(self) -> dict:
        out = {
            "identity": self.identity,
            "indices": {k: _jsonable(v) for k, v in self.indices.items()},
            "holds": self.holds,
            "lhs": _jsonable(self.lhs),
            "rhs": _jsonable(self.rhs),
        }
        if self.note:
            out["note"] = self.note
        return out

    def line(self) -> str:
        idx = ", ".join(f"{k}={v}" for k, v in self.indices.items())
        return f"{'PASS' if self.holds else 'FAIL'}  {self.identity}  ({idx})"


@dataclass
class Report:
    name: str
    checks: list[Check] = field(default_factory=list)

    def add(self, identity: str, lhs: Any, rhs: Any, note: str = "", **indices: Any) -> Check:
        c = Check(identity, indices, lhs == rhs, lhs, rhs, note)
        self.checks.append(c)
        return c

    def record(self, identity: str, holds: bool, note: str = "", **indices: Any) -> Check:
        c = Check(identity, indices, bool(holds), note=note)
        self.checks.append(c)
        return c

    def extend(self, other: "Report") -> "Report":
        self.checks.extend(other.checks)
        return self

    @property
    def ok(self) -> bool:
        return all(c.holds for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.holds]

    def to_json(self) -> dict:
        return {"suite": self.name, "ok": self.ok, "checks": [c.to_json() for c in self.checks]}

    def summary(self) -> str:
        n = len(self.checks)
        bad = len(self.failures)
        return f"{self.name}: {n - bad}/{n} checks hold"


def poly_or_scalar(x: Any) -> Any:
    """Normalize constant polynomials so comparisons print nicely."""
    if isinstance(x, Poly) and len(x.coeffs) <= 1:
        return x[0]
    return x
