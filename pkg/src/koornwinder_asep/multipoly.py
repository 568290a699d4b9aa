"""Sparse multivariate polynomials with exact coefficients.

Only what the coefficient identities and the positivity check need: ring
operations, substitution of scalars, and coefficient inspection.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Iterable


class MPoly:
    __slots__ = ("nvars", "terms")

    def __init__(self, terms: dict | None = None, nvars: int = 4) -> None:
        self.nvars = nvars
        self.terms = {e: c for e, c in (terms or {}).items() if c != 0}

    @classmethod
    def var(cls, k: int, nvars: int = 4) -> "MPoly":
        e = [0] * nvars
        e[k] = 1
        return cls({tuple(e): Fraction(1)}, nvars)

    @classmethod
    def const(cls, c: Any, nvars: int = 4) -> "MPoly":
        return cls({(0,) * nvars: c}, nvars)

    @classmethod
    def monomial(cls, exps: Iterable[int], c: Any = 1) -> "MPoly":
        e = tuple(exps)
        return cls({e: c}, len(e))

    def _coerce(self, other: Any) -> "MPoly":
        return other if isinstance(other, MPoly) else MPoly.const(other, self.nvars)

    def __add__(self, other: Any) -> "MPoly":
        o = self._coerce(other)
        out = dict(self.terms)
        for e, c in o.terms.items():
            out[e] = out.get(e, 0) + c
        return MPoly(out, self.nvars)

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        return MPoly({e: -c for e, c in self.terms.items()}, self.nvars)

    def __sub__(self, other: Any) -> "MPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Any) -> "MPoly":
        return self._coerce(other) - self

    def __mul__(self, other: Any) -> "MPoly":
        if not isinstance(other, MPoly):
            return MPoly({e: c * other for e, c in self.terms.items()}, self.nvars)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MPoly(out, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MPoly":
        out = MPoly.const(Fraction(1), self.nvars)
        for _ in range(k):
            out = out * self
        return out

    def coeff(self, exps: Iterable[int]) -> Any:
        return self.terms.get(tuple(exps), 0)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: Any) -> bool:
        return (self - self._coerce(other)).is_zero()

    __hash__ = None  # type: ignore[assignment]

    def __call__(self, *values: Any) -> Any:
        total: Any = 0
        for e, c in self.terms.items():
            t = c
            for v, k in zip(values, e):
                t = t * v ** k
            total = total + t
        return total

    @property
    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def __repr__(self) -> str:
        return f"MPoly({self.terms!r})"

    def to_json(self, names: Iterable[str]) -> list:
        from .exact import scalar_to_json
        names = list(names)
        return [{"monomial": {n: k for n, k in zip(names, e) if k},
                 "coeff": scalar_to_json(c)} for e, c in sorted(self.terms.items())]
