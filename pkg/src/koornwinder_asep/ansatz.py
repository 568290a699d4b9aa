"""The tridiagonal USW representation of the Matrix Ansatz.

Parameters live at a :class:`ParamPoint` ``(a, b, c, d, q)``; the boundary
rates ``(alpha, beta, gamma, delta)`` are derived rationally from them. The
operators are lazily generated band matrices, and every bracket
``<W| M_1 ... M_N |V^r>`` is evaluated by pushing a sparse row vector through
the product.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable, Sequence

from .exact import DegenerateParameterError, GaussianRational, Poly, is_zero
from .report import Report

TRUNCATION_MARGIN = 2


def _nonzero(value: Any, what: str) -> None:
    if is_zero(value):
        raise DegenerateParameterError(f"degenerate parameters: {what} = 0", what)


@dataclass(frozen=True)
class ParamPoint:
    """A point ``(a, b, c, d, q)`` with derived boundary rates.

    ``horizon`` is the largest representation index certified free of poles;
    :meth:`ensure_horizon` extends it (or raises) before any entry is built.
    """

    a: Any
    b: Any
    c: Any
    d: Any
    q: Any
    horizon: int = 12
    _validated: list = field(default_factory=lambda: [-1], compare=False, repr=False, hash=False)

    def __post_init__(self) -> None:
        for k in "abcdq":
            v = getattr(self, k)
            if isinstance(v, int):
                object.__setattr__(self, k, Fraction(v))
        if self.q == 1:
            raise DegenerateParameterError("the USW representation needs q != 1", "1-q")
        _nonzero(1 + self.a * self.c + self.a + self.c, "1+ac+a+c")
        _nonzero(1 + self.b * self.d + self.b + self.d, "1+bd+b+d")
        self.ensure_horizon(self.horizon)

    @property
    def abcd(self) -> Any:
        return self.a * self.b * self.c * self.d

    @property
    def alpha(self) -> Any:
        return (1 - self.q) / (1 + self.a * self.c + self.a + self.c)

    @property
    def beta(self) -> Any:
        return (1 - self.q) / (1 + self.b * self.d + self.b + self.d)

    @property
    def gamma(self) -> Any:
        return -(1 - self.q) * self.a * self.c / (1 + self.a * self.c + self.a + self.c)

    @property
    def delta(self) -> Any:
        return -(1 - self.q) * self.b * self.d / (1 + self.b * self.d + self.b + self.d)

    @property
    def rates(self) -> tuple:
        return self.alpha, self.beta, self.gamma, self.delta

    def ensure_horizon(self, h: int) -> None:
        """Certify every USW denominator with index ``<= h`` is nonzero."""
        done = self._validated[0]
        if h <= done:
            return
        q, abcd = self.q, self.abcd
        ac, bd = self.a * self.c, self.b * self.d
        for n in range(done + 1, h + 1):
            qn = q ** n
            _nonzero(1 - qn * ac, f"1-q^{n}ac")
            _nonzero(1 - qn * bd, f"1-q^{n}bd")
            for k in (2 * n, 2 * n + 1):
                _nonzero(1 - q ** k * abcd, f"1-q^{k}abcd")
            if n >= 1:
                _nonzero(1 - q ** (2 * n - 1) * abcd, f"1-q^{2 * n - 1}abcd")
        self._validated[0] = h

    def to_json(self) -> dict:
        from .exact import scalar_to_json
        return {k: scalar_to_json(getattr(self, k)) for k in "abcdq"}


def derive_open_boundary_rates(p: ParamPoint) -> tuple:
    """``(alpha, beta, gamma, delta)`` from ``(a, b, c, d, q)``."""
    return p.rates


def _rational_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def boundary_params_from_rates(alpha: Fraction, beta: Fraction, gamma: Fraction,
                               delta: Fraction, q: Fraction) -> tuple:
    """Invert the rate map back to ``(a, b, c, d)`` when the roots are rational.

    ``a, c`` are the two roots of ``alpha t^2 - (1-q-alpha+gamma) t - gamma``
    (``+`` root is ``a``), and likewise ``b, d`` with ``beta, delta``.
    """
    def roots(rate: Fraction, back: Fraction, label: str) -> tuple:
        if rate == 0:
            raise DegenerateParameterError(f"{label} = 0 has no (a,c)/(b,d) preimage", label)
        lin = 1 - q - rate + back
        disc = lin * lin + 4 * rate * back
        s = _rational_sqrt(Fraction(disc))
        if s is None:
            raise ValueError(f"rates give an irrational {label} root pair (discriminant {disc})")
        return (lin + s) / (2 * rate), (lin - s) / (2 * rate)

    a, c = roots(alpha, gamma, "alpha")
    b, d = roots(beta, delta, "beta")
    return a, b, c, d


def check_rate_roots(p: ParamPoint) -> bool:
    """``a`` and ``c`` solve the quadratic behind the rate inversion (same for ``b, d``)."""
    al, be, ga, de = p.rates
    q = p.q
    ok = True
    for t in (p.a, p.c):
        ok &= is_zero(al * t * t - (1 - q - al + ga) * t - ga)
    for t in (p.b, p.d):
        ok &= is_zero(be * t * t - (1 - q - be + de) * t - de)
    return ok


# ---------------------------------------------------------------------------
# USW entries


@dataclass(frozen=True)
class USWEntries:
    d_nat: Any
    d_sharp: Any
    d_flat: Any
    e_nat: Any
    e_sharp: Any
    e_flat: Any
    A_n: Any


def _nat_entry(n: int, q: Any, x1: Any, x2: Any, y1: Any, y2: Any) -> Any:
    """Diagonal entry with (x1, x2) the 'own' pair and (y1, y2) the other pair.

    For d: own pair is (b, d), other pair is (a, c); e swaps the roles.
    """
    xs, xp = x1 + x2, x1 * x2
    ys = y1 + y2
    abcd = xp * y1 * y2
    if n == 0:
        # with the q^(n-1) prefactor every q^-1 and q^-2 term cancels
        return (xs - xp * ys) / (1 - abcd)
    bracket = (xp * ys + xs * q - abcd * xs * q ** (n - 1)
               - (xp * ys + abcd * xs) * q ** n - xp * ys * q ** (n + 1)
               + abcd * xp * ys * q ** (2 * n - 1) + abcd * xs * q ** (2 * n))
    return q ** (n - 1) * bracket / ((1 - q ** (2 * n - 2) * abcd) * (1 - q ** (2 * n) * abcd))


def nat_entry_uncancelled(n: int, q: Any, x1: Any, x2: Any, y1: Any, y2: Any) -> Any:
    """The diagonal entry with its q^(n-1) prefactor, also at n = 0 (needs q != 0)."""
    xs, xp = x1 + x2, x1 * x2
    ys = y1 + y2
    abcd = xp * y1 * y2
    bracket = (xp * ys + xs * q - abcd * xs * q ** (n - 1)
               - (xp * ys + abcd * xs) * q ** n - xp * ys * q ** (n + 1)
               + abcd * xp * ys * q ** (2 * n - 1) + abcd * xs * q ** (2 * n))
    return q ** (n - 1) * bracket / ((1 - q ** (2 * n - 2) * abcd) * (1 - q ** (2 * n) * abcd))


def script_A(p: ParamPoint, n: int) -> Any:
    a, b, c, d, q = p.a, p.b, p.c, p.d, p.q
    abcd = p.abcd
    qn = q ** n
    num = ((1 - q ** (n + 1)) * (1 - qn * a * b) * (1 - qn * a * c) * (1 - qn * a * d)
           * (1 - qn * b * c) * (1 - qn * b * d) * (1 - qn * c * d))
    if n == 0:
        # (1 - q^(n-1) abcd) / (1 - q^(2n-1) abcd) is identically 1 at n = 0
        return num / ((1 - abcd) ** 2 * (1 - q * abcd))
    return ((1 - q ** (n - 1) * abcd) * num
            / ((1 - q ** (2 * n - 1) * abcd) * (1 - q ** (2 * n) * abcd) ** 2
               * (1 - q ** (2 * n + 1) * abcd)))


def usw_entries(p: ParamPoint, n: int) -> USWEntries:
    if n < 0:
        raise ValueError("representation index must be nonnegative")
    p.ensure_horizon(n + 1)
    a, b, c, d, q = p.a, p.b, p.c, p.d, p.q
    qn = q ** n
    An = script_A(p, n)
    denom = (1 - qn * a * c) * (1 - qn * b * d)
    return USWEntries(
        d_nat=_nat_entry(n, q, b, d, a, c),
        d_sharp=1 + 0 * q,
        d_flat=-qn * b * d * An / denom,
        e_nat=_nat_entry(n, q, a, c, b, d),
        e_sharp=-qn * a * c,
        e_flat=An / denom,
        A_n=An,
    )


# ---------------------------------------------------------------------------
# Band operators


class BandOperator:
    """Lazily generated band matrix indexed by nonnegative integers."""

    def __init__(self, lower: int, upper: int, entry: Callable[[int, int], Any],
                 name: str = "") -> None:
        self.lower = lower
        self.upper = upper
        self._entry = entry
        self._cache: dict = {}
        self.name = name

    def __call__(self, i: int, j: int) -> Any:
        if i < 0 or j < 0 or j - i > self.upper or i - j > self.lower:
            return 0
        key = (i, j)
        try:
            return self._cache[key]
        except KeyError:
            v = self._entry(i, j)
            self._cache[key] = v
            return v

    entry = __call__

    @property
    def bandwidth(self) -> int:
        return self.lower + self.upper

    def truncate(self, dim: int) -> list[list[Any]]:
        return [[self(i, j) for j in range(dim)] for i in range(dim)]

    def __add__(self, other: "BandOperator") -> "BandOperator":
        return BandOperator(max(self.lower, other.lower), max(self.upper, other.upper),
                            lambda i, j: self(i, j) + other(i, j), f"({self.name}+{other.name})")

    def __sub__(self, other: "BandOperator") -> "BandOperator":
        return BandOperator(max(self.lower, other.lower), max(self.upper, other.upper),
                            lambda i, j: self(i, j) - other(i, j), f"({self.name}-{other.name})")

    def scale(self, s: Any) -> "BandOperator":
        return BandOperator(self.lower, self.upper, lambda i, j: s * self(i, j),
                            f"{s}*{self.name}")

    def __rmul__(self, s: Any) -> "BandOperator":
        return self.scale(s)

    def __matmul__(self, other: "BandOperator") -> "BandOperator":
        def entry(i: int, j: int) -> Any:
            acc: Any = 0
            for k in range(max(0, i - self.lower, j - other.upper),
                           min(i + self.upper, j + other.lower) + 1):
                acc = acc + self(i, k) * other(k, j)
            return acc
        return BandOperator(self.lower + other.lower, self.upper + other.upper, entry,
                            f"{self.name}{other.name}")

    def __repr__(self) -> str:
        return f"BandOperator({self.name!r}, lower={self.lower}, upper={self.upper})"


def identity_operator(one: Any = 1) -> BandOperator:
    return BandOperator(0, 0, lambda i, j: one, "1")


@dataclass
class AnsatzOperators:
    p: ParamPoint
    d: BandOperator
    e: BandOperator
    D: BandOperator
    E: BandOperator
    A: BandOperator

    def letter(self, ch: str) -> BandOperator:
        return {"D": self.D, "E": self.E, "A": self.A, "d": self.d, "e": self.e}[ch]


@lru_cache(maxsize=64)
def build_operators(p: ParamPoint) -> AnsatzOperators:
    """``D = (1 + d)/(1-q)``, ``E = (1 + e)/(1-q)`` and ``A = DE - ED``."""

    def d_entry(i: int, j: int) -> Any:
        if i == j:
            return usw_entries(p, i).d_nat
        if j == i + 1:
            return usw_entries(p, i).d_sharp
        return usw_entries(p, j).d_flat

    def e_entry(i: int, j: int) -> Any:
        if i == j:
            return usw_entries(p, i).e_nat
        if j == i + 1:
            return usw_entries(p, i).e_sharp
        return usw_entries(p, j).e_flat

    d = BandOperator(1, 1, d_entry, "d")
    e = BandOperator(1, 1, e_entry, "e")
    s = 1 / (1 - p.q)
    D = BandOperator(1, 1, lambda i, j: s * ((1 if i == j else 0) + d(i, j)), "D")
    E = BandOperator(1, 1, lambda i, j: s * ((1 if i == j else 0) + e(i, j)), "E")
    A = D @ E - E @ D
    A.name = "A"
    return AnsatzOperators(p, d, e, D, E, A)


# ---------------------------------------------------------------------------
# Bracket evaluation


def default_dimension(operators: Sequence[BandOperator], r: int) -> int:
    return 1 + r + sum(op.bandwidth for op in operators) + TRUNCATION_MARGIN


def eval_bra_word_ket(operators: Sequence[BandOperator], r: int = 0, *,
                      dim: int | None = None, one: Any = 1) -> Any:
    """``<W| M_1 M_2 ... M_N |V^r>`` on a truncation of dimension ``dim``."""
    if dim is None:
        dim = default_dimension(operators, r)
    v: dict[int, Any] = {0: one}
    for op in operators:
        v = _row_times(v, op, dim)
    return v.get(r, one * 0)


def _row_times(v: dict[int, Any], op: BandOperator, dim: int) -> dict[int, Any]:
    w: dict[int, Any] = {}
    for i, vi in v.items():
        for j in range(max(0, i - op.lower), min(dim, i + op.upper + 1)):
            x = op(i, j)
            if is_zero(x):
                continue
            w[j] = w[j] + vi * x if j in w else vi * x
    return {j: x for j, x in w.items() if not is_zero(x)}


def power_rows(op: BandOperator, n_max: int, *, dim: int | None = None,
               one: Any = 1) -> list[dict[int, Any]]:
    """Row vectors ``<W| op^N`` for ``N = 0..n_max``; entry ``r`` is ``<W|op^N|V^r>``."""
    if dim is None:
        dim = 1 + n_max * op.upper + TRUNCATION_MARGIN
    rows = [{0: one}]
    for _ in range(n_max):
        rows.append(_row_times(rows[-1], op, dim))
    return rows


def bracket_word(ops: AnsatzOperators, word: str, r: int = 0, **kw: Any) -> Any:
    return eval_bra_word_ket([ops.letter(ch) for ch in word], r, **kw)


# ---------------------------------------------------------------------------
# Relation checker


def _mat(op: BandOperator, dim: int) -> list[list[Any]]:
    return op.truncate(dim)


def _mm(x: list[list[Any]], y: list[list[Any]]) -> list[list[Any]]:
    n = len(x)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for k in range(n):
            xik = x[i][k]
            if is_zero(xik):
                continue
            for j in range(n):
                out[i][j] = out[i][j] + xik * y[k][j]
    return out


def _lin(*terms: tuple) -> list[list[Any]]:
    n = len(terms[0][1])
    out = [[0] * n for _ in range(n)]
    for coef, m in terms:
        for i in range(n):
            for j in range(n):
                out[i][j] = out[i][j] + coef * m[i][j]
    return out


def _eye(n: int) -> list[list[Any]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _compare_block(report: Report, name: str, lhs: list[list[Any]], rhs: list[list[Any]],
                   size: int) -> None:
    for i in range(size):
        for j in range(size):
            if lhs[i][j] != rhs[i][j]:
                report.add(name, lhs[i][j], rhs[i][j], entry=(i, j))
                return
    report.record(name, True, block=size)


def _compare_vec(report: Report, name: str, lhs: list[Any], rhs: list[Any]) -> None:
    for k, (x, y) in enumerate(zip(lhs, rhs)):
        if x != y:
            report.add(name, x, y, entry=k)
            return
    report.record(name, True, length=len(lhs))


def check_operator_relations(ops: AnsatzOperators, dim: int = 10) -> Report:
    """Entrywise check of the quadratic and boundary relations on a truncation."""
    if dim < 6:
        raise ValueError("relation checks need dim >= 6")
    p = ops.p
    q = p.q
    al, be, ga, de = p.rates
    a, b, c, d_ = p.a, p.b, p.c, p.d
    rep = Report("relations")
    D, E, A = _mat(ops.D, dim), _mat(ops.E, dim), _mat(ops.A, dim)
    dm, em = _mat(ops.d, dim), _mat(ops.e, dim)
    one = _eye(dim)
    inner1 = dim - 2
    inner2 = dim - 4

    _compare_block(rep, "DE - qED = D + E",
                   _lin((1, _mm(D, E)), (-q, _mm(E, D))), _lin((1, D), (1, E)), inner1)
    _compare_block(rep, "A = DE - ED (band 2,2)",
                   A, _lin((1, _mm(D, E)), (-1, _mm(E, D))), inner1)
    band_ok = all(is_zero(ops.A(i, j)) for i in range(dim) for j in range(dim)
                  if abs(i - j) > 2)
    rep.record("A has bandwidth (2,2)", band_ok, dim=dim)
    _compare_block(rep, "DA = qAD + A",
                   _mm(D, A), _lin((q, _mm(A, D)), (1, A)), inner2)
    _compare_block(rep, "AE = qEA + A",
                   _mm(A, E), _lin((q, _mm(E, A)), (1, A)), inner2)
    _compare_block(rep, "dA = qAd", _mm(dm, A), _lin((q, _mm(A, dm))), inner2)
    _compare_block(rep, "Ae = qeA", _mm(A, em), _lin((q, _mm(em, A))), inner2)
    _compare_block(rep, "de = qed + (1-q)1",
                   _mm(dm, em), _lin((q, _mm(em, dm)), (1 - q, one)), inner1)
    dk = one
    for k in range(1, 5):
        dk_prev = dk
        dk = _mm(dk, dm)
        _compare_block(rep, f"d^{k} e = q^{k} e d^{k} + (1-q^{k}) d^{k - 1}",
                       _mm(dk, em), _lin((q ** k, _mm(em, dk)), (1 - q ** k, dk_prev)),
                       dim - 2 * (k + 1))

    # boundary rows and columns, over the full truncation
    row0 = [al * E[0][j] - ga * D[0][j] for j in range(dim)]
    _compare_vec(rep, "<W|(alpha E - gamma D) = <W|", row0, one[0])
    col0 = [be * D[i][0] - de * E[i][0] for i in range(dim)]
    _compare_vec(rep, "(beta D - delta E)|V> = |V>", col0, [one[i][0] for i in range(dim)])
    _compare_vec(rep, "d|V> = (b+d)|V> - bd e|V>",
                 [dm[i][0] for i in range(dim)],
                 [(b + d_) * one[i][0] - b * d_ * em[i][0] for i in range(dim)])
    _compare_vec(rep, "<W|e = (a+c)<W| - ac <W|d",
                 em[0], [(a + c) * one[0][j] - a * c * dm[0][j] for j in range(dim)])
    for k in range(1, dim - 1):
        ent = usw_entries(p, k)
        prev = usw_entries(p, k - 1)
        expect = [0] * dim
        expect[k - 1] = prev.d_sharp
        expect[k] = ent.d_nat
        expect[k + 1] = ent.d_flat
        _compare_vec(rep, f"d|V^{k}> three-term", [dm[i][k] for i in range(dim)], expect)
    return rep


def check_ansatz_relations(p: ParamPoint, dim: int = 10) -> Report:
    return check_operator_relations(build_operators(p), dim)


# ---------------------------------------------------------------------------
# Random parameter points


def random_rational(rng: random.Random, max_den: int = 9) -> Fraction:
    """A nonzero rational in (-1, 1) with small denominator."""
    while True:
        den = rng.randint(2, max_den)
        num = rng.randint(-(den - 1), den - 1)
        if num:
            return Fraction(num, den)


def random_point(rng: random.Random, horizon: int = 12, max_den: int = 9) -> ParamPoint:
    """Seeded random generic point; rejects pole hits and retries."""
    while True:
        vals = [random_rational(rng, max_den) for _ in range(5)]
        try:
            return ParamPoint(*vals, horizon=horizon)
        except DegenerateParameterError:
            continue


def random_points(seed: int, count: int, horizon: int = 12) -> list[ParamPoint]:
    rng = random.Random(seed)
    return [random_point(rng, horizon) for _ in range(count)]


def gaussian_image(p: ParamPoint) -> ParamPoint:
    """``(a, b, c, d) -> (a i, -b i, c i, -d i)`` over Q(i), same q."""
    i = GaussianRational(0, 1)
    return ParamPoint(p.a * i, -p.b * i, p.c * i, -p.d * i, GaussianRational.coerce(p.q),
                      horizon=p.horizon)


def xi_operator(ops: AnsatzOperators, xi: Any = None) -> BandOperator:
    """``xi D + E`` with xi formal unless a value is given."""
    x = Poly.x("xi") if xi is None else xi
    op = BandOperator(1, 1, lambda i, j: x * ops.D(i, j) + ops.E(i, j), "(xiD+E)")
    return op
