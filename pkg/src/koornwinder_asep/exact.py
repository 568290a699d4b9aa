"""Exact scalars, univariate polynomials, truncated series and determinants.

Rationals are :class:`fractions.Fraction`. Everything else here is written so
that it works over any exact ring whose elements support ``+ - *`` and
``== 0``: Fraction, :class:`GaussianRational`, or :class:`Poly` itself.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Any, Iterable, Sequence

Rational = Fraction


class DegenerateParameterError(ValueError):
    """A denominator vanished at the chosen parameter point."""

    def __init__(self, message: str, denominator: str = "") -> None:
        super().__init__(message)
        self.denominator = denominator or message


class InexactDivisionError(ArithmeticError):
    """A division that theory says is exact left a remainder."""


def is_zero(x: Any) -> bool:
    return x == 0


# ---------------------------------------------------------------------------
# Gaussian rationals


class GaussianRational:
    """An element ``re + im*i`` of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re: Any = 0, im: Any = 0) -> None:
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def coerce(cls, x: Any) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x, 0)
        raise TypeError(f"cannot coerce {type(x).__name__} to GaussianRational")

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __add__(self, other: Any) -> "GaussianRational":
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __pos__(self) -> "GaussianRational":
        return self

    def __sub__(self, other: Any) -> "GaussianRational":
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other: Any) -> "GaussianRational":
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return o - self

    def __mul__(self, other: Any) -> "GaussianRational":
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("GaussianRational division by zero")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other: Any) -> "GaussianRational":
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: Any) -> "GaussianRational":
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int) -> "GaussianRational":
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        out = GaussianRational(1)
        for _ in range(abs(k)):
            out = out * base
        return out

    def __eq__(self, other: Any) -> bool:
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self) -> int:
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self) -> str:
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        return f"{self.re}+{self.im}i" if self.im > 0 else f"{self.re}{self.im}i"


I = GaussianRational(0, 1)

SCALAR_TYPES = (int, Fraction, GaussianRational)


def _trim(coeffs: list) -> list:
    while coeffs and is_zero(coeffs[-1]):
        coeffs.pop()
    return coeffs


# ---------------------------------------------------------------------------
# Polynomials


class Poly:
    """Dense univariate polynomial, ascending coefficients, canonical form.

    Coefficients live in any exact ring (scalars or another Poly in a
    different variable). The zero polynomial has an empty list.
    """

    __slots__ = ("var", "coeffs")

    def __init__(self, coeffs: Iterable[Any] = (), var: str = "xi") -> None:
        self.var = var
        self.coeffs = tuple(_trim([Fraction(c) if type(c) is int else c for c in coeffs]))

    @classmethod
    def x(cls, var: str = "xi") -> "Poly":
        return cls([0, 1], var)

    @classmethod
    def const(cls, c: Any, var: str = "xi") -> "Poly":
        return cls([c], var)

    def _lift(self, other: Any) -> "Poly | None":
        if isinstance(other, Poly):
            if other.var != self.var:
                # the other variable is an inner coefficient ring
                return Poly([other], self.var)
            return other
        if isinstance(other, SCALAR_TYPES):
            return Poly([other], self.var)
        return None

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> Any:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __len__(self) -> int:
        return len(self.coeffs)

    def __add__(self, other: Any) -> "Poly":
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return Poly([self[k] + o[k] for k in range(n)], self.var)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs], self.var)

    def __sub__(self, other: Any) -> "Poly":
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Any) -> "Poly":
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other: Any) -> "Poly":
        if isinstance(other, SCALAR_TYPES) or (isinstance(other, Poly) and other.var != self.var):
            return Poly([c * other for c in self.coeffs], self.var)
        if not isinstance(other, Poly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return Poly([], self.var)
        out: list[Any] = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(out, self.var)

    def __rmul__(self, other: Any) -> "Poly":
        if isinstance(other, SCALAR_TYPES) or isinstance(other, Poly):
            return Poly([other * c for c in self.coeffs], self.var)
        return NotImplemented

    def __pow__(self, k: int) -> "Poly":
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = Poly([1], self.var)
        for _ in range(k):
            out = out * self
        return out

    def __truediv__(self, other: Any) -> "Poly":
        """Division by a nonzero scalar, or exact division by a polynomial."""
        if isinstance(other, Poly) and other.var == self.var:
            return self.exact_div(other)
        if is_zero(other):
            raise ZeroDivisionError("polynomial division by zero")
        return Poly([c / other for c in self.coeffs], self.var)

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        lead = other.coeffs[-1]
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly([], self.var), Poly(rem, self.var)
        quot: list[Any] = [0] * (dq + 1)
        for k in range(dq, -1, -1):
            c = rem[k + len(other.coeffs) - 1] / lead
            quot[k] = c
            if is_zero(c):
                continue
            for j, b in enumerate(other.coeffs):
                rem[k + j] = rem[k + j] - c * b
        return Poly(quot, self.var), Poly(rem[: len(other.coeffs) - 1], self.var)

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = self.divmod(other)
        if r.coeffs:
            raise InexactDivisionError(
                f"nonzero remainder dividing by a degree-{other.degree} polynomial")
        return q

    def __call__(self, value: Any) -> Any:
        acc: Any = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def truncate(self, max_degree: int) -> "Poly":
        return Poly(self.coeffs[: max_degree + 1], self.var)

    def __eq__(self, other: Any) -> bool:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return len(self.coeffs) == len(o.coeffs) and all(
            a == b for a, b in zip(self.coeffs, o.coeffs))

    def __hash__(self) -> int:
        if len(self.coeffs) <= 1:
            return hash(self[0])
        return hash((self.var, self.coeffs))

    def __repr__(self) -> str:
        return f"Poly({[str(c) for c in self.coeffs]}, var={self.var!r})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if is_zero(c):
                continue
            mon = "" if k == 0 else (self.var if k == 1 else f"{self.var}^{k}")
            cs = str(c)
            if isinstance(c, Poly) or "+" in cs[1:] or "-" in cs[1:]:
                cs = f"({cs})"
            terms.append(cs if not mon else (mon if cs == "1" else f"{cs}*{mon}"))
        return " + ".join(terms)


class SeriesY:
    """Polynomial in y truncated at degree ``r_max``; coefficients are ring elements."""

    __slots__ = ("r_max", "coeffs")

    def __init__(self, coeffs: Iterable[Any], r_max: int) -> None:
        self.r_max = r_max
        self.coeffs = tuple(_trim(list(coeffs)[: r_max + 1]))

    @classmethod
    def y(cls, r_max: int) -> "SeriesY":
        return cls([0, 1], r_max)

    def coeff(self, r: int) -> Any:
        if r > self.r_max:
            raise ValueError(f"[y^{r}] requested beyond truncation order {self.r_max}")
        return self.coeffs[r] if 0 <= r < len(self.coeffs) else 0

    def _same(self, other: Any) -> "SeriesY":
        if isinstance(other, SeriesY):
            if other.r_max != self.r_max:
                raise ValueError("mixing SeriesY of different truncation orders")
            return other
        return SeriesY([other], self.r_max)

    def __add__(self, other: Any) -> "SeriesY":
        o = self._same(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return SeriesY([self.coeff(k) + o.coeff(k) for k in range(n)], self.r_max)

    __radd__ = __add__

    def __neg__(self) -> "SeriesY":
        return SeriesY([-c for c in self.coeffs], self.r_max)

    def __sub__(self, other: Any) -> "SeriesY":
        return self + (-self._same(other))

    def __rsub__(self, other: Any) -> "SeriesY":
        return self._same(other) - self

    def __mul__(self, other: Any) -> "SeriesY":
        if not isinstance(other, SeriesY):
            return SeriesY([c * other for c in self.coeffs], self.r_max)
        o = self._same(other)
        out: list[Any] = [0] * min(self.r_max + 1, len(self.coeffs) + len(o.coeffs))
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(o.coeffs):
                if i + j <= self.r_max:
                    out[i + j] = out[i + j] + a * b
        return SeriesY(out, self.r_max)

    def __rmul__(self, other: Any) -> "SeriesY":
        return SeriesY([other * c for c in self.coeffs], self.r_max)

    def __eq__(self, other: Any) -> bool:
        o = self._same(other)
        return len(self.coeffs) == len(o.coeffs) and all(
            a == b for a, b in zip(self.coeffs, o.coeffs))

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"SeriesY({list(self.coeffs)!r}, r_max={self.r_max})"


# ---------------------------------------------------------------------------
# q-analogues


def q_int(k: int, q: Any) -> Any:
    """``[k]_q = 1 + q + ... + q^(k-1)``; zero for k = 0."""
    acc: Any = 0
    term: Any = 1
    for _ in range(k):
        acc = acc + term
        term = term * q
    return acc


def q_binomial(n: int, k: int, q: Any, *, inverse_base: bool = False) -> Any:
    """Gaussian binomial ``[n, k]_q`` via Pascal's rule (no division).

    With ``inverse_base=True`` returns ``[n, k]_{1/q} = q^(-k(n-k)) [n, k]_q``,
    which needs ``q != 0``.
    """
    if n < 0 or k < 0 or k > n:
        return 0 * q
    # row[j] = [m, j]_q; [m, j] = [m-1, j] + q^(m-j) [m-1, j-1]
    row: list[Any] = [1]
    for m in range(1, n + 1):
        new = [1] * (m + 1)
        qpow = q  # q^(m-j) for j = m-1
        for j in range(m - 1, 0, -1):
            new[j] = row[j] + qpow * row[j - 1]
            qpow = qpow * q
        row = new
    value = row[k] + 0 * q
    if inverse_base:
        if is_zero(q):
            raise DegenerateParameterError("base-1/q binomial needs q != 0", "q")
        if isinstance(q, Poly):
            raise TypeError("base-1/q binomial of a formal q is a Laurent polynomial")
        value = value / (q ** (k * (n - k)))
    return value


# ---------------------------------------------------------------------------
# Determinants


def _exact_quotient(a: Any, b: Any) -> Any:
    if isinstance(a, Poly) and isinstance(b, Poly) and a.var == b.var:
        return a.exact_div(b)
    if isinstance(b, Poly) and len(b.coeffs) == 1:
        return a / b.coeffs[0]
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r:
            raise InexactDivisionError(f"{a} is not divisible by {b}")
        return q
    return a / b


def _check_square(m: Sequence[Sequence[Any]]) -> int:
    n = len(m)
    for row in m:
        if len(row) != n:
            raise ValueError("determinant of a non-square matrix")
    return n


def det_bareiss(m: Sequence[Sequence[Any]]) -> Any:
    """Fraction-free (Bareiss) elimination; every division is exact."""
    n = _check_square(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev: Any = 1
    for k in range(n - 1):
        if is_zero(a[k][k]):
            for i in range(k + 1, n):
                if not is_zero(a[i][k]):
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0 * a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = _exact_quotient(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev)
        prev = a[k][k]
    return a[n - 1][n - 1] if sign > 0 else -a[n - 1][n - 1]


def det_cofactor(m: Sequence[Sequence[Any]]) -> Any:
    """Laplace expansion along the first row; division-free."""
    n = _check_square(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    acc: Any = 0
    for j in range(n):
        if is_zero(m[0][j]):
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * det_cofactor(minor)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def exact_determinant(m: Sequence[Sequence[Any]]) -> Any:
    """Exact determinant over a commutative ring.

    Polynomial matrices up to 8x8 use cofactor expansion (no division at all);
    everything else uses Bareiss elimination.
    """
    n = _check_square(m)
    has_poly = any(isinstance(x, (Poly, SeriesY)) for row in m for x in row)
    if has_poly and n <= 4:
        return det_cofactor(m)
    return det_bareiss(m)


def det_permutations(m: Sequence[Sequence[Any]]) -> Any:
    """Leibniz expansion; for cross-checks only."""
    n = _check_square(m)
    acc: Any = 0
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term: Any = 1
        for i in range(n):
            term = term * m[i][perm[i]]
        acc = acc - term if inv % 2 else acc + term
    return acc


# ---------------------------------------------------------------------------
# JSON forms


def scalar_to_json(x: Any) -> Any:
    if isinstance(x, GaussianRational):
        return {"re": str(x.re), "im": str(x.im)}
    if isinstance(x, (int, Fraction)):
        return str(Fraction(x))
    if isinstance(x, Poly):
        return poly_to_json(x)
    raise TypeError(f"no JSON form for {type(x).__name__}")


def poly_to_json(p: Any, var: str = "xi") -> dict:
    if not isinstance(p, Poly):
        p = Poly([p], var)
    return {"var": p.var, "coeffs": [scalar_to_json(c) for c in p.coeffs]}


def parse_rational(s: str) -> Fraction:
    s = s.strip().replace("−", "-")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {s!r}") from exc


def scalar_from_json(obj: Any) -> Any:
    if isinstance(obj, dict) and "re" in obj:
        return GaussianRational(parse_rational(obj["re"]), parse_rational(obj["im"]))
    if isinstance(obj, dict) and "coeffs" in obj:
        return poly_from_json(obj)
    return parse_rational(str(obj))


def poly_from_json(obj: dict) -> Poly:
    return Poly([scalar_from_json(c) for c in obj["coeffs"]], obj.get("var", "xi"))
