"""The polynomials F_m(y), A_m(a,c), B_m(b,d) and the identities tying
``<W|d^N|V^r>`` to ``<W|A^r d^m|V>``.

Every check compares exact values at a specialized point; the coefficient
identities are checked both through the closed-form coefficients
``x(m, n, i, j)`` and by expanding the ``X_{m,n}`` as polynomials in a, b, c, d.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb
from typing import Any

from .ansatz import ParamPoint, build_operators, eval_bra_word_ket, usw_entries
from .exact import DegenerateParameterError, Poly, SeriesY, is_zero, q_binomial
from .multipoly import MPoly
from .report import Report

Y = "y"


def _need_q_nonzero(q: Any, what: str) -> None:
    if is_zero(q):
        raise DegenerateParameterError(f"{what} needs q != 0 (base 1/q)", "q")


# ---------------------------------------------------------------------------
# A_m, B_m and F_m


def B_poly(p: ParamPoint, m: int) -> Any:
    """``B_m(b,d) = sum_i [m,i]_q b^i d^(m-i)``."""
    if m < 0:
        return 0 * p.q
    return sum((q_binomial(m, i, p.q) * p.b ** i * p.d ** (m - i) for i in range(m + 1)),
               0 * p.q)


def A_poly(p: ParamPoint, m: int) -> Any:
    """``A_m(a,c) = sum_i [m,i]_{1/q} a^i c^(m-i)``."""
    _need_q_nonzero(p.q, "A_m(a,c)")
    if m < 0:
        return 0 * p.q
    return sum((q_binomial(m, i, p.q, inverse_base=True) * p.a ** i * p.c ** (m - i)
                for i in range(m + 1)), 0 * p.q)


def B_mpoly(m: int, q: Any) -> MPoly:
    if m < 0:
        return MPoly()
    b, d = MPoly.var(1), MPoly.var(3)
    out = MPoly()
    for i in range(m + 1):
        out = out + q_binomial(m, i, q) * b ** i * d ** (m - i)
    return out


def A_mpoly(m: int, q: Any) -> MPoly:
    _need_q_nonzero(q, "A_m(a,c)")
    if m < 0:
        return MPoly()
    a, c = MPoly.var(0), MPoly.var(2)
    out = MPoly()
    for i in range(m + 1):
        out = out + q_binomial(m, i, q, inverse_base=True) * a ** i * c ** (m - i)
    return out


def F_recurrence(p: ParamPoint, m: int) -> Poly:
    """``F_m(y)`` from its defining three-term recurrence."""
    return _F_rec(p, m)


@lru_cache(maxsize=512)
def _F_rec(p: ParamPoint, m: int) -> Poly:
    if m < 0:
        return Poly(var=Y)
    if m == 0:
        return Poly.const(1, Y)
    a, b, c, d, q = p.a, p.b, p.c, p.d, p.q
    y = Poly.x(Y)
    first = (Poly.const(b + d, Y) - y * ((a + c) * q ** (m - 1))) * _F_rec(p, m - 1)
    if m == 1:
        return first
    # (q^(m-1) - 1) vanishes at m = 1, so q^(m-2) is only formed for m >= 2
    second = (Poly.const(b * d, Y) - y * y * (a * c * q ** (m - 2))) * _F_rec(p, m - 2)
    return first + second * (q ** (m - 1) - 1)


def F_explicit(p: ParamPoint, m: int) -> Poly:
    """``F_m(y) = sum_i (-1)^i [m,i]_q q^C(i,2) y^i A_i(a,c) B_{m-i}(b,d)``."""
    if m < 0:
        return Poly(var=Y)
    coeffs = [(-1) ** i * q_binomial(m, i, p.q) * p.q ** comb(i, 2) * A_poly(p, i)
              * B_poly(p, m - i) for i in range(m + 1)]
    return Poly(coeffs, Y)


def scale_arg(f: Poly, s: Any) -> Poly:
    """``y -> s y``."""
    return Poly([c * s ** k for k, c in enumerate(f.coeffs)], f.var)


def C_value(p: ParamPoint, m: int, r: int) -> Any:
    """``F_m(bd q^r) / prod_{i<m} (1 - abcd q^(2r+i))``."""
    if m < 0:
        return 0 * p.q
    den = 1 + 0 * p.q
    for i in range(m):
        den = den * (1 - p.abcd * p.q ** (2 * r + i))
    if is_zero(den):
        raise DegenerateParameterError("pole in C(m,r)", "1-abcd q^(2r+i)")
    return F_recurrence(p, m)(p.b * p.d * p.q ** r) / den


def R_r_scalar(p: ParamPoint, r: int) -> Any:
    """Diagonal remainder of the border relation; ``R_0 = b + d`` after cancelling q."""
    a, b, c, d, q = p.a, p.b, p.c, p.d, p.q
    abcd = p.abcd
    if r == 0:
        return b + d
    den = 1 - abcd * q ** (2 * r - 2)
    if is_zero(den):
        raise DegenerateParameterError(f"pole in R_{r}", f"1-abcd q^{2 * r - 2}")
    return q ** (r - 1) / den * (q * (b + d) - q ** (r - 1) * (b + d) * abcd
                                 + b * d * (a + c) * (1 - q ** r))


def R_r_general(p: ParamPoint, r: int) -> Any:
    """The general-r expression, also at r = 0 (needs q != 0)."""
    a, b, c, d, q = p.a, p.b, p.c, p.d, p.q
    abcd = p.abcd
    return q ** (r - 1) / (1 - abcd * q ** (2 * r - 2)) * (
        q * (b + d) - q ** (r - 1) * (b + d) * abcd + b * d * (a + c) * (1 - q ** r))


# ---------------------------------------------------------------------------
# Coefficients x(m,n,i,j) and the polynomials X_{m,n}


def x_coeff(m: int, n: int, i: int, j: int, q: Any) -> Any:
    """Coefficient of ``a^j b^(n+i) c^(n-j) d^(m-i)`` in ``X_{m,n}``."""
    _need_q_nonzero(q, "x(m,n,i,j)")
    if not (0 <= n <= m and 0 <= i <= m - n and 0 <= j <= n):
        return 0 * q
    return ((-1) ** n * q ** comb(n, 2) * q_binomial(m, n, q) * q_binomial(m - n, i, q)
            * q_binomial(n, j, q, inverse_base=True))


def x_monomial(m: int, n: int, i: int, j: int) -> tuple:
    return (j, n + i, n - j, m - i)


@lru_cache(maxsize=1024)
def X_mpoly(m: int, n: int, q: Any) -> MPoly:
    """``(-1)^n [m,n]_q q^C(n,2) (bd)^n A_n(a,c) B_{m-n}(b,d)`` expanded in a, b, c, d."""
    if n < 0 or n > m:
        return MPoly()
    bd = MPoly.var(1) * MPoly.var(3)
    return ((-1) ** n * q_binomial(m, n, q) * q ** comb(n, 2)) * bd ** n * A_mpoly(n, q) \
        * B_mpoly(m - n, q)


def split1_coefficient(m: int, n: int, i: int, j: int, q: Any) -> Any:
    """Coefficient of ``a^j b^(n+i) c^(n-j) d^(m-i)`` in the first split identity."""
    x = lambda *t: x_coeff(*t, q)  # noqa: E731
    return ((1 - q ** -n) * x(m, n, i, j)
            - (q ** -2 - q ** (m - n)) * x(m, n - 2, i + 1, j - 1)
            - q ** -1 * (1 - q ** m) * (x(m - 1, n - 1, i, j) + x(m - 1, n - 1, i, j - 1))
            + q ** -2 * (1 - q ** m) * (x(m - 1, n - 2, i + 1, j - 1)
                                        + x(m - 1, n - 2, i, j - 1)))


def split2_coefficient(m: int, n: int, i: int, j: int, q: Any) -> Any:
    """Coefficient of ``a^j b^(n-1+i) c^(n-1-j) d^(m-i)`` in the second split identity."""
    x = lambda *t: x_coeff(*t, q)  # noqa: E731
    return ((q ** (1 - n) - q ** m) * x(m, n - 1, i, j)
            + (q ** (m - 2) - q ** (m - n + 1)) * x(m, n - 3, i + 1, j - 1)
            + (1 - q ** m) * (1 - q ** (m - 1)) * (
                x(m - 2, n - 1, i - 1, j)
                - (q ** -2 + q ** (m - 2)) * x(m - 2, n - 3, i, j - 1)
                + q ** (m - 4) * x(m - 2, n - 5, i + 1, j - 2))
            - (1 - q ** m) * (
                x(m - 1, n - 1, i, j) + x(m - 1, n - 1, i - 1, j)
                - (1 + q ** m) / q * (x(m - 1, n - 2, i, j - 1) + x(m - 1, n - 2, i, j))
                + q ** (m - 3) * (x(m - 1, n - 4, i + 1, j - 1)
                                  + x(m - 1, n - 4, i + 1, j - 2))))


def _abcd_vars() -> tuple:
    return MPoly.var(0), MPoly.var(1), MPoly.var(2), MPoly.var(3)


def split1_mpoly(m: int, n: int, q: Any) -> MPoly:
    """First split identity as a polynomial in a, b, c, d (should vanish)."""
    a, b, c, d = _abcd_vars()
    abcd = a * b * c * d
    X = lambda mm, nn: X_mpoly(mm, nn, q)  # noqa: E731
    return (q ** 2 * (1 - q ** -n) * X(m, n) - (1 - q ** (m - n + 2)) * abcd * X(m, n - 2)
            - q * (1 - q ** m) * b * d * (a + c) * X(m - 1, n - 1)
            + (1 - q ** m) * abcd * (b + d) * X(m - 1, n - 2))


def split2_mpoly(m: int, n: int, q: Any) -> MPoly:
    a, b, c, d = _abcd_vars()
    abcd = a * b * c * d
    bd = b * d
    X = lambda mm, nn: X_mpoly(mm, nn, q)  # noqa: E731
    return ((q ** (1 - n) - q ** m) * X(m, n - 1)
            + (q ** (m - 2) - q ** (m - n + 1)) * abcd * X(m, n - 3)
            - (1 - q ** m) * (b + d) * X(m - 1, n - 1)
            + q ** -1 * (1 - q ** m) * (1 + q ** m) * bd * (a + c) * X(m - 1, n - 2)
            - q ** (m - 3) * (1 - q ** m) * a * c * (a + c) * bd * bd * X(m - 1, n - 4)
            + (1 - q ** m) * (1 - q ** (m - 1)) * bd * (
                X(m - 2, n - 1) - (q ** -2 + q ** (m - 2)) * abcd * X(m - 2, n - 3)
                + q ** (m - 4) * abcd * abcd * X(m - 2, n - 5)))


def coeff_identity_mpoly(m: int, n: int, q: Any) -> MPoly:
    """Coefficient of ``y^n`` in the F_m(bdy) recurrence, as lhs - rhs."""
    a, b, c, d = _abcd_vars()
    abcd = a * b * c * d
    bd = b * d
    ab2cd2 = abcd * bd
    X = lambda mm, nn: X_mpoly(mm, nn, q)  # noqa: E731
    t = (1 - q ** m) * (1 - q ** (m - 1))
    lhs = (X(m, n) - q ** -2 * abcd * X(m, n - 2) - q ** m * X(m, n - 1)
           + q ** (m - 2) * abcd * X(m, n - 3))
    rhs = (q ** -n * X(m, n) - q ** (1 - n) * X(m, n - 1) - q ** (m - n) * abcd * X(m, n - 2)
           + q ** (m - n + 1) * abcd * X(m, n - 3)
           - t * bd * X(m - 2, n - 1) + q ** -2 * t * ab2cd2 * X(m - 2, n - 3)
           + t * (q ** (m - 2) * ab2cd2 * X(m - 2, n - 3)
                  - q ** (m - 4) * abcd * abcd * bd * X(m - 2, n - 5))
           + (1 - q ** m) * (b + d) * X(m - 1, n - 1)
           + q ** -1 * (1 - q ** m) * bd * (a + c) * X(m - 1, n - 1)
           - (1 - q ** m) * (q ** -1 * (1 + q ** m) * bd * (a + c)
                             + q ** -2 * abcd * (b + d)) * X(m - 1, n - 2)
           + (1 - q ** m) * q ** (m - 3) * a * c * (a + c) * bd * bd * X(m - 1, n - 4))
    return lhs - rhs


# ---------------------------------------------------------------------------
# Bracket helpers


def d_bracket(p: ParamPoint, N: int, r: int) -> Any:
    """``<W|d^N|V^r>``; zero for negative N."""
    if N < 0 or r < 0:
        return 0 * p.q
    ops = build_operators(p)
    p.ensure_horizon(N + r + 2)
    return eval_bra_word_ket([ops.d] * N, r, one=1 + 0 * p.q)


def Ad_bracket(p: ParamPoint, r: int, m: int) -> Any:
    """``<W|A^r d^m|V>``; zero for negative m."""
    if m < 0:
        return 0 * p.q
    ops = build_operators(p)
    p.ensure_horizon(2 * r + m + 2)
    return eval_bra_word_ket([ops.A] * r + [ops.d] * m, 0, one=1 + 0 * p.q)


def dA_series_bracket(p: ParamPoint, N: int, r: int) -> Any:
    """``[y^r] <W|(d + yA)^N|V>``."""
    from .ansatz import BandOperator
    ops = build_operators(p)
    p.ensure_horizon(2 * N + r + 2)

    def entry(i: int, j: int) -> SeriesY:
        return SeriesY([ops.d(i, j), ops.A(i, j)], r)

    op = BandOperator(2, 2, entry, "d+yA")
    return eval_bra_word_ket([op] * N, 0, one=SeriesY([1 + 0 * p.q], r)).coeff(r)


# ---------------------------------------------------------------------------
# Individual checks


def check_F(p: ParamPoint, m: int, rep: Report) -> None:
    rep.add("F_m explicit = F_m recurrence", F_explicit(p, m), F_recurrence(p, m), m=m)


def check_Ak_recurrence(p: ParamPoint, m: int, r: int, rep: Report) -> None:
    a, b, c, d, q = p.a, p.b, p.c, p.d, p.q
    den = 1 - p.abcd * q ** (m + 2 * r - 1)
    rhs = ((b + d - b * d * (a + c) * q ** (m + r - 1)) * Ad_bracket(p, r, m - 1)
           + (b * d * (q ** (m - 1) - 1) * Ad_bracket(p, r, m - 2) if m >= 2 else 0)) / den
    rep.add("<W|A^r d^m|V> three-term recurrence", Ad_bracket(p, r, m), rhs, m=m, r=r)


def check_Ad_ratio(p: ParamPoint, m: int, r: int, rep: Report) -> None:
    rep.add("<W|A^r d^m|V>/<W|A^r|V> = F_m(bd q^r)/prod(1-abcd q^(2r+i))",
            Ad_bracket(p, r, m) / Ad_bracket(p, r, 0), C_value(p, m, r), m=m, r=r)


def check_Ad_ratio_explicit(p: ParamPoint, m: int, r: int, rep: Report) -> None:
    den = 1 + 0 * p.q
    for i in range(m):
        den = den * (1 - p.abcd * p.q ** (2 * r + i))
    rep.add("<W|A^r d^m|V>/<W|A^r|V> via explicit F_m",
            Ad_bracket(p, r, m) / Ad_bracket(p, r, 0),
            F_explicit(p, m)(p.b * p.d * p.q ** r) / den, m=m, r=r)


def check_d_power_bracket(p: ParamPoint, N: int, r: int, rep: Report) -> None:
    lhs = d_bracket(p, N, r)
    norm = Ad_bracket(p, r, 0)
    rep.add("<W|d^N|V^r> = [y^r]<W|(d+yA)^N|V>/<W|A^r|V>", lhs,
            dA_series_bracket(p, N, r) / norm, N=N, r=r)
    rep.add("<W|d^N|V^r> = [N,r]_q <W|A^r d^(N-r)|V>/<W|A^r|V>", lhs,
            q_binomial(N, r, p.q) * Ad_bracket(p, r, N - r) / norm, N=N, r=r)


def check_border(p: ParamPoint, r: int, rep: Report, dim: int | None = None) -> None:
    ops = build_operators(p)
    dim = dim or r + 4
    b, d, q = p.b, p.d, p.q
    lhs = [ops.d(i, r) for i in range(dim)]
    rhs = []
    for i in range(dim):
        v = -b * d * q ** r * ops.e(i, r)
        if i == r - 1:
            v = v + (1 - q ** (2 * r - 1) * p.abcd)
        if i == r:
            v = v + R_r_scalar(p, r)
        rhs.append(v)
    rep.add("d|V^r> = (1-q^(2r-1)abcd)|V^(r-1)> - bd q^r e|V^r> + R_r|V^r>", lhs, rhs, r=r)
    if r >= 1 or not is_zero(q):
        rep.add("R_r closed form = general expression", R_r_scalar(p, r), R_r_general(p, r), r=r)


def check_dd_recurrence(p: ParamPoint, N: int, r: int, rep: Report) -> None:
    a, b, c, d, q = p.a, p.b, p.c, p.d, p.q
    lhs = (1 - p.abcd * q ** (r + N - 1)) * d_bracket(p, N, r)
    rhs = ((1 - q ** (2 * r - 1) * p.abcd) * d_bracket(p, N - 1, r - 1) if r >= 1 else 0) \
        - (b * d * q ** r * (1 - q ** (N - 1)) * d_bracket(p, N - 2, r) if N >= 2 else 0) \
        + (R_r_scalar(p, r) - b * d * q ** (r + N - 1) * (a + c)) * d_bracket(p, N - 1, r)
    rep.add("(1-abcd q^(r+N-1))<W|d^N|V^r> recurrence", lhs, rhs, N=N, r=r)


def check_explicit_d(p: ParamPoint, m: int, r: int, rep: Report) -> None:
    rep.add("<W|d^(m+r)|V^r> = [m+r,r]_q C(m,r)", d_bracket(p, m + r, r),
            q_binomial(m + r, r, p.q) * C_value(p, m, r), m=m, r=r)


def check_C_recurrence(p: ParamPoint, m: int, r: int, rep: Report) -> None:
    """Both forms of the C(m,r) / F_m(bd q^r) recurrence (r >= 1, m + r >= 1)."""
    a, b, c, d, q = p.a, p.b, p.c, p.d, p.q
    abcd = p.abcd
    s = 1 - q ** (m + r)
    A1 = (1 - q ** (2 * r - 1) * abcd) * (1 - q ** r) / s
    A2 = b * d * q ** r * (1 - q ** (m - 1)) * (1 - q ** m) / s
    A3 = (-b * d * (a + c) * q ** (m - 1 + 2 * r) + R_r_scalar(p, r)) * (1 - q ** m) / s
    lhs = (1 - abcd * q ** (2 * r + m - 1)) * C_value(p, m, r)
    rhs = A1 * C_value(p, m, r - 1) - A2 * C_value(p, m - 2, r) + A3 * C_value(p, m - 1, r)
    rep.add("C(m,r) recurrence", lhs, rhs, m=m, r=r)

    F = lambda k, rr: F_recurrence(p, k)(b * d * q ** rr)  # noqa: E731
    w = 1 - abcd * q ** (2 * r - 2)
    lhs2 = s * w * F(m, r)
    rhs2 = ((1 - q ** r) * (1 - abcd * q ** (2 * r + m - 2)) * F(m, r - 1)
            - b * d * q ** r * (1 - q ** (m - 1)) * (1 - q ** m) * w
            * (1 - abcd * q ** (2 * r + m - 2)) * F(m - 2, r)
            + (1 - q ** m) * (-b * d * (a + c) * q ** (2 * r + m - 1) + R_r_scalar(p, r)) * w
            * F(m - 1, r))
    rep.add("F_m(bd q^r) recurrence", lhs2, rhs2, m=m, r=r)


def F_scaled_sides(p: ParamPoint, m: int) -> tuple:
    """Both sides of the F_m(bdy) recurrence as polynomials in y."""
    a, b, c, d, q = p.a, p.b, p.c, p.d, p.q
    abcd = p.abcd
    bd = b * d
    y = Poly.x(Y)
    one = Poly.const(1, Y)
    Fm = scale_arg(F_recurrence(p, m), bd)
    lhs = (one - y * q ** m) * (one - y * y * (q ** -2 * abcd)) * Fm
    rhs = ((one - y * y * (q ** (m - 2) * abcd)) * (one - y) * scale_arg(F_recurrence(p, m), bd / q)
           - y * (bd * (1 - q ** m) * (1 - q ** (m - 1))) * (one - y * y * (abcd * q ** (m - 2)))
           * (one - y * y * (abcd * q ** -2)) * scale_arg(F_recurrence(p, m - 2), bd)
           + (1 - q ** m) * (y * (b + d + bd * (a + c) / q)
                             - y * y * ((1 + q ** m) * bd * (a + c) / q + (b + d) * abcd / q ** 2)
                             + y ** 4 * (q ** (m - 3) * abcd * bd * (a + c)))
           * scale_arg(F_recurrence(p, m - 1), bd))
    return lhs, rhs


def check_F_scaled(p: ParamPoint, m: int, rep: Report, ys: tuple = ()) -> None:
    _need_q_nonzero(p.q, "F_m(bdy) recurrence")
    lhs, rhs = F_scaled_sides(p, m)
    rep.add("F_m(bdy) recurrence (identity in y)", lhs, rhs, m=m)
    for yv in ys:
        rep.add("F_m(bdy) recurrence at y", lhs(yv), rhs(yv), m=m, y=yv)


def check_AB(p: ParamPoint, m: int, rep: Report) -> None:
    q = p.q
    b, d = MPoly.var(1), MPoly.var(3)
    a, c = MPoly.var(0), MPoly.var(2)
    rep.add("(b+d)B_m = B_{m+1} + (1-q^m) bd B_{m-1}", (b + d) * B_mpoly(m, q),
            B_mpoly(m + 1, q) + (1 - q ** m) * b * d * B_mpoly(m - 1, q), m=m)
    rep.add("(a+c)A_m = A_{m+1} + (1-q^-m) ac A_{m-1}", (a + c) * A_mpoly(m, q),
            A_mpoly(m + 1, q) + (1 - q ** -m) * a * c * A_mpoly(m - 1, q), m=m)


def check_binomial(m: int, rep: Report) -> None:
    """The three q-binomial identities as polynomial identities in a formal q
    (the two Pascal forms for m >= 1)."""
    q = Poly.x("q")
    for i in range(0, m + 1):
        if m >= 1:
            rep.add("[m,i] = [m-1,i] + q^(m-i)[m-1,i-1]", q_binomial(m, i, q),
                    q_binomial(m - 1, i, q) + q ** (m - i) * q_binomial(m - 1, i - 1, q),
                    m=m, i=i)
            rep.add("[m,i] = q^i [m-1,i] + [m-1,i-1]", q_binomial(m, i, q),
                    q ** i * q_binomial(m - 1, i, q) + q_binomial(m - 1, i - 1, q), m=m, i=i)
        rep.add("(1-q^m)[m-1,i] = (1-q^(m-i))[m,i]", (1 - q ** m) * q_binomial(m - 1, i, q),
                (1 - q ** (m - i)) * q_binomial(m, i, q), m=m, i=i)


def check_x_coeff(m: int, q: Any, rep: Report) -> None:
    """``x(m,n,i,j)`` against the expanded ``X_{m,n}``."""
    ok = True
    for n in range(m + 1):
        X = X_mpoly(m, n, q)
        seen = 0
        for i in range(m - n + 1):
            for j in range(n + 1):
                c = X.coeff(x_monomial(m, n, i, j))
                if c != x_coeff(m, n, i, j, q):
                    ok = False
                    rep.add("x(m,n,i,j) = coefficient in X_{m,n}", x_coeff(m, n, i, j, q), c,
                            m=m, n=n, i=i, j=j)
                if c:
                    seen += 1
        if seen != len(X.terms):
            ok = False
            rep.record("X_{m,n} has no monomials beyond a^j b^(n+i) c^(n-j) d^(m-i)", False,
                       m=m, n=n)
    if ok:
        rep.record("x(m,n,i,j) = coefficient in X_{m,n}", True, m=m)


def check_split_identities(m: int, q: Any, rep: Report) -> None:
    ok1 = ok2 = True
    for n in range(0, m + 6):
        for i in range(-1, m + 3):
            for j in range(-2, n + 3):
                v1 = split1_coefficient(m, n, i, j, q)
                if v1 != 0:
                    ok1 = False
                    rep.add("first split identity, coefficient form", v1, 0, m=m, n=n, i=i, j=j)
                v2 = split2_coefficient(m, n, i, j, q)
                if v2 != 0:
                    ok2 = False
                    rep.add("second split identity, coefficient form", v2, 0, m=m, n=n, i=i, j=j)
    if ok1:
        rep.record("first split identity, coefficient form", True, m=m)
    if ok2:
        rep.record("second split identity, coefficient form", True, m=m)
    for n in range(0, m + 6):
        rep.add("first split identity, expanded", split1_mpoly(m, n, q), MPoly(), m=m, n=n)
        rep.add("second split identity, expanded", split2_mpoly(m, n, q), MPoly(), m=m, n=n)
        rep.add("y^n coefficient of the F_m(bdy) recurrence", coeff_identity_mpoly(m, n, q),
                MPoly(), m=m, n=n)


def check_usw_uncancelled(p: ParamPoint, n_max: int, rep: Report) -> None:
    """Closed-form diagonal entries against the q^(n-1) prefactor form (q != 0)."""
    from .ansatz import nat_entry_uncancelled
    if is_zero(p.q):
        return
    for n in range(n_max + 1):
        e = usw_entries(p, n)
        rep.add("d_n diagonal = q^(n-1) prefactor form", e.d_nat,
                nat_entry_uncancelled(n, p.q, p.b, p.d, p.a, p.c), n=n)
        rep.add("e_n diagonal = q^(n-1) prefactor form", e.e_nat,
                nat_entry_uncancelled(n, p.q, p.a, p.c, p.b, p.d), n=n)


# ---------------------------------------------------------------------------
# Bundle


DEFAULT_BOUNDS = {"F_m": 8, "Ak_m": 6, "Ak_r": 3, "N": 8, "coeff_m": 5, "AB_m": 6,
                  "binomial_m": 8, "border_r": 5, "F_scaled_m": 8}


def verify_f_identities(p: ParamPoint, bounds: dict | None = None, *, ys: tuple = ()) -> Report:
    b = dict(DEFAULT_BOUNDS)
    b.update(bounds or {})
    _need_q_nonzero(p.q, "these identities")
    rep = Report("f-identities")
    for m in range(b["F_m"] + 1):
        check_F(p, m, rep)
    for r in range(b["Ak_r"] + 1):
        for m in range(1, b["Ak_m"] + 1):
            check_Ak_recurrence(p, m, r, rep)
        for m in range(b["Ak_m"] + 1):
            check_Ad_ratio(p, m, r, rep)
            check_Ad_ratio_explicit(p, m, r, rep)
    for N in range(b["N"] + 1):
        for r in range(N + 1):
            check_d_power_bracket(p, N, r, rep)
            check_explicit_d(p, N - r, r, rep)
            if N >= 1:
                check_dd_recurrence(p, N, r, rep)
            if r >= 1:
                check_C_recurrence(p, N - r, r, rep)
    for r in range(b["border_r"] + 1):
        check_border(p, r, rep)
    for m in range(b["F_scaled_m"] + 1):
        check_F_scaled(p, m, rep, ys)
    for m in range(b["AB_m"] + 1):
        check_AB(p, m, rep)
    for m in range(b["binomial_m"] + 1):
        check_binomial(m, rep)
    for m in range(b["coeff_m"] + 1):
        check_x_coeff(m, p.q, rep)
        check_split_identities(m, p.q, rep)
    check_usw_uncancelled(p, 6, rep)
    return rep
