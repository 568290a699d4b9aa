"""Koornwinder moments at q = xi = 1.

Everything here works with the rational tridiagonal matrix C
(``c_{i,i+1} = 1``, ``c_{ii} = S(x+2i)``, ``c_{i,i-1} = S^2 i (x-1+i)``); the
square-root entries of the underlying D and E never appear.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Any, Sequence

from .ansatz import BandOperator, eval_bra_word_ket
from .exact import DegenerateParameterError, Poly, is_zero
from .moments import as_partition, hankel_quotient, hook_shape, partitions_in_box
from .multipoly import MPoly
from .report import Report


@dataclass(frozen=True)
class Q1Params:
    alpha: Fraction
    beta: Fraction
    gamma: Fraction
    delta: Fraction

    def __post_init__(self) -> None:
        for k in ("alpha", "beta", "gamma", "delta"):
            object.__setattr__(self, k, Fraction(getattr(self, k)))
        if is_zero((self.alpha + self.gamma) * (self.beta + self.delta)):
            raise DegenerateParameterError("(alpha+gamma)(beta+delta) = 0",
                                           "(alpha+gamma)(beta+delta)")
        if is_zero(self.alpha * self.beta - self.gamma * self.delta):
            raise DegenerateParameterError("alpha beta = gamma delta", "alpha*beta-gamma*delta")

    @property
    def S(self) -> Fraction:
        return ((self.alpha + self.gamma) * (self.beta + self.delta)
                / (self.alpha * self.beta - self.gamma * self.delta))

    @property
    def x(self) -> Fraction:
        return ((self.alpha + self.beta + self.gamma + self.delta)
                / ((self.alpha + self.gamma) * (self.beta + self.delta)))


def random_q1_params(rng: random.Random, max_den: int = 9) -> Q1Params:
    """Seeded positive rates in (0, 1]."""
    while True:
        vals = [Fraction(rng.randint(1, max_den), max_den) for _ in range(4)]
        try:
            return Q1Params(*vals)
        except DegenerateParameterError:
            continue


def c_matrix_q1(p: Q1Params) -> BandOperator:
    S, x = p.S, p.x

    def entry(i: int, j: int) -> Fraction:
        if j == i + 1:
            return Fraction(1)
        if i == j:
            return S * (x + 2 * i)
        return S * S * i * (x - 1 + i)

    return BandOperator(1, 1, entry, "C(q=1)")


def check_c_entries(p: Q1Params, n_max: int = 6) -> Report:
    """Rebuild the C entries from the diagonal and paired off-diagonal entries of D, E.

    The off-diagonal entries of D and E share the factor ``sqrt((n+1)(x+n))``;
    their paired product is rational and equals ``(n+1)(x+n)`` times the
    rational prefactors.
    """
    al, be, ga, de = p.alpha, p.beta, p.gamma, p.delta
    S, x = p.S, p.x
    c = c_matrix_q1(p)
    P = (al + ga) * (be + de)
    rep = Report("q1-matrix")
    for n in range(n_max + 1):
        Dn = (al + de + n * (al * be + 2 * al * de + ga * de)) / P
        En = (be + ga + n * (al * be + 2 * be * ga + ga * de)) / P
        rep.add("c_nn = S(D_n + E_n) diagonal", c(n, n), S * (Dn + En), n=n)
        sharp = al / (al + ga) + ga / (al + ga)
        flat = de / (be + de) + be / (be + de)
        rep.add("c_{n+1,n} = S^2 (D+E)_flat (D+E)_sharp", c(n + 1, n),
                S * S * flat * sharp * (n + 1) * (x + n), n=n)
    return rep


def Z_q1(p: Q1Params, N: int) -> Fraction:
    return eval_bra_word_ket([c_matrix_q1(p)] * N, 0, one=Fraction(1))


def Z_q1_sequence(p: Q1Params, n_max: int) -> list[Fraction]:
    c = c_matrix_q1(p)
    row = {0: Fraction(1)}
    out = [Fraction(1)]
    from .ansatz import _row_times
    for _ in range(n_max):
        row = _row_times(row, c, n_max + 3)
        out.append(row.get(0, Fraction(0)))
    return out


def hook_lengths(lam: Sequence[int]) -> list[list[int]]:
    lam = as_partition(lam)
    conj = [sum(1 for part in lam if part > j) for j in range(lam[0] if lam else 0)]
    return [[lam[i] - j + conj[j] - i - 1 for j in range(lam[i])] for i in range(len(lam))]


def K_hook(p: Q1Params, lam: Sequence[int]) -> Fraction:
    """Hook-length product; the pair product is empty (= 1) for a single part."""
    lam = as_partition(lam)
    S, x = p.S, p.x
    n = len(lam)
    out = S ** sum(lam)
    for row in hook_lengths(lam):
        for h in row:
            out *= x + h - 1
    for i in range(n - 1):
        for j in range(i + 1, n):
            den = (x + j - i - 1) * (j - i)
            if is_zero(den):
                raise DegenerateParameterError("pole in the pair product", f"x+{j - i - 1}")
            out *= (x + lam[i] - lam[j] + j - i - 1) * (lam[i] - lam[j] + j - i) / den
    return out


def K_det_q1(p: Q1Params, lam: Sequence[int]) -> Fraction:
    lam = as_partition(lam)
    if not lam:
        return Fraction(1)
    return hankel_quotient(Z_q1_sequence(p, lam[0] + 2 * len(lam) - 2), lam, one=Fraction(1))


def Z2_q1(p: Q1Params, N: int, r: int) -> Fraction:
    """``C(N,r) Z_N / Z_r``."""
    zr = Z_q1(p, r)
    if is_zero(zr):
        raise DegenerateParameterError("Z_r vanishes", f"Z_{r}")
    return comb(N, r) * Z_q1(p, N) / zr


def hook_K_value(p: Q1Params, N: int, r: int) -> Fraction:
    out = p.S ** (N - r) * comb(N, r)
    for i in range(r, N):
        out *= p.x + i
    return out


def hook_K_rates_form(p: Q1Params, N: int, r: int) -> Fraction:
    al, be, ga, de = p.alpha, p.beta, p.gamma, p.delta
    out = Fraction(comb(N, r)) / (al * be - ga * de) ** (N - r)
    for i in range(r, N):
        out *= al + be + ga + de + i * (al + ga) * (be + de)
    return out


def append_zero_factor(p: Q1Params, lam: Sequence[int]) -> Fraction:
    x = p.x
    m = len(lam)
    out = Fraction(1)
    for i in range(1, m + 1):
        li = lam[i - 1]
        out *= (x + li + m - i) * (li + m - i + 1) / ((x + i - 1) * i)
    return out


def add_column_factor(p: Q1Params, lam: Sequence[int]) -> Fraction:
    x = p.x
    n = len(lam)
    out = p.S ** n
    for i in range(1, n + 1):
        out *= x + lam[i - 1] + n - i
    return out


def padded_column_factor(p: Q1Params, lam: Sequence[int], r: int, *,
                           with_S: bool = False) -> Fraction:
    """Ratio ``K_nu / K_lam`` for ``nu = (lam + 1, 0^r)``, ``lam`` given without its zeros.

    ``with_S=False`` omits the S^m factor; ``with_S=True`` adds the
    ``S^m`` that the shift-by-one relation contributes.
    """
    x = p.x
    m = len(lam)
    out = p.S ** m if with_S else Fraction(1)
    for i in range(1, m + 1):
        li = lam[i - 1]
        out *= Fraction(li + m + r + 1 - i, li + m + 1 - i) * (x + li + m + r - i)
    return out


# ---------------------------------------------------------------------------
# Checks


def verify_hook(p: Q1Params, lam: Sequence[int], rep: Report) -> None:
    rep.add("hook-length product = Hankel quotient", K_hook(p, lam), K_det_q1(p, lam),
            partition=tuple(lam))


def verify_q1_recurrences(p: Q1Params, bounds: dict | None = None) -> Report:
    b = {"box": 4, "length": 3, "N": 6}
    b.update(bounds or {})
    rep = Report("q1")
    rep.extend(check_c_entries(p))
    c = c_matrix_q1(p)
    from .motzkin import path_gf
    for N in range(9):
        rep.add("Z_N = <W|C^N|V> = path GF", Z_q1(p, N), path_gf(c, N, 0), N=N)
    for N in range(b["N"] + 1):
        for r in range(N + 1):
            k = K_det_q1(p, hook_shape(N, r))
            rep.add("K_(N-r,0^r) = S^(N-r) C(N,r) prod_{i=r}^{N-1} (x+i)", k,
                    hook_K_value(p, N, r), N=N, r=r)
            rep.add("K_(N-r,0^r) in rates form", k, hook_K_rates_form(p, N, r), N=N, r=r)
            rep.add("K_(N-r,0^r) = Z_{N,r} = C(N,r) Z_N / Z_r", k, Z2_q1(p, N, r), N=N, r=r)
    for length in range(1, b["length"] + 1):
        for lam in partitions_in_box(b["box"], length):
            k = K_det_q1(p, lam)
            nu = lam + (0,)
            if sum(nu) + 2 * len(nu) <= 16:
                rep.add("K_(lam,0) = K_lam prod (x+lam_i+m-i)(lam_i+m-i+1)/((x+i-1) i)",
                        K_det_q1(p, nu), k * append_zero_factor(p, lam), partition=lam)
            rep.add("K_(lam+1) = K_lam S^n prod (x+lam_i+n-i)",
                    K_det_q1(p, tuple(v + 1 for v in lam)), k * add_column_factor(p, lam),
                    partition=lam)
    return rep


def verify_padded_column_recurrence(p: Q1Params, max_part: int = 3, max_m: int = 2, max_r: int = 2, *,
                           with_S: bool = False) -> Report:
    name = "padded-column-recurrence" + ("-with-S" if with_S else "")
    rep = Report(name)
    label = ("K_(lam+1,0^r) = K_(lam,0^r) S^m prod ..." if with_S
             else "K_(lam+1,0^r) = K_(lam,0^r) prod (lam_i+m+r+1-i)/(lam_i+m+1-i) (x+lam_i+m+r-i)")
    for m in range(1, max_m + 1):
        for lam in partitions_in_box(max_part, m):
            for r in range(max_r + 1):
                z = (0,) * r
                lhs = K_det_q1(p, tuple(v + 1 for v in lam) + z)
                rhs = K_det_q1(p, lam + z) * padded_column_factor(p, lam, r, with_S=with_S)
                rep.add(label, lhs, rhs, partition=lam, r=r)
    return rep


# ---------------------------------------------------------------------------
# Positivity


def K_unit_S_poly(lam: Sequence[int]) -> Poly:
    """``K_lam`` at ``S = 1`` as a polynomial in ``x``.

    At ``S = 1`` one has ``Z_N = x (x+1) ... (x+N-1)``; the Hankel quotient is
    then an exact polynomial division.
    """
    lam = as_partition(lam)
    if not lam:
        return Poly.const(1, "x")
    x = Poly.x("x")
    top = lam[0] + 2 * len(lam) - 2
    seq = [Poly.const(1, "x")]
    for n in range(top):
        seq.append(seq[-1] * (x + n))
    return hankel_quotient(seq, lam, one=Poly.const(1, "x"))


def normalized_K_mpoly(lam: Sequence[int]) -> MPoly:
    """``K_lam (alpha beta - gamma delta)^|lam|`` as a polynomial in alpha, beta, gamma, delta.

    Homogeneity ``K_lam = S^|lam| f(x)`` with ``f`` a polynomial of degree at
    most ``|lam|`` gives ``sum_k f_k sigma^k P^(|lam|-k)`` where
    ``sigma = alpha+beta+gamma+delta`` and ``P = (alpha+gamma)(beta+delta)``.
    """
    lam = as_partition(lam)
    f = K_unit_S_poly(lam)
    size = sum(lam)
    if f.degree > size:
        raise ArithmeticError("K_lam at S=1 has degree above |lam|")
    al, be, ga, de = (MPoly.var(k) for k in range(4))
    sigma = al + be + ga + de
    P = (al + ga) * (be + de)
    out = MPoly()
    for k, fk in enumerate(f.coeffs):
        out = out + fk * sigma ** k * P ** (size - k)
    return out


def positivity_q1(lam: Sequence[int], rep: Report | None = None) -> Report:
    rep = rep if rep is not None else Report("positivity")
    poly = normalized_K_mpoly(lam)
    neg = [c for c in poly.terms.values() if c < 0]
    rep.record("K_lam (alpha beta - gamma delta)^|lam| has nonnegative coefficients",
               not neg and not poly.is_zero(), partition=tuple(lam),
               note="normalizing factor (alpha beta - gamma delta)^|lam|; no further clearing")
    return rep


def positivity_box(max_part: int = 3, max_len: int = 3) -> Report:
    rep = Report("positivity")
    for length in range(1, max_len + 1):
        for lam in partitions_in_box(max_part, length):
            positivity_q1(lam, rep)
    return rep


def verify_normalized_K(p: Q1Params, lam: Sequence[int], rep: Report) -> None:
    """The expanded polynomial evaluated at the rates matches the determinant."""
    poly = normalized_K_mpoly(lam)
    rep.add("normalized polynomial at rates = K_lam (alpha beta - gamma delta)^|lam|",
            poly(p.alpha, p.beta, p.gamma, p.delta),
            K_det_q1(p, lam) * (p.alpha * p.beta - p.gamma * p.delta) ** sum(lam),
            partition=tuple(lam))
