from fractions import Fraction
from math import comb

import pytest
import sympy

from koornwinder_asep.ansatz import ParamPoint
from koornwinder_asep.exact import DegenerateParameterError
from koornwinder_asep.multipoly import MPoly
from koornwinder_asep.report import Report
from koornwinder_asep.f_identities import (A_mpoly, B_mpoly, F_explicit, F_recurrence, R_r_general,
                                       R_r_scalar, X_mpoly, check_binomial, split1_coefficient,
                                       split2_coefficient, verify_f_identities, x_coeff, x_monomial)

a, b, c, d, Q = sympy.symbols("a b c d q")


def sym_qbinom(n, k, q):
    if k < 0 or k > n:
        return 0
    num = sympy.prod([1 - q ** (n - i) for i in range(k)])
    den = sympy.prod([1 - q ** (i + 1) for i in range(k)])
    return sympy.cancel(sympy.S(num) / den)


def sym_X(m, n, q):
    A = sum(sym_qbinom(n, i, 1 / q) * a ** i * c ** (n - i) for i in range(n + 1))
    B = sum(sym_qbinom(m - n, i, q) * b ** i * d ** (m - n - i) for i in range(m - n + 1))
    return sympy.expand((-1) ** n * sym_qbinom(m, n, q) * q ** comb(n, 2) * (b * d) ** n * A * B)


def to_sympy(poly: MPoly):
    return sum(sympy.Rational(cf.numerator, cf.denominator) * a ** e[0] * b ** e[1] * c ** e[2]
               * d ** e[3] for e, cf in poly.terms.items())


@pytest.mark.parametrize("m", range(5))
def test_X_expansion_matches_sympy(m):
    q = Fraction(2, 3)
    qs = sympy.Rational(2, 3)
    for n in range(m + 1):
        assert sympy.expand(to_sympy(X_mpoly(m, n, q)) - sym_X(m, n, qs)) == 0


@pytest.mark.parametrize("m", range(5))
def test_x_coefficient_matches_sympy_expansion(m):
    # the monomial carries d^(m-i); the coefficient formula is checked against it
    q = Fraction(2, 3)
    qs = sympy.Rational(2, 3)
    for n in range(m + 1):
        poly = sympy.Poly(sym_X(m, n, qs), a, b, c, d)
        total = 0
        for i in range(m - n + 1):
            for j in range(n + 1):
                e = x_monomial(m, n, i, j)
                assert e == (j, n + i, n - j, m - i)
                got = poly.coeff_monomial(a ** e[0] * b ** e[1] * c ** e[2] * d ** e[3])
                assert Fraction(str(got)) == x_coeff(m, n, i, j, q)
                total += 1
        assert len(poly.terms()) == total


@pytest.mark.parametrize("m", range(6))
def test_AB_recurrences_match_sympy(m):
    q = Fraction(3, 5)
    qs = sympy.Rational(3, 5)
    Bm = lambda k: sum(sym_qbinom(k, i, qs) * b ** i * d ** (k - i) for i in range(k + 1)) \
        if k >= 0 else 0  # noqa: E731
    Am = lambda k: sum(sym_qbinom(k, i, 1 / qs) * a ** i * c ** (k - i) for i in range(k + 1)) \
        if k >= 0 else 0  # noqa: E731
    assert sympy.expand((b + d) * Bm(m) - Bm(m + 1) - (1 - qs ** m) * b * d * Bm(m - 1)) == 0
    assert sympy.expand((a + c) * Am(m) - Am(m + 1) - (1 - qs ** -m) * a * c * Am(m - 1)) == 0
    assert sympy.expand(to_sympy(B_mpoly(m, q)) - Bm(m)) == 0
    assert sympy.expand(to_sympy(A_mpoly(m, q)) - Am(m)) == 0


def test_coefficient_identities_vanish():
    q = Fraction(-2, 7)
    for m in range(5):
        for n in range(m + 4):
            for i in range(-1, m + 2):
                for j in range(-1, n + 2):
                    assert split1_coefficient(m, n, i, j, q) == 0
                    assert split2_coefficient(m, n, i, j, q) == 0


def test_q_binomial_identities():
    rep = Report("binomial")
    for m in range(7):
        check_binomial(m, rep)
    assert rep.ok


def test_F_forms_agree(point):
    for m in range(7):
        assert F_explicit(point, m) == F_recurrence(point, m)


def test_border_constant(point):
    assert R_r_scalar(point, 0) == point.b + point.d
    for r in range(1, 4):
        assert R_r_scalar(point, r) == R_r_general(point, r)


def test_f_identity_bundle(point):
    rep = verify_f_identities(point, {"F_m": 5, "Ak_m": 4, "Ak_r": 2, "N": 5, "coeff_m": 3,
                                  "AB_m": 4, "binomial_m": 5, "border_r": 3, "F_scaled_m": 5})
    assert rep.ok, [ch.line() for ch in rep.failures][:5]


def test_f_identities_need_nonzero_q():
    p = ParamPoint(Fraction(1, 2), Fraction(1, 3), Fraction(1, 5), Fraction(1, 7), 0)
    with pytest.raises(DegenerateParameterError):
        verify_f_identities(p)
