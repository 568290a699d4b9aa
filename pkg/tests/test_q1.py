import random
from fractions import Fraction
from math import comb

import pytest
import sympy

from koornwinder_asep.exact import DegenerateParameterError
from koornwinder_asep.moments import partitions_in_box
from koornwinder_asep.q1 import (K_det_q1, K_hook, K_unit_S_poly, Q1Params, Z2_q1, Z_q1,
                                 check_c_entries, hook_lengths, normalized_K_mpoly, positivity_q1,
                                 hook_K_value, random_q1_params, verify_normalized_K,
                                 verify_padded_column_recurrence, verify_q1_recurrences)
from koornwinder_asep.report import Report


@pytest.fixture(scope="module")
def qpoints():
    rng = random.Random(5)
    return [random_q1_params(rng) for _ in range(3)]


def test_S_and_x():
    p = Q1Params(Fraction(1, 2), Fraction(1, 2), Fraction(1, 8), Fraction(1, 8))
    assert p.S == Fraction(5, 3) and p.x == Fraction(16, 5)
    assert K_hook(p, (1,)) == p.S * p.x


def test_degenerate_rates():
    with pytest.raises(DegenerateParameterError):
        Q1Params(1, 1, 1, 1)


def test_hook_lengths():
    assert hook_lengths((3, 1)) == [[4, 2, 1], [1]]
    assert hook_lengths(()) == []


def test_z_at_unit_S_is_rising_factorial():
    x = sympy.Symbol("x")
    for N in range(7):
        expected = sympy.Poly(sympy.rf(x, N), x).all_coeffs()[::-1]
        got = K_unit_S_poly((N,))
        assert list(got.coeffs) == [Fraction(int(c)) for c in expected]


def test_matrix_entries(qpoints):
    for p in qpoints:
        assert check_c_entries(p).ok


def test_hook_formula_equals_hankel_determinant(qpoints):
    for p in qpoints:
        for length in range(1, 4):
            for lam in partitions_in_box(3, length):
                assert K_hook(p, lam) == K_det_q1(p, lam)


def test_hook_K_and_two_species(qpoints):
    p = qpoints[0]
    for N in range(6):
        for r in range(N + 1):
            assert hook_K_value(p, N, r) == K_det_q1(p, (N - r,) + (0,) * r) == Z2_q1(p, N, r)
    assert Z_q1(p, 0) == 1


def test_shape_recurrences(qpoints):
    rep = verify_q1_recurrences(qpoints[0], {"box": 3, "length": 2, "N": 4})
    assert rep.ok, [c.line() for c in rep.failures][:5]


def test_recurrence_needs_S_power(qpoints):
    for p in qpoints:
        assert p.S != 1
        assert not verify_padded_column_recurrence(p, 2, 2, 1).ok
        assert verify_padded_column_recurrence(p, 2, 2, 1, with_S=True).ok


def test_recurrence_without_S_holds_when_S_is_one():
    # alpha beta - gamma delta = (alpha+gamma)(beta+delta) gives S = 1
    p = Q1Params(Fraction(1), Fraction(1), Fraction(-1, 4), Fraction(1, 2))
    assert p.S == 1
    assert verify_padded_column_recurrence(p, 2, 2, 1).ok


def test_positivity():
    rep = Report("positivity")
    for length in range(1, 4):
        for lam in partitions_in_box(3, length):
            positivity_q1(lam, rep)
    assert rep.ok


def test_normalized_polynomial_matches_sympy():
    al, be, ga, de = sympy.symbols("alpha beta gamma delta")
    lam = (2, 1)
    P = (al + ga) * (be + de)
    sigma = al + be + ga + de
    x = sigma / P
    S = P / (al * be - ga * de)
    Kh = S ** 3
    for row in hook_lengths(lam):
        for h in row:
            Kh *= x + h - 1
    Kh *= (x + 1) * 2 / (x * 1)
    expected = sympy.expand(sympy.cancel(Kh * (al * be - ga * de) ** 3))
    got = sum(sympy.Rational(c.numerator, c.denominator) * al ** e[0] * be ** e[1] * ga ** e[2]
              * de ** e[3] for e, c in normalized_K_mpoly(lam).terms.items())
    assert sympy.expand(got - expected) == 0


def test_normalized_polynomial_evaluates_to_K(qpoints):
    rep = Report("n")
    for lam in [(1,), (2, 1), (2, 2), (3, 1, 1)]:
        verify_normalized_K(qpoints[1], lam, rep)
    assert rep.ok
