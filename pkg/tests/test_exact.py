from fractions import Fraction
from math import comb

import pytest
import sympy
from hypothesis import given, strategies as st

from koornwinder_asep.exact import (DegenerateParameterError, GaussianRational, InexactDivisionError,
                                    Poly, SeriesY, det_bareiss, det_cofactor, det_permutations,
                                    exact_determinant, poly_from_json, poly_to_json, q_binomial,
                                    q_int, scalar_from_json, scalar_to_json)

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=12)
gaussians = st.builds(GaussianRational, rationals, rationals)
polys = st.lists(rationals, max_size=5).map(Poly)


@given(gaussians, gaussians, gaussians)
def test_gaussian_field_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    if x != 0:
        assert x * x.inverse() == 1
        assert (y / x) * x == y


@given(gaussians)
def test_gaussian_norm_is_product_with_conjugate(x):
    assert x * x.conjugate() == GaussianRational(x.norm())


def test_gaussian_i_squared():
    i = GaussianRational(0, 1)
    assert i * i == -1
    assert (1 / i) == -i


@given(polys, polys, polys)
def test_poly_ring_axioms(f, g, h):
    assert (f + g) * h == f * h + g * h
    assert f * g == g * f
    assert (f - f).degree == -1


@given(polys, polys)
def test_poly_divmod(f, g):
    if g.degree < 0:
        return
    quo, rem = f.divmod(g)
    assert quo * g + rem == f
    assert rem.degree < g.degree


def test_poly_exact_div_raises_on_remainder():
    x = Poly.x()
    with pytest.raises(InexactDivisionError):
        (x * x + 1).exact_div(x)


def test_poly_int_coefficients_stay_exact():
    assert Poly([1, 2]).coeffs == (Fraction(1), Fraction(2))
    assert (Poly([1]) / 3).coeffs == (Fraction(1, 3),)


@given(polys, rationals)
def test_poly_evaluation_is_a_homomorphism(f, v):
    g = f * f + f
    assert g(v) == f(v) ** 2 + f(v)


def test_series_truncation():
    y = SeriesY.y(2)
    s = (1 + y) * (1 + y) * (1 + y)
    assert [s.coeff(k) for k in range(3)] == [1, 3, 3]
    with pytest.raises(ValueError):
        s.coeff(3)


@given(st.integers(0, 9), st.integers(0, 9))
def test_q_binomial_at_one_is_binomial(n, k):
    assert q_binomial(n, k, Fraction(1)) == comb(n, k)


@given(st.integers(0, 7), st.integers(0, 7))
def test_q_binomial_matches_sympy_product_formula(n, k):
    q = sympy.Symbol("q")
    if k > n:
        assert q_binomial(n, k, Poly.x("q")) == Poly()
        return
    num = sympy.prod([1 - q ** (n - i) for i in range(k)])
    den = sympy.prod([1 - q ** (i + 1) for i in range(k)])
    expected = sympy.Poly(sympy.cancel(sympy.S(num) / den), q).all_coeffs()[::-1]
    got = q_binomial(n, k, Poly.x("q"))
    assert list(got.coeffs) == [Fraction(int(c)) for c in expected]


def test_q_binomial_inverse_base():
    q = Fraction(1, 3)
    assert q_binomial(4, 2, q, inverse_base=True) == q_binomial(4, 2, 1 / q)
    with pytest.raises(DegenerateParameterError):
        q_binomial(3, 1, Fraction(0), inverse_base=True)


def test_q_int():
    assert q_int(0, Fraction(1, 2)) == 0
    assert q_int(3, Fraction(1, 2)) == Fraction(7, 4)


square = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(rationals, min_size=n, max_size=n), min_size=n, max_size=n))


@given(square)
def test_determinants_agree_with_permutation_expansion(m):
    ref = det_permutations(m)
    assert det_bareiss(m) == ref
    assert exact_determinant(m) == ref
    if len(m) <= 4:
        assert det_cofactor(m) == ref


@given(st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(polys, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_polynomial_determinants(m):
    assert exact_determinant(m) == det_permutations(m)
    assert det_bareiss(m) == det_permutations(m)


def test_determinant_matches_sympy():
    m = [[Fraction(i * i - j, 1 + i + j) for j in range(5)] for i in range(5)]
    assert exact_determinant(m) == Fraction(str(sympy.Matrix(m).det()))


@given(rationals, rationals)
def test_json_round_trip(re, im):
    assert scalar_from_json(scalar_to_json(re)) == re
    g = GaussianRational(re, im)
    assert scalar_from_json(scalar_to_json(g)) == g
    f = Poly([re, im, 1], "q")
    assert poly_from_json(poly_to_json(f)) == f
