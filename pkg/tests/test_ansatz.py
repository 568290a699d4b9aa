import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from koornwinder_asep.ansatz import (BandOperator, ParamPoint, _nat_entry, boundary_params_from_rates,
                                     build_operators, check_ansatz_relations, check_rate_roots,
                                     default_dimension, eval_bra_word_ket, nat_entry_uncancelled,
                                     random_points, usw_entries)
from koornwinder_asep.exact import DegenerateParameterError
from koornwinder_asep.moments import Z


def test_relations_hold_on_interior_blocks(points):
    for p in points:
        rep = check_ansatz_relations(p, 10)
        assert rep.ok, [c.line() for c in rep.failures]


def test_diagonal_cancelled_form_matches_uncancelled_form(points):
    for p in points:
        for n in range(5):
            assert _nat_entry(n, p.q, p.b, p.d, p.a, p.c) == \
                nat_entry_uncancelled(n, p.q, p.b, p.d, p.a, p.c)
            assert _nat_entry(n, p.q, p.a, p.c, p.b, p.d) == \
                nat_entry_uncancelled(n, p.q, p.a, p.c, p.b, p.d)


def test_zero_diagonal_entry_at_tasep_point():
    p = ParamPoint(0, 0, 0, 0, 0)
    e = usw_entries(p, 0)
    assert e.d_nat == 0 and e.e_nat == 0


def test_degenerate_points_raise():
    with pytest.raises(DegenerateParameterError):
        ParamPoint(Fraction(1, 2), 0, 0, 0, 1)
    with pytest.raises(DegenerateParameterError) as info:
        ParamPoint(1, Fraction(1, 3), -1, 0, Fraction(1, 2))
    assert "1+ac+a+c" in info.value.denominator


def test_horizon_extension_detects_poles():
    # abcd q^k = 1 first happens at k = 2 with abcd = 4, q = 1/2
    p = ParamPoint(2, 2, 1, 1, Fraction(1, 2), horizon=0)
    with pytest.raises(DegenerateParameterError):
        p.ensure_horizon(3)


def test_rate_inversion_round_trip(points):
    for p in points:
        assert check_rate_roots(p)
        try:
            a, b, c, d = boundary_params_from_rates(*p.rates, p.q)
        except ValueError:
            continue
        assert {a, c} == {p.a, p.c} and {b, d} == {p.b, p.d}


def test_rate_inversion_of_tasep_rates():
    a, b, c, d = boundary_params_from_rates(Fraction(1), Fraction(1), Fraction(0), Fraction(0),
                                            Fraction(0))
    assert (a, b, c, d) == (0, 0, 0, 0)


def test_tasep_partition_functions_are_catalan_numbers():
    p = ParamPoint(0, 0, 0, 0, 0)
    assert [Z(p, n)(1) for n in range(7)] == [sympy.catalan(n + 1) for n in range(7)]


@given(st.integers(0, 10**6), st.integers(1, 7), st.integers(0, 3))
def test_truncation_is_stable(seed, n, r):
    p = random_points(seed % 97, 1)[0]
    ops = build_operators(p)
    rng = random.Random(seed)
    word = [ops.letter(rng.choice("DEA")) for _ in range(n)]
    p.ensure_horizon(2 * n + r + 8)
    base = default_dimension(word, r)
    v = eval_bra_word_ket(word, r)
    assert eval_bra_word_ket(word, r, dim=base + 3) == v
    assert eval_bra_word_ket(word, r, dim=base + 5) == v


def test_band_product_matches_dense_product(point):
    ops = build_operators(point)
    prod = ops.D @ ops.E
    dim = 8
    D, E = ops.D.truncate(dim + 2), ops.E.truncate(dim + 2)
    for i in range(dim):
        for j in range(dim):
            assert prod(i, j) == sum(D[i][k] * E[k][j] for k in range(dim + 2))


def test_band_operator_outside_band_is_zero():
    op = BandOperator(1, 1, lambda i, j: 7)
    assert op(0, 2) == 0 and op(3, 1) == 0 and op(-1, 0) == 0
    assert op(2, 3) == 7
