import math
from fractions import Fraction
from math import comb

import pytest

from koornwinder_asep.ansatz import ParamPoint, build_operators, eval_bra_word_ket
from koornwinder_asep.chains import (Rates, ansatz_weights, build_chain, check_chain, check_stationary,
                                     chi_square, display_state, enumerate_states, same_seed_identical,
                                     simulate, solve_exact, state_word, stationary, total_variation,
                                     verify_stationary_ansatz)
from koornwinder_asep.report import Report

F = Fraction
RATES = Rates(F(1, 2), F(1, 3), F(1, 5), F(1, 7), F(1, 4))


def test_single_site_transitions():
    c = build_chain(1, 0, RATES)
    al, be, ga, de = RATES.alpha, RATES.beta, RATES.gamma, RATES.delta
    assert c.states == ["0", "2"]
    assert c.P["0"]["2"] == (al + de) / 2
    assert c.P["2"]["0"] == (be + ga) / 2


def test_state_spaces():
    assert enumerate_states(2, 1) == ["01", "10", "12", "21"]
    assert len(enumerate_states(3, 1)) == 12
    for N in range(1, 6):
        for r in range(N + 1):
            assert len(enumerate_states(N, r)) == comb(N, r) * 2 ** (N - r)


def test_chain_structure():
    for N in range(1, 5):
        for r in range(N + 1):
            assert check_chain(build_chain(N, r, RATES)).ok


def test_bulk_rates_on_a_pair():
    c = build_chain(2, 1, RATES)
    assert c.P["21"]["12"] == F(1, 3)
    assert c.P["12"]["21"] == RATES.q / 3
    assert c.P["10"]["01"] == F(1, 3)
    assert c.P["12"]["10"] == RATES.beta / 3
    assert "01" not in c.P["12"]


def test_single_site_stationary():
    pi = stationary(build_chain(1, 0, RATES))
    al, be, ga, de = RATES.alpha, RATES.beta, RATES.gamma, RATES.delta
    assert pi["2"] == (al + de) / (al + be + ga + de)


def test_single_light_particle():
    assert stationary(build_chain(1, 1, RATES)) == {"1": 1}


def test_tasep_two_sites_has_denominator_five():
    pi = stationary(build_chain(2, 0, Rates(1, 1, 0, 0, 0)))
    assert pi == {"00": F(1, 5), "02": F(1, 5), "20": F(2, 5), "22": F(1, 5)}


def test_stationary_is_fixed(points):
    rep = Report("fixed")
    c = build_chain(3, 1, RATES)
    check_stationary(c, stationary(c), rep)
    assert rep.ok


def test_singular_system_raises():
    with pytest.raises(ArithmeticError):
        solve_exact([[F(1), F(1)], [F(2), F(2)]], [F(0), F(1)])


def test_reducible_chain_raises():
    # no boundary moves at all: the particle number is conserved
    with pytest.raises(ArithmeticError):
        stationary(build_chain(2, 0, Rates(0, 0, 0, 0, F(1, 2))))


def test_ansatz_weight_examples(point):
    ops = build_operators(point)
    w, _ = ansatz_weights(point, 6, 2)
    assert state_word("201122") == "DEAADD"
    assert w["201122"] == eval_bra_word_ket([ops.letter(ch) for ch in "DEAADD"], 0)
    w0, _ = ansatz_weights(point, 3, 0)
    assert w0["222"] == eval_bra_word_ket([ops.D] * 3, 0)


def test_ansatz_equals_stationary(points):
    for p in points[:2]:
        for N in range(1, 4):
            for r in range(N + 1):
                rep = verify_stationary_ansatz(p, N, r)
                assert rep.ok, [c.line() for c in rep.failures][:3]


def test_tasep_ansatz_two_sites():
    p = ParamPoint(0, 0, 0, 0, 0)
    w, total = ansatz_weights(p, 2, 0)
    assert total == 5
    pi = stationary(build_chain(2, 0, Rates.from_point(p)))
    assert {s: v / total for s, v in w.items()} == pi


def test_simulation_single_site():
    c = build_chain(1, 0, Rates(F(1, 2), F(1, 2), 0, 0, 0))
    res = simulate(c, 10 ** 6, 12345, burnin=100)
    p_hat = res.frequencies["2"]
    # the chain is correlated; 3 sigma with the integrated autocorrelation time
    # (1 + lambda) / (1 - lambda) for the two-state chain with lambda = 1/2
    sigma = math.sqrt(0.25 * 3 / 10 ** 6)
    assert abs(p_hat - 0.5) < 3 * sigma


def test_same_seed_same_trajectory():
    c = build_chain(3, 1, RATES)
    assert same_seed_identical(c, 50_000, 9)
    a = simulate(c, 50_000, 9)
    b = simulate(c, 50_000, 10)
    assert a.digest != b.digest


def test_simulation_rejects_invalid_rates():
    c = build_chain(2, 0, Rates(F(3, 2), 1, 0, 0, 0))
    with pytest.raises(ValueError):
        simulate(c, 10, 0)


def test_short_run_statistics():
    c = build_chain(2, 1, RATES)
    pi = stationary(c)
    res = simulate(c, 400_000, 4, burnin=1000)
    assert total_variation(res.frequencies, pi) < 0.02
    assert chi_square(res, pi)[1] > 0.001


def test_display():
    assert display_state("202") == "●.●"
    assert display_state("21") == "21"
