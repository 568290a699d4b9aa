import random
from math import comb

import pytest

from koornwinder_asep.exact import Poly
from koornwinder_asep.words import (Replacement, check_word, formal_q, inv_E, normal_form, s_r,
                                    verify_D_power_refinement, verify_normal_form, verify_refinement,
                                    verify_summed_refinement, words)


def test_normal_form_of_dde():
    q = formal_q()
    nf = normal_form("DDE", q)
    assert nf == {"D": Poly.const(1, "q"), "DD": 1 + q, "E": Poly.const(1, "q"), "ED": 2 * q,
                  "EDD": q * q}


def test_normal_form_words_are_sorted():
    for w in normal_form("DEDE", formal_q()):
        assert "DE" not in w


def test_normal_form_preserves_brackets(point):
    for X in ["DE", "DDE", "DEDE", "EDDE", "DDEE"]:
        assert verify_normal_form(point, X).ok


def test_replacement_sets():
    z = Replacement("DEDE", (1, 2, 4))
    assert z.word == "AADA"
    assert z.D_set == (1,) and z.E_set == (2, 4)
    assert inv_E(z) == 3


def test_s_r_size():
    for N in range(6):
        for r in range(N + 1):
            assert len(s_r("DE" * N, r)) == comb(2 * N, r)
    assert s_r("DE", 3) == []


def test_check_word_rejects_letters():
    with pytest.raises(ValueError):
        check_word("DXE")


def test_refinement_all_short_words(point):
    for N in range(1, 4):
        for X in words(N):
            for r in range(N + 1):
                assert verify_refinement(point, X, r).ok


def test_refinement_random_longer_words(point):
    rng = random.Random(2)
    for _ in range(3):
        X = "".join(rng.choice("DE") for _ in range(6))
        for r in (1, 3):
            assert verify_refinement(point, X, r).ok


def test_D_power_refinement(points):
    for p in points:
        for N in range(5):
            for r in range(N + 1):
                assert verify_D_power_refinement(p, N, r).ok


def test_summed_refinement(point):
    for N, r in [(2, 1), (3, 1), (3, 2)]:
        assert verify_summed_refinement(point, N, r).ok
