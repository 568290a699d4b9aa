import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from koornwinder_asep.ansatz import eval_bra_word_ket
from koornwinder_asep.exact import exact_determinant
from koornwinder_asep.motzkin import (enumerate_disjoint_collections, enumerate_paths, generic_K,
                                      heights, kmlgv_config, moment_sequence, motzkin_numbers,
                                      path_gf, random_band_operator, unit_operator, up_product,
                                      verify_det_motzkin, verify_kmlgv, weight_matrix)


def test_motzkin_numbers():
    assert motzkin_numbers(8) == [1, 1, 2, 4, 9, 21, 51, 127, 323]


def test_partial_paths_n3_r1():
    assert sorted(enumerate_paths(3, 1)) == sorted(["UUD", "UFF", "UDU", "FUF", "FFU"])


def test_paths_stay_nonnegative():
    for path in enumerate_paths(7, 2):
        hs = heights(path)
        assert min(hs) >= 0 and hs[-1] == 2


def test_enumeration_cap():
    with pytest.raises(ValueError):
        enumerate_paths(13, 0)


@given(st.integers(0, 10**6), st.integers(0, 7))
def test_path_gf_equals_matrix_power(seed, N):
    c = random_band_operator(random.Random(seed))
    for r in range(N + 1):
        assert path_gf(c, N, r, one=Fraction(1)) == eval_bra_word_ket([c] * N, r, one=Fraction(1))


def test_moment_sequence_sources_agree():
    c = random_band_operator(random.Random(3))
    assert moment_sequence(c, 8, brute_force=True) == moment_sequence(c, 8)


@given(st.integers(0, 10**6))
def test_det_motzkin(seed):
    c = random_band_operator(random.Random(seed))
    for N in range(1, 6):
        for r in range(N + 1):
            assert verify_det_motzkin(c, N, r, one=Fraction(1)).ok


def test_det_motzkin_with_unit_weights():
    c = unit_operator()
    for N in range(6):
        assert generic_K(c, (N,)) == motzkin_numbers(N)[N]
    assert up_product(c, 3) == 1


def test_kmlgv_configurations():
    assert kmlgv_config("denominator", 4, 2) == ([0, 1, 2], [4, 3, 2])
    assert kmlgv_config("numerator", 4, 2) == ([-2, 1, 2], [4, 3, 2])
    with pytest.raises(ValueError):
        kmlgv_config("other", 1, 0)


def test_kmlgv_counts():
    # denominator configuration: a single family of trivial and short paths
    src, snk = kmlgv_config("denominator", 3, 1)
    assert len(enumerate_disjoint_collections(src, snk)) == 1
    # numerator at (N, r) = (3, 1): as many families as partial paths to height 1
    src, snk = kmlgv_config("numerator", 3, 1)
    assert len(enumerate_disjoint_collections(src, snk)) == len(enumerate_paths(3, 1))
    for N in range(1, 6):
        for r in range(min(N, 3) + 1):
            src, snk = kmlgv_config("numerator", N, r)
            cols = enumerate_disjoint_collections(src, snk)
            assert exact_determinant(weight_matrix(unit_operator(), src, snk)) == len(cols)


def test_kmlgv_weighted():
    c = random_band_operator(random.Random(5))
    for N in range(1, 5):
        for r in range(min(N, 2) + 1):
            for kind in ("numerator", "denominator"):
                assert verify_kmlgv(c, kind, N, r, one=Fraction(1)).ok
