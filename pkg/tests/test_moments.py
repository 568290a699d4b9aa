from fractions import Fraction

import pytest

from koornwinder_asep.ansatz import ParamPoint
from koornwinder_asep.exact import GaussianRational, Poly
from koornwinder_asep.moments import (K, Z, Z_sequence, Z_two_species, aw_moments, hankel_quotient,
                                      hook_shape, jacobi_trudi_K, k_r_band, k_r_poly,
                                      main_theorem_edge_case, partitions_in_box,
                                      verify_aw_bridge, verify_hook_moment_motzkin,
                                      verify_main_theorem, verify_main_unscaled,
                                      verify_M_proportionality, verify_partial_bracket,
                                      verify_rate_mapping)


def test_hook_shape():
    assert hook_shape(5, 2) == (3, 0, 0)
    assert hook_shape(3, 3) == (0, 0, 0, 0)


def test_empty_and_single_part_moments(point):
    assert K(point, ()) == Poly.const(1)
    assert K(point, (0,)) == Poly.const(1)
    assert K(point, (3,)) == Z(point, 3)


def test_hankel_quotient_of_catalan_moments():
    # Catalan moments have all Hankel determinants equal to 1
    cat = [1, 1, 2, 5, 14, 42, 132, 429, 1430]
    seq = [Fraction(c) for c in cat]
    assert hankel_quotient(seq, (0, 0, 0)) == 1
    assert hankel_quotient(seq, (2,)) == 2


def test_z_two_species_r_zero_is_z(point):
    for N in range(5):
        assert Z_two_species(point, N, 0) == Z(point, N)


def test_z_two_species_r_equals_n_is_one(point):
    for N in range(1, 5):
        assert Z_two_species(point, N, N) == Poly.const(1)


def test_k_equals_z_two_species(points):
    for p in points:
        for N in range(1, 6):
            for r in range(N + 1):
                assert verify_main_unscaled(p, N, r).ok


def test_scaled_main_theorem_differs_by_power_of_one_minus_q(point):
    # the (1-q)^r factor in the scaled statement is not consistent with the
    # two-species bracket identity; the identity without it holds
    for N in range(2, 5):
        for r in range(1, N):
            assert not verify_main_theorem(point, N, r).ok
            assert K(point, hook_shape(N, r)) * (1 - point.q) ** r == \
                Z_two_species(point, N, r) * (1 - point.q) ** r


def test_edge_case_report(point):
    e = main_theorem_edge_case(point, 3)
    assert e["K"] == Poly.const(1) and e["Z_NN"] == Poly.const(1)
    assert not e["scaled_form_holds"] and e["unscaled_holds"]


def test_partial_bracket_identity(points):
    for p in points:
        for N in range(1, 5):
            for r in range(N + 1):
                assert verify_partial_bracket(p, N, r).ok


def test_moment_path_normalization(point):
    rep = verify_hook_moment_motzkin(point, 4, 2)
    band, poly = rep.checks
    assert band.holds and not poly.holds
    assert k_r_band(point, 2) * (1 - point.q) ** 2 == k_r_poly(point, 2)


def test_jacobi_trudi(points):
    for p in points:
        for length in (1, 2, 3):
            for lam in partitions_in_box(3, length):
                assert K(p, lam) == jacobi_trudi_K(p, lam)


def test_askey_wilson_bridge(points):
    for p in points[:2]:
        assert verify_rate_mapping(p).ok
        for N in range(5):
            assert verify_aw_bridge(p, N).ok
        for lam in [(1,), (2,), (1, 1), (2, 1), (3,)]:
            assert verify_M_proportionality(p, lam).ok


def test_aw_moments_start_at_one(point):
    mu = aw_moments(point, 2)
    assert GaussianRational.coerce(mu[0]) == 1


def test_partitions_in_box():
    assert partitions_in_box(2, 2) == [(2, 2), (2, 1), (2, 0), (1, 1), (1, 0), (0, 0)]
