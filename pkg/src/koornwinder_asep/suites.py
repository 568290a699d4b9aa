"""Named verification suites shared by the command line and the acceptance tests.

Each suite takes a list of parameter points (or a seed) and size bounds and
returns one :class:`Report`.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Any, Callable

from . import chains, f_identities, moments, motzkin, q1, words
from .ansatz import (ParamPoint, build_operators, check_ansatz_relations, eval_bra_word_ket,
                     random_points, xi_operator)
from .exact import Poly
from .report import Report

DEFAULTS: dict[str, dict[str, int]] = {
    "relations": {"dim": 10},
    "main-theorem": {"N": 6},
    "jacobi-trudi": {"box": 4, "length": 3},
    "refinement": {"N": 5, "random_words": 20, "D_power_N": 6},
    "section7": {},
    "motzkin": {"N": 8, "det_N": 6, "kmlgv_N": 5, "kmlgv_r": 3},
    "askey-wilson": {"N": 6, "size": 4},
    "q1": {"box": 4, "length": 4, "positivity_box": 3},
    "stationary": {"N": 5},
}


def _bounds(name: str, bounds: dict | None) -> dict:
    b = dict(DEFAULTS.get(name, {}))
    b.update(bounds or {})
    return b


def relations(points: list[ParamPoint], bounds: dict | None = None) -> Report:
    b = _bounds("relations", bounds)
    rep = Report("relations")
    for k, p in enumerate(points):
        for c in check_ansatz_relations(p, b["dim"]).checks:
            c.indices["point"] = k
            rep.checks.append(c)
    return rep


def main_theorem(points: list[ParamPoint], bounds: dict | None = None) -> Report:
    """The scaled statement ``K (1-q)^r = Z_{N,r}`` for ``1 <= r < N``."""
    b = _bounds("main-theorem", bounds)
    rep = Report("main-theorem")
    for k, p in enumerate(points):
        for N in range(2, b["N"] + 1):
            for r in range(1, N):
                c = moments.verify_main_theorem(p, N, r).checks[0]
                c.indices["point"] = k
                rep.checks.append(c)
    return rep


def main_theorem_unscaled(points: list[ParamPoint], bounds: dict | None = None) -> Report:
    b = _bounds("main-theorem", bounds)
    rep = Report("main-theorem-unscaled")
    for k, p in enumerate(points):
        for N in range(1, b["N"] + 1):
            for r in range(0, N + 1):
                c = moments.verify_main_unscaled(p, N, r).checks[0]
                c.indices["point"] = k
                rep.checks.append(c)
                for c in moments.verify_partial_bracket(p, N, r).checks:
                    c.indices["point"] = k
                    rep.checks.append(c)
    return rep


def main_theorem_edge(points: list[ParamPoint], bounds: dict | None = None) -> list[dict]:
    b = _bounds("main-theorem", bounds)
    return [dict(moments.main_theorem_edge_case(p, N), point=k)
            for k, p in enumerate(points) for N in range(1, b["N"] + 1)]


def jacobi_trudi(points: list[ParamPoint], bounds: dict | None = None) -> Report:
    b = _bounds("jacobi-trudi", bounds)
    rep = Report("jacobi-trudi")
    for k, p in enumerate(points):
        for length in range(1, b["length"] + 1):
            for lam in moments.partitions_in_box(b["box"], length):
                c = moments.verify_jacobi_trudi(p, lam).checks[0]
                c.indices["point"] = k
                rep.checks.append(c)
    return rep


def refinement(points: list[ParamPoint], bounds: dict | None = None, *, seed: int = 0) -> Report:
    """All words up to ``N`` at the first point, seeded random words at ``N+1, N+2``,
    and the D^N identity at every point."""
    b = _bounds("refinement", bounds)
    rep = Report("refinement")
    p = points[0]
    for N in range(1, b["N"] + 1):
        for X in words.words(N):
            for r in range(N + 1):
                words.verify_refinement(p, X, r, report=rep)
    rng = random.Random(seed)
    for N in (b["N"] + 1, b["N"] + 2):
        for X in words.random_words(rng, N, b["random_words"]):
            for r in range(N + 1):
                words.verify_refinement(p, X, r, report=rep)
    for k, pt in enumerate(points):
        for N in range(b["D_power_N"] + 1):
            for r in range(N + 1):
                for c in words.verify_D_power_refinement(pt, N, r).checks:
                    c.indices["point"] = k
                    rep.checks.append(c)
    return rep


def f_identities_suite(points: list[ParamPoint], bounds: dict | None = None) -> Report:
    rep = Report("f-identities")
    for k, p in enumerate(points):
        for c in f_identities.verify_f_identities(p, bounds or None).checks:
            c.indices["point"] = k
            rep.checks.append(c)
    return rep


def band_operators(points: list[ParamPoint], seed: int) -> list[tuple[str, Any, Any]]:
    """``(label, operator, one)`` triples: unit, seeded random, q=1, and xi D + E."""
    rng = random.Random(seed)
    ops: list[tuple[str, Any, Any]] = [("unit", motzkin.unit_operator(), 1)]
    for k in range(2):
        ops.append((f"random{k}", motzkin.random_band_operator(rng), Fraction(1)))
    ops.append(("q1", q1.c_matrix_q1(q1.random_q1_params(rng)), Fraction(1)))
    p = points[0]
    p.ensure_horizon(20)
    ops.append(("xiD+E", xi_operator(build_operators(p)), Poly.const(1)))
    return ops


def motzkin_suite(points: list[ParamPoint], bounds: dict | None = None, *, seed: int = 0) -> Report:
    b = _bounds("motzkin", bounds)
    rep = Report("motzkin")
    rep.add("Motzkin numbers", motzkin.motzkin_numbers(6), [1, 1, 2, 4, 9, 21, 51])
    for label, c, one in band_operators(points, seed):
        for N in range(b["N"] + 1):
            for r in range(N + 1):
                rep.add("path_gf(N,r) = <W|C^N|V^r>", motzkin.path_gf(c, N, r, one=one),
                        eval_bra_word_ket([c] * N, r, one=one), operator=label, N=N, r=r)
        for N in range(b["det_N"] + 1):
            for r in range(N + 1):
                sub = motzkin.verify_det_motzkin(c, N, r, one=one)
                for ch in sub.checks[1:]:
                    ch.indices["operator"] = label
                    rep.checks.append(ch)
        for N in range(b["kmlgv_N"] + 1):
            for r in range(min(N, b["kmlgv_r"]) + 1):
                for kind in ("denominator", "numerator"):
                    sub = motzkin.verify_kmlgv(c, kind, N, r, one=one)
                    for ch in sub.checks:
                        ch.indices["operator"] = label
                        rep.checks.append(ch)
    return rep


def askey_wilson(points: list[ParamPoint], bounds: dict | None = None) -> Report:
    b = _bounds("askey-wilson", bounds)
    rep = Report("askey-wilson")
    for k, p in enumerate(points):
        sub = Report("aw")
        moments.verify_rate_mapping(p, report=sub)
        for N in range(b["N"] + 1):
            moments.verify_aw_bridge(p, N, report=sub)
        for length in range(1, b["size"] + 1):
            for lam in moments.partitions_in_box(b["size"], length):
                if 0 < sum(lam) <= b["size"] and lam[-1] > 0:
                    moments.verify_M_proportionality(p, lam, report=sub)
        for c in sub.checks:
            c.indices["point"] = k
            rep.checks.append(c)
    return rep


def q1_suite(count: int, seed: int, bounds: dict | None = None, *,
             recurrence_without_S: bool = True) -> Report:
    """Hook formula, recurrences and positivity at ``count`` seeded rate points."""
    b = _bounds("q1", bounds)
    rep = Report("q1")
    rng = random.Random(seed)
    for k in range(count):
        p = q1.random_q1_params(rng)
        sub = Report("q1-point")
        for length in range(1, b["length"] + 1):
            for lam in moments.partitions_in_box(b["box"], length):
                q1.verify_hook(p, lam, sub)
        sub.extend(q1.verify_q1_recurrences(p))
        if recurrence_without_S:
            sub.extend(q1.verify_padded_column_recurrence(p))
        sub.extend(q1.verify_padded_column_recurrence(p, with_S=True))
        for c in sub.checks:
            c.indices["point"] = k
            rep.checks.append(c)
    rep.extend(q1.positivity_box(b["positivity_box"], b["positivity_box"]))
    return rep


def stationary_suite(points: list[ParamPoint], bounds: dict | None = None) -> Report:
    b = _bounds("stationary", bounds)
    rep = Report("stationary")
    for k, p in enumerate(points):
        for N in range(1, b["N"] + 1):
            for r in range(N + 1):
                sub = chains.verify_stationary_ansatz(p, N, r)
                sub.extend(chains.check_chain(chains.build_chain(N, r, chains.Rates.from_point(p))))
                for c in sub.checks:
                    c.indices["point"] = k
                    rep.checks.append(c)
    return rep


SUITES = ("relations", "main-theorem", "jacobi-trudi", "refinement", "section7", "motzkin",
          "askey-wilson", "q1", "stationary")


def run_suite(name: str, *, points: int = 3, seed: int = 0, bounds: dict | None = None) -> Report:
    pts = random_points(seed, points)
    table: dict[str, Callable[[], Report]] = {
        "relations": lambda: relations(pts, bounds),
        "main-theorem": lambda: main_theorem(pts, bounds),
        "jacobi-trudi": lambda: jacobi_trudi(pts, bounds),
        "refinement": lambda: refinement(pts, bounds, seed=seed),
        "section7": lambda: f_identities_suite(pts, bounds),
        "motzkin": lambda: motzkin_suite(pts, bounds, seed=seed),
        "askey-wilson": lambda: askey_wilson(pts, bounds),
        "q1": lambda: q1_suite(points, seed, bounds),
        "stationary": lambda: stationary_suite(pts, bounds),
    }
    if name not in table:
        raise ValueError(f"unknown suite {name!r}")
    return table[name]()
