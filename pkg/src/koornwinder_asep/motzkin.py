"""Weighted Motzkin and partial Motzkin paths, and vertex-disjoint path families.

This is the brute-force oracle for matrix-power brackets and Hankel ratios.
Paths are strings over ``U`` (up), ``F`` (flat) and ``D`` (down).
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Any, Iterator, Sequence

from .ansatz import BandOperator, eval_bra_word_ket, power_rows
from .exact import DegenerateParameterError, exact_determinant, is_zero
from .moments import hankel_quotient, hook_shape
from .report import Report

DEFAULT_CAP = 12
STEP = {"U": 1, "F": 0, "D": -1}


def _walk(N: int, r: int, start: int) -> Iterator[str]:
    def rec(prefix: list[str], h: int, left: int) -> Iterator[str]:
        if left == 0:
            if h == r:
                yield "".join(prefix)
            return
        for s, dh in STEP.items():
            nh = h + dh
            if nh < 0 or abs(nh - r) > left - 1:
                continue
            prefix.append(s)
            yield from rec(prefix, nh, left - 1)
            prefix.pop()

    yield from rec([], start, N)


def enumerate_paths(N: int, r: int = 0, *, cap: int = DEFAULT_CAP, start: int = 0) -> list[str]:
    """All nonnegative U/F/D paths of length ``N`` from height ``start`` to height ``r``."""
    if N > cap:
        raise ValueError(f"path length {N} exceeds enumeration cap {cap}")
    if N < 0 or r < 0:
        return []
    return list(_walk(N, r, start))


def heights(path: str, start: int = 0) -> list[int]:
    hs = [start]
    for s in path:
        hs.append(hs[-1] + STEP[s])
    return hs


def path_weight(c: BandOperator, path: str, start: int = 0, one: Any = 1) -> Any:
    w = one
    h = start
    for s in path:
        nh = h + STEP[s]
        w = w * c(h, nh)
        h = nh
    return w


def path_gf(c: BandOperator, N: int, r: int = 0, *, cap: int = DEFAULT_CAP, one: Any = 1) -> Any:
    """Sum of path weights over partial Motzkin paths ``(0,0) -> (N,r)``."""
    total: Any = 0 * one
    for path in enumerate_paths(N, r, cap=cap):
        total = total + path_weight(c, path, one=one)
    return total


def motzkin_numbers(n_max: int) -> list[int]:
    return [len(enumerate_paths(n, 0, cap=max(n_max, DEFAULT_CAP))) for n in range(n_max + 1)]


def moment_sequence(c: BandOperator, n_max: int, *, one: Any = 1,
                    brute_force: bool = False, cap: int = DEFAULT_CAP) -> list[Any]:
    """``Z_N = <W|c^N|V>`` for ``N <= n_max``, by transfer matrix or by path enumeration."""
    if brute_force:
        return [path_gf(c, n, 0, cap=cap, one=one) for n in range(n_max + 1)]
    return [row.get(0, 0 * one) for row in power_rows(c, n_max, one=one)]


def generic_K(c: BandOperator, lam: Sequence[int], *, cap: int = DEFAULT_CAP, one: Any = 1,
              brute_force: bool = False) -> Any:
    """Hankel ratio of the moments ``Z_N`` of ``c``."""
    lam = tuple(lam)
    if not lam:
        return one
    top = lam[0] + 2 * len(lam) - 2
    seq = moment_sequence(c, top, one=one, brute_force=brute_force, cap=cap)
    return hankel_quotient(seq, lam, one=one)


def up_product(c: BandOperator, r: int, one: Any = 1) -> Any:
    """``k_r = c_{01} c_{12} ... c_{r-1,r}``."""
    out = one
    for i in range(r):
        out = out * c(i, i + 1)
    return out


def verify_det_motzkin(c: BandOperator, N: int, r: int, *, cap: int = DEFAULT_CAP,
                       one: Any = 1, report: Report | None = None) -> Report:
    """``path_gf(c, N, r) / k_r = K_(N-r, 0^r)`` and the oracle ``path_gf = <W|c^N|V^r>``."""
    rep = report if report is not None else Report("det-motzkin")
    gf = path_gf(c, N, r, cap=cap, one=one)
    rep.add("path_gf(N,r) = <W|C^N|V^r>", gf,
            eval_bra_word_ket([c] * N, r, one=one), N=N, r=r)
    k = up_product(c, r, one)
    if is_zero(k):
        raise DegenerateParameterError("k_r vanishes", "prod c_{i,i+1}")
    rep.add("path_gf(N,r) = k_r K_(N-r,0^r)", gf,
            k * generic_K(c, hook_shape(N, r), cap=cap, one=one), N=N, r=r)
    return rep


# ---------------------------------------------------------------------------
# Vertex-disjoint families


def kmlgv_config(kind: str, N: int, r: int) -> tuple[list[int], list[int]]:
    """x-coordinates of sources ``A_0..A_r`` and sinks ``B_0..B_r`` (all at height 0).

    ``denominator``: ``A_i = (i, 0)``, ``B_j = (2r - j, 0)``.
    ``numerator``: as above but ``A_0 = (r - N, 0)``.
    """
    if kind not in ("numerator", "denominator"):
        raise ValueError("kind must be 'numerator' or 'denominator'")
    if r > N:
        raise ValueError("need r <= N")
    sources = list(range(r + 1))
    if kind == "numerator":
        sources[0] = r - N
    sinks = [2 * r - j for j in range(r + 1)]
    return sources, sinks


def weight_matrix(c: BandOperator, sources: Sequence[int], sinks: Sequence[int], *,
                  cap: int = DEFAULT_CAP, one: Any = 1) -> list[list[Any]]:
    return [[path_gf(c, t - s, 0, cap=cap, one=one) if t >= s else 0 * one for t in sinks]
            for s in sources]


def _sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def enumerate_disjoint_collections(sources: Sequence[int], sinks: Sequence[int], *,
                                   cap: int = DEFAULT_CAP) -> list[tuple[tuple, tuple]]:
    """All families of pairwise vertex-disjoint paths, as ``(permutation, paths)``.

    Path ``i`` runs from ``(sources[i], 0)`` to ``(sinks[perm[i]], 0)``.
    """
    n = len(sources)
    out: list[tuple[tuple, tuple]] = []
    cache: dict = {}

    def paths(L: int) -> list[str]:
        if L not in cache:
            cache[L] = enumerate_paths(L, 0, cap=cap) if L >= 0 else []
        return cache[L]

    def rec(i: int, used: set, perm: list, chosen: list, occupied: set) -> None:
        if i == n:
            out.append((tuple(perm), tuple(chosen)))
            return
        x0 = sources[i]
        for j in range(n):
            if j in used:
                continue
            for path in paths(sinks[j] - x0):
                pts = {(x0 + k, h) for k, h in enumerate(heights(path))}
                if pts & occupied:
                    continue
                used.add(j)
                perm.append(j)
                chosen.append(path)
                rec(i + 1, used, perm, chosen, occupied | pts)
                used.discard(j)
                perm.pop()
                chosen.pop()

    rec(0, set(), [], [], set())
    return out


def collection_gf(c: BandOperator, sources: Sequence[int], collections: Sequence[tuple], *,
                  one: Any = 1) -> Any:
    total: Any = 0 * one
    for perm, paths in collections:
        w = one * _sign(perm)
        for i, path in enumerate(paths):
            w = w * path_weight(c, path, one=one)
        total = total + w
    return total


def verify_kmlgv(c: BandOperator, kind: str, N: int, r: int, *, cap: int = DEFAULT_CAP,
                 one: Any = 1, report: Report | None = None) -> Report:
    """det(weight matrix) equals the signed generating function of disjoint families."""
    rep = report if report is not None else Report("kmlgv")
    sources, sinks = kmlgv_config(kind, N, r)
    cols = enumerate_disjoint_collections(sources, sinks, cap=cap)
    det = exact_determinant(weight_matrix(c, sources, sinks, cap=cap, one=one))
    rep.add(f"det M_{kind} = disjoint family GF", det, collection_gf(c, sources, cols, one=one),
            N=N, r=r)
    unit = unit_operator()
    rep.add(f"det M_{kind} = disjoint family count (unit weights)",
            exact_determinant(weight_matrix(unit, sources, sinks, cap=cap)), len(cols), N=N, r=r)
    rep.record(f"{kind} families use the identity pairing",
               all(perm == tuple(range(len(perm))) for perm, _ in cols), N=N, r=r)
    return rep


# ---------------------------------------------------------------------------
# Band operators for testing


def unit_operator() -> BandOperator:
    return BandOperator(1, 1, lambda i, j: 1, "1s")


def random_band_operator(rng: random.Random, max_den: int = 7) -> BandOperator:
    """Tridiagonal operator with seeded nonzero small rational entries."""
    table: dict = {}

    def entry(i: int, j: int) -> Fraction:
        if (i, j) not in table:
            while True:
                v = Fraction(rng.randint(-9, 9), rng.randint(1, max_den))
                if v:
                    break
            table[(i, j)] = v
        return table[(i, j)]

    # fill deterministically so results do not depend on access order
    for i in range(DEFAULT_CAP + 4):
        for j in (i - 1, i, i + 1):
            if j >= 0:
                entry(i, j)
    return BandOperator(1, 1, entry, "C")


def all_cells(n_max: int) -> Iterator[tuple[int, int]]:
    return ((n, r) for n in range(n_max + 1) for r in range(n + 1))


def paths_json(N: int, r: int, cap: int = DEFAULT_CAP) -> list[list[str]]:
    return [list(p) for p in enumerate_paths(N, r, cap=cap)]

