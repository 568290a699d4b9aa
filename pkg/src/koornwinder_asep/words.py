"""Words in D, E, A: replacement sets, the inv_E statistic, normal forms,
and the refinement identities relating one- and two-species brackets."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Any, Iterator

from .ansatz import BandOperator, ParamPoint, build_operators, eval_bra_word_ket
from .exact import DegenerateParameterError, Poly, SeriesY, is_zero
from .moments import A_power_bracket, Z_two_species, k_r_poly, Z_bracket
from .report import Report

LETTERS = "DEA"


def check_word(w: str, alphabet: str = LETTERS) -> str:
    bad = set(w) - set(alphabet)
    if bad:
        raise ValueError(f"word {w!r} has letters outside {alphabet!r}")
    return w


@dataclass(frozen=True)
class Replacement:
    """A word ``Z`` obtained from ``X`` by turning the letters at ``positions`` into A.

    Positions are 1-based, as in the statistic's definition.
    """

    base: str
    positions: tuple

    @property
    def word(self) -> str:
        s = list(self.base)
        for i in self.positions:
            s[i - 1] = "A"
        return "".join(s)

    @property
    def D_set(self) -> tuple:
        return tuple(i for i in self.positions if self.base[i - 1] == "D")

    @property
    def E_set(self) -> tuple:
        return tuple(i for i in self.positions if self.base[i - 1] == "E")


def s_r(X: str, r: int) -> list[Replacement]:
    """All ``C(N, r)`` ways of replacing exactly ``r`` letters of ``X`` by ``A``."""
    check_word(X, "DE")
    if r < 0 or r > len(X):
        return []
    return [Replacement(X, pos) for pos in itertools.combinations(range(1, len(X) + 1), r)]


def inv_E(z: Replacement) -> int:
    """``sum_{j in E(Z)} #{i in D(Z) u E(Z) : i < j}``."""
    return sum(sum(1 for i in z.positions if i < j) for j in z.E_set)


def words(N: int, alphabet: str = "DE") -> Iterator[str]:
    return ("".join(t) for t in itertools.product(alphabet, repeat=N))


def random_words(rng: random.Random, N: int, count: int) -> list[str]:
    return ["".join(rng.choice("DE") for _ in range(N)) for _ in range(count)]


# ---------------------------------------------------------------------------
# Normal form


def normal_form(X: str, q: Any) -> dict[str, Any]:
    """Rewrite ``DE -> qED + D + E`` at the leftmost occurrence until none remain.

    Returns a map from words ``E^l D^m`` to coefficients (polynomials in ``q``
    when ``q`` is a :class:`Poly`).
    """
    check_word(X, "DE")
    todo: dict[str, Any] = {X: 1 + 0 * q}
    done: dict[str, Any] = {}
    while todo:
        w, c = todo.popitem()
        k = w.find("DE")
        if k < 0:
            done[w] = done.get(w, 0 * q) + c
            continue
        for nw, f in ((w[:k] + "ED" + w[k + 2:], q), (w[:k] + "D" + w[k + 2:], 1),
                      (w[:k] + "E" + w[k + 2:], 1)):
            todo[nw] = todo.get(nw, 0 * q) + f * c
    return {w: c for w, c in sorted(done.items()) if not is_zero(c)}


def formal_q() -> Poly:
    return Poly.x("q")


# ---------------------------------------------------------------------------
# Bracket helpers


def bracket(p: ParamPoint, word: str, r: int = 0) -> Any:
    ops = build_operators(p)
    p.ensure_horizon(2 * len(word) + r + 2)
    return eval_bra_word_ket([ops.letter(ch) for ch in word], r)


def verify_normal_form(p: ParamPoint, X: str, *, report: Report | None = None) -> Report:
    rep = report if report is not None else Report("normal-form")
    nf = normal_form(X, p.q)
    rhs = sum((c * bracket(p, w) for w, c in nf.items()), 0 * p.q)
    rep.add("<W|X|V> = <W|normal_form(X)|V>", bracket(p, X), rhs, word=X)
    return rep


def refinement_rhs(p: ParamPoint, X: str, r: int) -> Any:
    al, _, ga, _ = p.rates
    den = A_power_bracket(p, r)
    if is_zero(den):
        raise DegenerateParameterError(f"<W|A^{r}|V> vanishes", f"<W|A^{r}|V>")
    total = 0 * p.q
    for z in s_r(X, r):
        total = total + (p.q ** inv_E(z) * al ** len(z.D_set) * ga ** len(z.E_set)
                         * bracket(p, z.word))
    return total / den


def verify_refinement(p: ParamPoint, X: str, r: int, *, report: Report | None = None) -> Report:
    """``<W|X|V^r> alpha^r (1-q)^r = sum_Z q^inv_E alpha^|D(Z)| gamma^|E(Z)| <W|Z|V>/<W|A^r|V>``."""
    rep = report if report is not None else Report("refinement")
    lhs = bracket(p, X, r) * p.alpha ** r * (1 - p.q) ** r
    rep.add("refinement", lhs, refinement_rhs(p, X, r), word=X, r=r)
    return rep


def _series_power_bracket(p: ParamPoint, N: int, r: int, base: BandOperator,
                          yop: BandOperator, ycoef: Any) -> Any:
    def entry(i: int, j: int) -> SeriesY:
        return SeriesY([base(i, j), ycoef * yop(i, j)], r)

    op = BandOperator(max(base.lower, yop.lower), max(base.upper, yop.upper), entry)
    p.ensure_horizon(2 * N + r + 2)
    val = eval_bra_word_ket([op] * N, 0, one=SeriesY([1], r))
    return val.coeff(r)


def verify_D_power_refinement(p: ParamPoint, N: int, r: int, *, report: Report | None = None) -> Report:
    """``<W|D^N|V^r> alpha^r (1-q)^r = [y^r] <W|(D + y alpha A)^N|V> / <W|A^r|V>``."""
    rep = report if report is not None else Report("D-power")
    ops = build_operators(p)
    lhs = bracket(p, "D" * N, r) * p.alpha ** r * (1 - p.q) ** r
    rhs = _series_power_bracket(p, N, r, ops.D, ops.A, p.alpha) / A_power_bracket(p, r)
    rep.add("<W|D^N|V^r> rho~_r = [y^r]<W|(D+y alpha A)^N|V>/<W|A^r|V>", lhs, rhs, N=N, r=r)
    # the middle expression of the reduction: alpha^r times the sum over S_r(D^N)
    mid = (p.alpha ** r * sum((bracket(p, z.word) for z in s_r("D" * N, r)), 0 * p.q)
           / A_power_bracket(p, r))
    rep.add("<W|D^N|V^r> rho~_r = alpha^r sum_{Z in S_r(D^N)} <W|Z|V>/<W|A^r|V>", lhs, mid,
            N=N, r=r)
    return rep


def verify_summed_refinement(p: ParamPoint, N: int, r: int, *,
                             report: Report | None = None) -> Report:
    """Summing the refinement over all X with weight xi^{#D} recovers the two-species
    partition function times ``prod (alpha xi + q^i gamma)``."""
    rep = report if report is not None else Report("refinement-sum")
    xi = Poly.x("xi")
    al, _, ga, _ = p.rates
    lhs = Poly()
    rhs = Poly()
    for X in words(N):
        w = xi ** X.count("D")
        lhs = lhs + w * (bracket(p, X, r) * al ** r * (1 - p.q) ** r)
        rhs = rhs + w * refinement_rhs(p, X, r)
    rep.add("sum_X xi^|X|_D (refinement lhs) = sum_X xi^|X|_D (refinement rhs)", lhs, rhs,
            N=N, r=r)
    prod = Poly.const(1)
    for i in range(r):
        prod = prod * (al * xi + p.q ** i * ga)
    rep.add("sum_X xi^|X|_D (refinement rhs) = Z_{N,r}(xi) prod(alpha xi + q^i gamma)",
            rhs, Z_two_species(p, N, r) * prod, N=N, r=r)
    rep.add("<W|(xiD+E)^N|V^r> rho~_r = Z_{N,r} prod(alpha xi + q^i gamma)",
            Z_bracket(p, N, r) * (al ** r * (1 - p.q) ** r), Z_two_species(p, N, r) * prod,
            N=N, r=r)
    rep.add("prod(alpha xi + q^i gamma) = alpha^r k_r", prod, k_r_poly(p, r) * al ** r, r=r)
    return rep


def combination_to_json(comb: dict[str, Any]) -> dict[str, Any]:
    from .exact import scalar_to_json
    return {w: scalar_to_json(c) for w, c in sorted(comb.items())}
