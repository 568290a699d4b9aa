"""Exact discrete-time Markov chains for the one- and two-species ASEP,
their stationary distributions, and a seeded Monte Carlo simulator.

States are strings over ``0`` (hole), ``1`` (light) and ``2`` (heavy). With
no light particles the chain is the single-species ASEP under ``2 <-> ●``.

The simulator draws uniforms from numpy's PCG64 generator seeded with the
given integer, in blocks of ``BLOCK`` variates, one variate per step. A step
from state ``s`` moves to the first target whose cumulative probability
exceeds the variate.
"""

from __future__ import annotations

import bisect
import hashlib
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Any, Sequence

import numpy as np
from scipy import stats

from .ansatz import ParamPoint, build_operators, eval_bra_word_ket
from .exact import DegenerateParameterError, is_zero
from .moments import A_power_bracket, Z_two_species
from .report import Report

BLOCK = 1 << 16
LETTER = {"2": "D", "1": "A", "0": "E"}


@dataclass(frozen=True)
class Rates:
    alpha: Any
    beta: Any
    gamma: Any
    delta: Any
    q: Any
    u: Any = 1

    def __post_init__(self) -> None:
        for k in ("alpha", "beta", "gamma", "delta", "q", "u"):
            v = getattr(self, k)
            if isinstance(v, int):
                object.__setattr__(self, k, Fraction(v))

    @classmethod
    def from_point(cls, p: ParamPoint) -> "Rates":
        return cls(p.alpha, p.beta, p.gamma, p.delta, p.q)

    def in_unit_range(self) -> bool:
        return all(0 <= getattr(self, k) <= 1
                   for k in ("alpha", "beta", "gamma", "delta", "q", "u"))

    def to_json(self) -> dict:
        from .exact import scalar_to_json
        return {k: scalar_to_json(getattr(self, k))
                for k in ("alpha", "beta", "gamma", "delta", "q", "u")}


@dataclass
class ChainSpec:
    N: int
    r: int
    rates: Rates
    states: list[str]
    P: dict[str, dict[str, Any]] = field(repr=False)

    def index(self) -> dict[str, int]:
        return {s: k for k, s in enumerate(self.states)}


def enumerate_states(N: int, r: int) -> list[str]:
    """Words in ``{0,1,2}^N`` with exactly ``r`` ones, in lexicographic order."""
    return ["".join(w) for w in itertools.product("012", repeat=N) if w.count("1") == r]


def _bulk_moves(s: str, rates: Rates) -> list[tuple[str, Any]]:
    """Adjacent swaps: ``21, 20, 10`` move right at rate u; the reverse pairs at rate q."""
    out = []
    right = {"21", "20", "10"}
    left = {"12", "02", "01"}
    for i in range(len(s) - 1):
        pair = s[i:i + 2]
        if pair in right:
            out.append((s[:i] + pair[::-1] + s[i + 2:], rates.u))
        elif pair in left:
            out.append((s[:i] + pair[::-1] + s[i + 2:], rates.q))
    return out


def _boundary_moves(s: str, rates: Rates) -> list[tuple[str, Any]]:
    out = []
    if s[0] == "0":
        out.append(("2" + s[1:], rates.alpha))
    elif s[0] == "2":
        out.append(("0" + s[1:], rates.gamma))
    if s[-1] == "2":
        out.append((s[:-1] + "0", rates.beta))
    elif s[-1] == "0":
        out.append((s[:-1] + "2", rates.delta))
    return out


def build_chain(N: int, r: int, rates: Rates) -> ChainSpec:
    if N < 1 or not 0 <= r <= N:
        raise ValueError("need N >= 1 and 0 <= r <= N")
    states = enumerate_states(N, r)
    P: dict[str, dict[str, Any]] = {}
    for s in states:
        row: dict[str, Any] = {}
        for t, rate in _bulk_moves(s, rates) + _boundary_moves(s, rates):
            if t == s:
                continue
            row[t] = row.get(t, 0) + Fraction(rate) / (N + 1)
        row[s] = 1 - sum(row.values(), Fraction(0))
        P[s] = row
    return ChainSpec(N, r, rates, states, P)


def check_chain(c: ChainSpec) -> Report:
    """State count, exact row sums, and every off-diagonal entry against the move rules."""
    rep = Report("chain")
    rep.add("|B_{N,r}| = C(N,r) 2^(N-r)", len(c.states), comb(c.N, c.r) * 2 ** (c.N - c.r),
            N=c.N, r=c.r)
    for s in c.states:
        row = c.P[s]
        rep.add("row sum = 1", sum(row.values(), Fraction(0)), Fraction(1), state=s)
        for t in c.states:
            if t != s:
                rep.add("P(s,t) = matching rule rates / (N+1)", row.get(t, 0),
                        expected_entry(s, t, c.rates) / (c.N + 1), state=s, target=t)
    return rep


def expected_entry(s: str, t: str, rates: Rates) -> Any:
    """Sum of the rule rates taking ``s`` to ``t`` (before dividing by N+1)."""
    diff = [i for i in range(len(s)) if s[i] != t[i]]
    total = Fraction(0)
    if len(diff) == 1:
        i = diff[0]
        move = s[i] + t[i]
        if i == 0:
            total += {"02": rates.alpha, "20": rates.gamma}.get(move, 0)
        if i == len(s) - 1:
            total += {"20": rates.beta, "02": rates.delta}.get(move, 0)
    elif len(diff) == 2 and diff[1] == diff[0] + 1:
        i = diff[0]
        pair = s[i:i + 2]
        if t[i:i + 2] == pair[::-1]:
            if pair in ("21", "20", "10"):
                total += rates.u
            elif pair in ("12", "02", "01"):
                total += rates.q
    return total


# ---------------------------------------------------------------------------
# Exact stationary distribution


def solve_exact(rows: list[list[Any]], rhs: list[Any]) -> list[Any]:
    """Gauss-Jordan elimination over an exact field; raises on a singular system."""
    n = len(rows)
    m = [list(r) + [b] for r, b in zip(rows, rhs)]
    for col in range(n):
        piv = next((k for k in range(col, n) if not is_zero(m[k][col])), None)
        if piv is None:
            raise ArithmeticError("singular system: the chain is not irreducible")
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [v * inv for v in m[col]]
        for k in range(n):
            if k != col and not is_zero(m[k][col]):
                f = m[k][col]
                m[k] = [a - f * b for a, b in zip(m[k], m[col])]
    return [m[k][n] for k in range(n)]


def stationary(c: ChainSpec) -> dict[str, Any]:
    """The unique ``pi`` with ``pi P = pi`` and ``sum pi = 1``."""
    idx = c.index()
    n = len(c.states)
    # rows of (P^T - I), with the last equation replaced by normalization
    rows = [[Fraction(0)] * n for _ in range(n)]
    for s, row in c.P.items():
        for t, v in row.items():
            rows[idx[t]][idx[s]] += v
    for k in range(n):
        rows[k][k] -= 1
    rows[-1] = [Fraction(1)] * n
    rhs = [Fraction(0)] * (n - 1) + [Fraction(1)]
    pi = solve_exact(rows, rhs)
    return dict(zip(c.states, pi))


def check_stationary(c: ChainSpec, pi: dict[str, Any], rep: Report) -> None:
    for t in c.states:
        flow = sum((pi[s] * c.P[s].get(t, 0) for s in c.states), Fraction(0))
        rep.add("(pi P)_t = pi_t", flow, pi[t], state=t)
    rep.add("sum pi = 1", sum(pi.values(), Fraction(0)), Fraction(1))


# ---------------------------------------------------------------------------
# Matrix Ansatz weights


def state_word(state: str) -> str:
    return "".join(LETTER[ch] for ch in state)


def ansatz_weights(p: ParamPoint, N: int, r: int) -> tuple[dict[str, Any], Any]:
    """Unnormalized weights ``<W| prod M_tau |V>`` and their sum."""
    ops = build_operators(p)
    p.ensure_horizon(2 * N + 2)
    w = {s: eval_bra_word_ket([ops.letter(ch) for ch in state_word(s)], 0)
         for s in enumerate_states(N, r)}
    total = sum(w.values(), 0 * p.q)
    if is_zero(total):
        raise DegenerateParameterError("the ansatz weights sum to zero", "sum of weights")
    return w, total


def verify_stationary_ansatz(p: ParamPoint, N: int, r: int, *,
                             report: Report | None = None) -> Report:
    rep = report if report is not None else Report("stationary")
    w, total = ansatz_weights(p, N, r)
    rep.add("sum of weights = <W|A^r|V> Z_{N,r}(1)", total,
            A_power_bracket(p, r) * Z_two_species(p, N, r, xi=1 + 0 * p.q), N=N, r=r)
    pi = stationary(build_chain(N, r, Rates.from_point(p)))
    for s in pi:
        rep.add("weight / sum = stationary probability", w[s] / total, pi[s], N=N, r=r, state=s)
    return rep


# ---------------------------------------------------------------------------
# Monte Carlo


@dataclass
class SimulationResult:
    states: list[str]
    counts: np.ndarray
    thinned_counts: np.ndarray
    steps: int
    burnin: int
    thin: int
    seed: int
    digest: str

    @property
    def frequencies(self) -> dict[str, float]:
        total = int(self.counts.sum())
        return {s: int(k) / total for s, k in zip(self.states, self.counts)}

    def to_json(self) -> dict:
        return {"seed": self.seed, "steps": self.steps, "burnin": self.burnin,
                "thin": self.thin, "digest": self.digest,
                "frequencies": self.frequencies}


def _float_tables(c: ChainSpec) -> tuple[list[list[float]], list[list[int]]]:
    idx = c.index()
    cum, targets = [], []
    for s in c.states:
        acc, cs, ts = 0.0, [], []
        for t, v in c.P[s].items():
            if v < 0 or v > 1:
                raise ValueError(f"transition probability {v} out of [0,1] at {s}->{t}")
            if v:
                acc += float(v)
                cs.append(acc)
                ts.append(idx[t])
        cs[-1] = 1.0
        cum.append(cs)
        targets.append(ts)
    return cum, targets


def relaxation_time(c: ChainSpec) -> float:
    """``1 / (1 - |lambda_2|)`` for the float transition matrix."""
    idx = c.index()
    m = np.zeros((len(c.states), len(c.states)))
    for s, row in c.P.items():
        for t, v in row.items():
            m[idx[s], idx[t]] = float(v)
    ev = sorted(np.abs(np.linalg.eigvals(m)), reverse=True)
    if len(ev) < 2:
        return 1.0
    return 1.0 / max(1.0 - ev[1], 1e-12)


def default_thin(c: ChainSpec) -> int:
    return max(1, math.ceil(10 * relaxation_time(c)))


def simulate(c: ChainSpec, steps: int, seed: int, *, burnin: int = 0, thin: int | None = None,
             start: str | None = None) -> SimulationResult:
    """Run ``burnin + steps`` steps and count visits over the last ``steps``.

    ``thinned_counts`` holds every ``thin``-th recorded state, for tests that
    need nearly independent samples.
    """
    if steps < 1 or burnin < 0:
        raise ValueError("need steps >= 1 and burnin >= 0")
    if not c.rates.in_unit_range():
        raise ValueError("simulation needs all rates in [0, 1]")
    cum, targets = _float_tables(c)
    thin = default_thin(c) if thin is None else thin
    n = len(c.states)
    rng = np.random.Generator(np.random.PCG64(seed))
    s = c.index()[start] if start is not None else 0
    counts = [0] * n
    thinned = [0] * n
    h = hashlib.sha256()
    total = burnin + steps
    done = 0
    while done < total:
        size = min(BLOCK, total - done)
        us = rng.random(size).tolist()
        trail = bytearray(size)
        for k, u in enumerate(us):
            row = cum[s]
            s = targets[s][bisect.bisect_right(row, u)] if len(row) > 1 else targets[s][0]
            trail[k] = s
            step = done + k
            if step >= burnin:
                counts[s] += 1
                if (step - burnin) % thin == 0:
                    thinned[s] += 1
        h.update(trail)
        done += size
    return SimulationResult(list(c.states), np.array(counts), np.array(thinned), steps, burnin,
                            thin, seed, h.hexdigest())


def total_variation(freq: dict[str, float], pi: dict[str, Any]) -> float:
    return 0.5 * sum(abs(freq.get(s, 0.0) - float(v)) for s, v in pi.items())


def chi_square(result: SimulationResult, pi: dict[str, Any]) -> tuple[float, float]:
    """Pearson statistic and p-value of the thinned counts against ``pi``."""
    obs = result.thinned_counts.astype(float)
    exp = np.array([float(pi[s]) for s in result.states]) * obs.sum()
    keep = exp > 0
    stat, pval = stats.chisquare(obs[keep], exp[keep])
    return float(stat), float(pval)


def monte_carlo_check(c: ChainSpec, steps: int, seed: int, *, burnin: int = 10_000,
                      tv_tol: float = 0.01, level: float = 0.99) -> Report:
    rep = Report("monte-carlo")
    pi = stationary(c)
    res = simulate(c, steps, seed, burnin=burnin)
    tv = total_variation(res.frequencies, pi)
    rep.record("total variation < tol", tv < tv_tol, note=f"tv={tv:.5f}", N=c.N, r=c.r,
               seed=seed, steps=steps)
    stat, pval = chi_square(res, pi)
    rep.record(f"chi-square passes at the {level:.0%} level", pval > 1 - level,
               note=f"stat={stat:.3f} p={pval:.4f} thin={res.thin}", N=c.N, r=c.r, seed=seed)
    return rep


def same_seed_identical(c: ChainSpec, steps: int, seed: int) -> bool:
    a = simulate(c, steps, seed)
    b = simulate(c, steps, seed)
    return a.digest == b.digest and bool((a.counts == b.counts).all())


def display_state(s: str) -> str:
    """Single-species display: ``●`` for a particle and ``.`` for a hole."""
    return s.replace("2", "●").replace("0", ".") if "1" not in s else s
