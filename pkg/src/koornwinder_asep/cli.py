"""Command-line front end: compute partition functions and moments, solve and
simulate chains, and run verification suites.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 degenerate
parameters.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Any, Sequence

from . import chains, moments, motzkin, q1, suites
from .ansatz import ParamPoint, boundary_params_from_rates
from .exact import DegenerateParameterError, Poly, parse_rational, scalar_to_json
from .report import Report

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DEGENERATE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def parse_assignments(text: str, allowed: Sequence[str]) -> dict[str, Fraction]:
    """``"a=1/2,b=1/3"`` -> ``{"a": Fraction(1, 2), ...}``."""
    out = {}
    for item in filter(None, (t.strip() for t in text.split(","))):
        if "=" not in item:
            raise UsageError(f"expected name=value, got {item!r}")
        k, v = (s.strip() for s in item.split("=", 1))
        if k not in allowed:
            raise UsageError(f"unknown parameter {k!r}; expected one of {', '.join(allowed)}")
        try:
            out[k] = parse_rational(v)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    return out


def parse_bounds(text: str | None) -> dict[str, int]:
    if not text:
        return {}
    if text.lstrip().startswith("{"):
        return {k: int(v) for k, v in json.loads(text).items()}
    out = {}
    for item in filter(None, (t.strip() for t in text.split(","))):
        k, _, v = item.partition("=")
        if not v:
            raise UsageError(f"bad bound {item!r}")
        out[k.strip()] = int(v)
    return out


def parse_partition(text: str) -> tuple[int, ...]:
    try:
        parts = tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError as exc:
        raise UsageError(f"bad partition {text!r}") from exc
    if any(x < 0 for x in parts) or any(x < y for x, y in zip(parts, parts[1:])):
        raise UsageError(f"{text!r} is not a weakly decreasing list of nonnegative integers")
    return parts


RATE_NAMES = ("alpha", "beta", "gamma", "delta", "q", "u")


def point_from_args(args: argparse.Namespace) -> ParamPoint:
    if bool(args.params) == bool(args.rates):
        raise UsageError("give exactly one of --params or --rates")
    if args.params:
        v = parse_assignments(args.params, "abcdq")
        missing = [k for k in "abcdq" if k not in v]
        if missing:
            raise UsageError(f"--params is missing {', '.join(missing)}")
        return ParamPoint(v["a"], v["b"], v["c"], v["d"], v["q"])
    r = rates_from_args(args)
    if r.u != 1:
        raise UsageError("the matrix representation assumes u = 1")
    try:
        a, b, c, d = boundary_params_from_rates(r.alpha, r.beta, r.gamma, r.delta, r.q)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return ParamPoint(a, b, c, d, r.q)


def rates_from_args(args: argparse.Namespace, *, need_q: bool = True) -> chains.Rates:
    if args.params and args.rates:
        raise UsageError("give exactly one of --params or --rates")
    if args.params:
        return chains.Rates.from_point(point_from_args(args))
    if not args.rates:
        raise UsageError("give --rates (or --params)")
    v = parse_assignments(args.rates, RATE_NAMES)
    need = ["alpha", "beta", "gamma", "delta"] + (["q"] if need_q else [])
    missing = [k for k in need if k not in v]
    if missing:
        raise UsageError(f"--rates is missing {', '.join(missing)}")
    return chains.Rates(v["alpha"], v["beta"], v["gamma"], v["delta"], v.get("q", Fraction(0)),
                        v.get("u", Fraction(1)))


def _xi(args: argparse.Namespace) -> Any:
    if args.xi in (None, "symbolic"):
        return None
    try:
        return parse_rational(args.xi)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _maybe_eval(value: Poly, xi: Any) -> Any:
    return value(xi) if xi is not None else value


def _need(args: argparse.Namespace, *names: str) -> None:
    for n in names:
        if getattr(args, n, None) is None:
            raise UsageError(f"--{n} is required")


# ---------------------------------------------------------------------------
# Subcommands


def cmd_zn(args: argparse.Namespace) -> dict:
    _need(args, "N")
    p = point_from_args(args)
    return {"Z": scalar_to_json(_maybe_eval(moments.Z(p, args.N), _xi(args)))}


def cmd_z2(args: argparse.Namespace) -> dict:
    _need(args, "N", "r")
    p = point_from_args(args)
    return {"Z": scalar_to_json(_maybe_eval(moments.Z_two_species(p, args.N, args.r), _xi(args)))}


def cmd_koornwinder(args: argparse.Namespace) -> dict:
    _need(args, "partition")
    p = point_from_args(args)
    lam = parse_partition(args.partition)
    return {"partition": list(lam), "K": scalar_to_json(_maybe_eval(moments.K(p, lam), _xi(args)))}


def cmd_hook(args: argparse.Namespace) -> dict:
    _need(args, "partition")
    r = rates_from_args(args, need_q=False)
    p = q1.Q1Params(r.alpha, r.beta, r.gamma, r.delta)
    lam = parse_partition(args.partition)
    return {"partition": list(lam), "S": scalar_to_json(p.S), "x": scalar_to_json(p.x),
            "K": scalar_to_json(q1.K_hook(p, lam))}


def cmd_stationary(args: argparse.Namespace) -> dict:
    _need(args, "N", "r")
    c = chains.build_chain(args.N, args.r, rates_from_args(args))
    pi = chains.stationary(c)
    return {"N": args.N, "r": args.r, "rates": c.rates.to_json(),
            "stationary": {s: scalar_to_json(v) for s, v in pi.items()}}


def cmd_ansatz_weights(args: argparse.Namespace) -> dict:
    _need(args, "N", "r")
    p = point_from_args(args)
    w, total = chains.ansatz_weights(p, args.N, args.r)
    return {"N": args.N, "r": args.r, "total": scalar_to_json(total),
            "weights": {s: scalar_to_json(v) for s, v in w.items()}}


def cmd_simulate(args: argparse.Namespace) -> dict:
    _need(args, "N", "r")
    c = chains.build_chain(args.N, args.r, rates_from_args(args))
    try:
        res = chains.simulate(c, args.steps, args.seed, burnin=args.burnin)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    out = res.to_json()
    pi = chains.stationary(c)
    out["total_variation"] = chains.total_variation(res.frequencies, pi)
    out["N"], out["r"] = args.N, args.r
    return out


def cmd_paths(args: argparse.Namespace) -> dict:
    _need(args, "N")
    r = args.r or 0
    return {"N": args.N, "r": r, "paths": ["".join(p) for p in motzkin.paths_json(args.N, r)]}


# ---------------------------------------------------------------------------
# verify


def verify_reports(args: argparse.Namespace) -> tuple[list[Report], list[dict]]:
    bounds = parse_bounds(args.bounds)
    if args.N is not None:
        bounds.setdefault("N", args.N)
    names = suites.SUITES if args.suite == "all" else (args.suite,)
    reports, notes = [], []
    for name in names:
        b = dict(bounds) if name in ("main-theorem", "refinement", "motzkin", "askey-wilson",
                                     "stationary") else {k: v for k, v in bounds.items() if k != "N"}
        reports.append(suites.run_suite(name, points=args.points, seed=args.seed, bounds=b))
        if name == "main-theorem":
            pts = suites.random_points(args.seed, args.points)
            for e in suites.main_theorem_edge(pts, b):
                notes.append({"suite": name, "point": e["point"], "N": e["N"], "r": e["N"],
                              "note": "r = N edge case (reported, not counted)",
                              "scaled_form_holds": e["scaled_form_holds"],
                              "unscaled_holds": e["unscaled_holds"]})
    return reports, notes


def render_verify(reports: list[Report], notes: list[dict], args: argparse.Namespace) -> str:
    if args.format == "json":
        return json.dumps({"seed": args.seed, "points": args.points,
                           "ok": all(r.ok for r in reports),
                           "suites": [r.to_json() for r in reports], "notes": notes}, indent=2)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["suite", "identity", "indices", "holds"])
        for r in reports:
            for c in r.checks:
                w.writerow([r.name, c.identity, json.dumps(c.to_json()["indices"]), c.holds])
        return buf.getvalue().rstrip("\n")
    lines = [f"seed={args.seed} points={args.points}"]
    for r in reports:
        lines.append(f"== {r.name}")
        lines.extend(c.line() for c in r.checks)
        lines.append(r.summary())
    for n in notes:
        lines.append(f"INFO  {n['note']}: N={n['N']} point={n['point']} "
                     f"scaled form holds={n['scaled_form_holds']} "
                     f"K = Z_NN holds={n['unscaled_holds']}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="koornwinder-asep",
                                 description="Koornwinder moments and the two-species ASEP, "
                                             "in exact arithmetic.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--params", help="a=..,b=..,c=..,d=..,q=.. (rationals as p/q)")
    common.add_argument("--rates", help="alpha=..,beta=..,gamma=..,delta=..,q=..[,u=..]")
    common.add_argument("--N", type=int)
    common.add_argument("--r", type=int)
    common.add_argument("--partition", help="comma-separated parts, e.g. 2,1,0")
    common.add_argument("--xi", help="rational value or 'symbolic' (default)")
    common.add_argument("--points", type=int, default=3)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--steps", type=int, default=10 ** 6)
    common.add_argument("--burnin", type=int, default=10_000)
    common.add_argument("--format", choices=("json", "csv", "table"), default=None)
    common.add_argument("--bounds", help="name=int,... or a JSON object")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in ("zn", "z2", "koornwinder", "hook", "stationary", "ansatz-weights", "simulate",
                 "paths"):
        sub.add_parser(name, parents=[common])
    v = sub.add_parser("verify", parents=[common])
    v.add_argument("suite", choices=suites.SUITES + ("all",))
    return ap


COMMANDS = {
    "zn": cmd_zn, "z2": cmd_z2, "koornwinder": cmd_koornwinder, "hook": cmd_hook,
    "stationary": cmd_stationary, "ansatz-weights": cmd_ansatz_weights,
    "simulate": cmd_simulate, "paths": cmd_paths,
}


def _flatten(obj: dict) -> list[tuple[str, str]]:
    rows = []
    for k, v in obj.items():
        if isinstance(v, dict) and not {"coeffs", "re"} & set(v):
            rows.extend((f"{k}.{kk}", vv) for kk, vv in _flatten(v))
        else:
            rows.append((k, json.dumps(v) if isinstance(v, (dict, list)) else str(v)))
    return rows


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        if args.command == "verify":
            if args.points < 1:
                raise UsageError("--points must be at least 1")
            args.format = args.format or "table"
            reports, notes = verify_reports(args)
            print(render_verify(reports, notes, args), file=out)
            return EXIT_OK if all(r.ok for r in reports) else EXIT_FAIL
        result = COMMANDS[args.command](args)
        if args.format == "csv":
            w = csv.writer(out)
            w.writerow(["key", "value"])
            w.writerows(_flatten(result))
        else:
            print(json.dumps(result, indent=2, ensure_ascii=False), file=out)
        return EXIT_OK
    except DegenerateParameterError as exc:
        print(f"error: {exc} (denominator: {exc.denominator})", file=err)
        return EXIT_DEGENERATE
    except UsageError as exc:
        parser.print_usage(err)
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
