"""Command-line front end.

Subcommands ``scarf``, ``classical``, ``metrics``, ``counterexample`` and
``verify`` print one JSON document on stdout.  Exit status: 0 on success, 1 on
invalid flags or domain errors, 2 when an input file cannot be read or parsed.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from . import dist as dmod
from .dist import DiscreteDistribution, DistributionError, moments, point_mass
from .metrics import kolmogorov, levy, prokhorov
from .momentsets import (
    ball_escape_sequence,
    level_points,
    mean_leak_sequence,
    tail_mass,
    tightness_report,
)
from .newsvendor import (
    MomentEnvelope,
    PriceParams,
    classical_optimal,
    extended_scarf,
    profit,
    scarf_rule,
)
from . import verify as vmod

METRICS = {"kolmogorov": kolmogorov, "levy": levy, "prokhorov": prokhorov}
EXIT_OK, EXIT_DOMAIN, EXIT_IO = 0, 1, 2


class UsageError(Exception):
    pass


class InputFileError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _load(path) -> DiscreteDistribution:
    try:
        return dmod.load(path)
    except (OSError, ValueError) as exc:
        raise InputFileError(f"{path}: {exc}") from exc


def _dist_payload(d: DiscreteDistribution) -> dict:
    return d.to_dict()


def _parse_n(text: str) -> list[int]:
    m = re.fullmatch(r"\s*(\d+)\s*(?:\.\.\s*(\d+)\s*)?", text)
    if not m:
        raise UsageError(f"--n expects N or N..M, got {text!r}")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) else lo
    if lo < 1 or hi < lo:
        raise UsageError(f"invalid n range {text!r}")
    return list(range(lo, hi + 1))


def _prices(args) -> PriceParams:
    for name in ("p", "c", "q"):
        if getattr(args, name) is None:
            raise UsageError(f"missing --{name}")
    return PriceParams(args.p, args.c, args.q)


def cmd_scarf(args) -> dict:
    params = _prices(args)
    point = args.mean is not None or args.s2 is not None
    envelope = any(v is not None for v in (args.a, args.b, args.d2))
    if point == envelope:
        raise UsageError("give either --mean/--s2 or --a/--b/--d2")
    if point:
        if args.mean is None or args.s2 is None:
            raise UsageError("point mode needs both --mean and --s2")
        sol = scarf_rule(params, args.mean, args.s2)
        echo = {"mode": "point", "mean": args.mean, "s2": args.s2}
    else:
        if None in (args.a, args.b, args.d2):
            raise UsageError("envelope mode needs --a, --b and --d2")
        sol = extended_scarf(params, MomentEnvelope(args.a, args.b, args.d2))
        echo = {"mode": "envelope", "a": args.a, "b": args.b, "d2": args.d2}
    return {
        "command": "scarf",
        "params": {"p": params.p, "c": params.c, "q": params.q, **echo},
        "m_used": sol.m,
        "s2_used": sol.s2,
        "x_star": sol.x_star,
        "value": sol.value,
        "worst_dist": _dist_payload(sol.worst_dist),
        "clamped": sol.clamped,
        "support_warning": sol.support_warning,
    }


def cmd_classical(args) -> dict:
    params = _prices(args)
    demand = _load(args.demand)
    x = classical_optimal(params, demand)
    return {
        "command": "classical",
        "params": {"p": params.p, "c": params.c, "q": params.q, "demand": str(args.demand)},
        "fractile": params.fractile,
        "x_star": x,
        "expected_profit": profit(params, x, demand),
    }


def cmd_metrics(args) -> dict:
    mu, lam = _load(args.file_a), _load(args.file_b)
    params = {"file_a": str(args.file_a), "file_b": str(args.file_b)}
    if args.all:
        values = {name: fn(mu, lam).value for name, fn in METRICS.items()}
        return {
            "command": "metrics",
            "params": {**params, "metric": "all"},
            "values": values,
            "levy_le_kolmogorov": values["levy"] <= values["kolmogorov"],
        }
    name = args.metric
    if name is None:
        raise UsageError("give --metric NAME or --all")
    if name not in METRICS:
        raise UsageError(f"unknown metric {name!r}; choose from {', '.join(METRICS)}")
    return {"command": "metrics", "params": {**params, "metric": name}, "metric": name, "value": METRICS[name](mu, lam).value}


def _report_payload(rep) -> dict:
    return {"epsilon": rep.epsilon, "radius": rep.radius, "uniform": rep.uniform, "member_radii": list(rep.member_radii)}


def cmd_counterexample(args) -> dict:
    ns = _parse_n(args.n)
    if args.which == "prop3":
        if args.base is None or args.r is None:
            raise UsageError("prop3 needs --base FILE and --r")
        if not (0 < args.r < 0.5):
            raise DistributionError(f"rparam must lie in (0, 1/2), got {args.r}")
        base = _load(args.base)
        seq = [ball_escape_sequence(base, args.r, n) for n in ns]
        a_r, b_r = level_points(base, args.r)
        out = {
            "command": "counterexample",
            "params": {"which": "prop3", "base": str(args.base), "r": args.r, "n": args.n, "epsilon": args.epsilon},
            "level_points": [a_r, b_r],
        }
        if len(ns) == 1 and not args.report:
            out["distribution"] = _dist_payload(seq[0])
            out["kolmogorov_to_base"] = kolmogorov(seq[0], base).value
            return out
        out["sequence"] = [
            {
                "n": n,
                "distribution": _dist_payload(d),
                "kolmogorov_to_base": kolmogorov(d, base).value,
                "tail_mass_beyond_n_minus_1": tail_mass(d, 0.0, n - 1),
            }
            for n, d in zip(ns, seq)
        ]
        out["tightness"] = _report_payload(tightness_report(seq, args.epsilon, 0.0))
        return out

    if args.a is None:
        raise UsageError("prop5 needs --a")
    if args.a <= 0:
        raise DistributionError("--a must be positive")
    limit = point_mass(args.a / 2)
    seq = [mean_leak_sequence(args.a, n) for n in ns]
    out = {
        "command": "counterexample",
        "params": {"which": "prop5", "a": args.a, "n": args.n, "epsilon": args.epsilon},
        "limit": _dist_payload(limit),
    }
    if len(ns) == 1 and not args.report:
        out["distribution"] = _dist_payload(seq[0])
        out["mean"] = moments(seq[0])[0]
        return out
    out["sequence"] = [
        {"n": n, "distribution": _dist_payload(d), "mean": moments(d)[0], "levy_to_limit": levy(d, limit).value}
        for n, d in zip(ns, seq)
    ]
    out["tightness"] = _report_payload(tightness_report(seq, args.epsilon, 0.0))
    return out


def cmd_verify(args) -> dict:
    checks = vmod.run(args.suite, seed=args.seed, trials=args.trials, grid_n=args.grid_n, pairs=args.pairs, scale=args.tolerance_scale)
    return {
        "command": "verify",
        "params": {"suite": args.suite, "seed": args.seed, "trials": args.trials, "grid_n": args.grid_n, "pairs": args.pairs},
        "checks": [c.to_dict() for c in checks],
        "all_passed": all(c.passed for c in checks),
    }


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="scarfkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def prices(sp):
        sp.add_argument("--p", type=float, help="unit selling price")
        sp.add_argument("--c", type=float, help="unit purchase cost")
        sp.add_argument("--q", type=float, help="unit salvage value")

    sp = sub.add_parser("scarf", help="minimax order quantity from moment information")
    prices(sp)
    sp.add_argument("--mean", type=float)
    sp.add_argument("--s2", type=float, help="demand variance")
    sp.add_argument("--a", type=float, help="lower end of the mean interval")
    sp.add_argument("--b", type=float, help="upper end of the mean interval")
    sp.add_argument("--d2", type=float, help="variance cap")
    sp.set_defaults(func=cmd_scarf)

    sp = sub.add_parser("classical", help="critical-fractile order for a known demand law")
    prices(sp)
    sp.add_argument("--demand", required=True, help="JSON distribution file")
    sp.set_defaults(func=cmd_classical)

    sp = sub.add_parser("metrics", help="distance between two distribution files")
    sp.add_argument("file_a")
    sp.add_argument("file_b")
    sp.add_argument("--metric")
    sp.add_argument("--all", action="store_true")
    sp.set_defaults(func=cmd_metrics)

    sp = sub.add_parser("counterexample", help="escaping and mean-leaking sequences")
    sp.add_argument("which", choices=("prop3", "prop5"))
    sp.add_argument("--base", help="base distribution file (prop3)")
    sp.add_argument("--r", type=float, help="Kolmogorov radius in (0, 1/2) (prop3)")
    sp.add_argument("--a", type=float, help="first absolute moment (prop5)")
    sp.add_argument("--n", default="1", help="index N or range N..M")
    sp.add_argument("--report", action="store_true", help="per-member diagnostics and tightness report")
    sp.add_argument("--epsilon", type=float, default=0.1)
    sp.set_defaults(func=cmd_counterexample)

    sp = sub.add_parser("verify", help="run the seeded oracle suites")
    sp.add_argument("--suite", default="all", choices=("scarf", "metrics", "envelope", "all"))
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--trials", type=int, default=10_000)
    sp.add_argument("--grid-n", type=int, default=10_001)
    sp.add_argument("--pairs", type=int, default=200)
    sp.add_argument("--tolerance-scale", type=float, default=1.0, help=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise UsageError("missing subcommand")
        payload = args.func(args)
    except UsageError as exc:
        print(f"scarfkit: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except InputFileError as exc:
        print(f"scarfkit: {exc}", file=sys.stderr)
        return EXIT_IO
    except DistributionError as exc:
        print(f"scarfkit: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    if payload.get("command") == "verify" and not payload["all_passed"]:
        return EXIT_DOMAIN
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
