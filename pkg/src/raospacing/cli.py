"""Command-line interface: ``rao-spacing <subcommand> ...``.

Every successful run prints one JSON object to stdout. Exit status is 0 on
success, 1 when a statistical computation fails and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Optional, Sequence

from . import exact, gramcharlier, moments, sim
from .errors import RaoSpacingError
from .spacings import read_angle_file, spacing_test

SCHEMA = "rao-spacing/1"


class UsageError(Exception):
    pass


def _order(text: str) -> int:
    d = int(text)
    if not moments.MIN_ORDER <= d <= moments.MAX_ORDER:
        raise argparse.ArgumentTypeError(
            f"order must be in {moments.MIN_ORDER}..{moments.MAX_ORDER}"
        )
    return d


def _sample_size(text: str) -> int:
    n = int(text)
    if n < 2:
        raise argparse.ArgumentTypeError("n must be at least 2")
    return n


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _probability(text: str) -> float:
    a = float(text)
    if not 0.0 < a < 1.0:
        raise argparse.ArgumentTypeError("must lie strictly between 0 and 1")
    return a


def _unit(text: str) -> str:
    if text.lower() in ("deg", "degree", "degrees"):
        return "degrees"
    if text.lower() in ("rad", "radian", "radians"):
        return "radians"
    raise argparse.ArgumentTypeError("unit must be deg or rad")


_METHODS = {"auto": "auto", "gc": "gram_charlier", "exact": "exact_quadrature"}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rao-spacing",
        description="Rao's spacing test of circular uniformity.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("test", help="test a file of angles for uniformity")
    p.add_argument("--file", required=True, help="one angle per line, '#' starts a comment")
    p.add_argument("--unit", type=_unit, default="degrees")
    p.add_argument("--order", type=_order, default=moments.DEFAULT_ORDER)
    p.add_argument("--method", choices=sorted(_METHODS), default="auto")
    p.add_argument("--small-n-threshold", type=int, default=7,
                   help="auto uses exact quadrature below this n (default 7)")

    p = sub.add_parser("cdf", help="null CDF of the statistic at one point")
    p.add_argument("--n", type=_sample_size, required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--unit", type=_unit, default="degrees")
    p.add_argument("--order", type=_order, default=moments.DEFAULT_ORDER)
    p.add_argument("--method", choices=sorted(_METHODS), default="gc")

    p = sub.add_parser("critval", help="upper-alpha critical value in degrees")
    p.add_argument("--n", type=_sample_size, required=True)
    p.add_argument("--alpha", type=_probability, required=True)
    p.add_argument("--order", type=_order, default=moments.DEFAULT_ORDER)

    p = sub.add_parser("moments", help="null raw moments and cumulants")
    p.add_argument("--n", type=_sample_size, required=True)
    p.add_argument("--order", type=_order, default=moments.DEFAULT_ORDER)

    p = sub.add_parser("simulate", help="Monte Carlo rejection rate")
    p.add_argument("--n", type=_sample_size, required=True)
    p.add_argument("--reps", type=_positive_int, required=True)
    p.add_argument("--alpha", type=_probability, default=0.05)
    p.add_argument("--alt", choices=["uniform", "vonmises"], default="uniform")
    p.add_argument("--mu", type=float, default=0.0, help="von Mises mean direction in degrees")
    p.add_argument("--kappa", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--fixed-critval", type=float, default=None, metavar="DEG",
                   help="reject when the statistic exceeds DEG instead of using P-values")
    p.add_argument("--order", type=_order, default=moments.DEFAULT_ORDER)
    return parser


def _cmd_test(args) -> dict:
    try:
        sample = read_angle_file(args.file, args.unit)
    except (OSError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    res = spacing_test(sample, _METHODS[args.method], args.order, args.small_n_threshold)
    return {
        "n": res.n,
        "statistic_deg": res.statistic_deg,
        "statistic_rad": res.statistic_rad,
        "p_value": res.p_value,
        "method": res.method,
        "order": res.truncation_order,
    }


def _cmd_cdf(args) -> dict:
    t = math.radians(args.t) if args.unit == "degrees" else args.t
    method = _METHODS[args.method]
    if method == "auto":
        method = "exact_quadrature" if args.n < 7 else "gram_charlier"
    out = {"n": args.n, "t_deg": math.degrees(t), "method": method}
    if method == "exact_quadrature":
        try:
            out["cdf"] = exact.exact_cdf(args.n, t)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        out["order"] = None
    else:
        val = gramcharlier.approximation(args.n, args.order).evaluate(t)
        out.update(cdf=val.value, order=args.order, clamped=val.clamped,
                   outside_support=val.outside_support)
    return out


def _cmd_critval(args) -> dict:
    cv = gramcharlier.critical_value(args.n, args.alpha, order=args.order)
    return {"n": args.n, "alpha": args.alpha, "critical_value_deg": cv, "order": args.order}


def _cmd_moments(args) -> dict:
    ms = moments.moment_set(args.n, args.order)
    cs = moments.cumulants(ms)
    return {
        "n": args.n,
        "order": args.order,
        "raw_moments": ms.as_floats(),
        "raw_cumulants": list(cs.raw_cumulants),
        "standardized_cumulants": list(cs.standardized_cumulants),
    }


def _cmd_simulate(args) -> dict:
    try:
        config = sim.ExperimentConfig(
            n=args.n,
            reps=args.reps,
            alpha=args.alpha,
            alternative="von_mises" if args.alt == "vonmises" else "uniform",
            mu=math.radians(args.mu),
            kappa=args.kappa,
            seed=args.seed,
            method="gram_charlier" if args.fixed_critval is None else "fixed_critical_value",
            fixed_critical_value_deg=args.fixed_critval,
            order=args.order,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    report = sim.run_experiment(config)
    return {"n": args.n, "alpha": args.alpha, "alternative": config.alternative,
            **report.asdict()}


_COMMANDS = {
    "test": _cmd_test,
    "cdf": _cmd_cdf,
    "critval": _cmd_critval,
    "moments": _cmd_moments,
    "simulate": _cmd_simulate,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse ``argv``, run the subcommand and return the exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        payload = _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"rao-spacing {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except RaoSpacingError as exc:
        print(f"rao-spacing {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    payload = {"schema": SCHEMA, "command": args.command, **payload}
    print(json.dumps(payload, sort_keys=True))
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
