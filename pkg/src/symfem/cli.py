"""``symfem`` command line: solve, converge, invariance, painleve-series, burgers."""

from __future__ import annotations

import argparse
import json
import sys

from . import harness
from .burgers import SimulationError
from .harness import ConfigError, ExperimentError, ProblemId
from .schemes import MarchError, SchemeId, StartUp

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3


def _pair(text: str) -> tuple[float, float]:
    try:
        a, b = (float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'a,b', got {text!r}") from None
    if not a < b:
        raise argparse.ArgumentTypeError(f"need a < b, got {text!r}")
    return a, b


def _int_list(text: str) -> list[int]:
    try:
        values = [int(v) for v in text.split(",") if v]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not values or min(values) < 2:
        raise argparse.ArgumentTypeError("resolutions must be integers >= 2")
    return values


def _add_problem_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--problem", required=True, type=ProblemId, choices=list(ProblemId), metavar="ID",
                   help=", ".join(m.value for m in ProblemId))
    p.add_argument("--scheme", required=True, type=SchemeId, choices=list(SchemeId), metavar="ID",
                   help=", ".join(m.value for m in SchemeId))


def _add_ic_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--interval", type=_pair, default=(0.0, 1.0))
    p.add_argument("--u0", type=float, default=None)
    p.add_argument("--ux0", type=float, default=None)
    p.add_argument("--start", type=StartUp, choices=list(StartUp), metavar="NAME", default=None,
                   help="start-up for the second node: " + ", ".join(m.value for m in StartUp))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="symfem", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="march one resolution and write x, u, exact")
    _add_problem_args(p)
    p.add_argument("--n", type=int, required=True)
    _add_ic_args(p)
    p.add_argument("--out", required=True)

    p = sub.add_parser("converge", help="convergence ladder with a fitted order")
    _add_problem_args(p)
    p.add_argument("--n-list", type=_int_list, default=list(harness.DEFAULT_LADDER))
    _add_ic_args(p)
    p.add_argument("--json", default=None)

    p = sub.add_parser("invariance", help="zero-set equivariance audit")
    _add_problem_args(p)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--samples", type=int, default=100)

    p = sub.add_parser("painleve-series", help="pointwise errors of both Painleve schemes")
    p.add_argument("--out", required=True)

    p = sub.add_parser("burgers", help="Burgers run from a JSON config")
    p.add_argument("--config", required=True)
    p.add_argument("--out-prefix", required=True)
    return parser


def _ic(args) -> tuple[float, float]:
    d0, d1 = harness.DEFAULT_IC[args.problem]
    return (d0 if args.u0 is None else args.u0, d1 if args.ux0 is None else args.ux0)


def _cmd_solve(args) -> int:
    u0, ux0 = _ic(args)
    x, u, ue = harness.solve(args.problem, args.scheme, args.n, args.interval, u0, ux0, args.start)
    harness.write_csv(args.out, ("x", "u", "u_exact"), zip(x, u, ue))
    print(f"relative l_inf error {harness.relative_linf_error(u, ue):.6e}")
    return EXIT_OK


def _cmd_converge(args) -> int:
    table = harness.run_convergence(args.problem, args.scheme, args.n_list, _ic(args), args.interval, args.start)
    print("n_elements,h,rel_linf_error")
    for n, h, e in table.rows:
        print(f"{n},{harness.format_float(h)},{harness.format_float(e)}")
    print(f"# fitted order {table.fitted_order:.4f}")
    if args.json:
        harness.write_json(args.json, table.as_dict())
    return EXIT_OK


def _cmd_invariance(args) -> int:
    if args.samples < 1:
        raise ConfigError("samples", "must be positive")
    report = harness.run_invariance_audit(args.problem, args.scheme, args.seed, args.samples)
    print(json.dumps(report.as_dict(), indent=2, sort_keys=True))
    return EXIT_OK


def _cmd_painleve(args) -> int:
    series = harness.run_painleve_error_series()
    harness.write_csv(args.out, ("x", "err_invariant", "err_noninvariant"), series.rows())
    return EXIT_OK


def _cmd_burgers(args) -> int:
    result = harness.run_burgers(args.config)
    harness.write_trajectory(f"{args.out_prefix}.csv", result.snapshots)
    harness.write_json(f"{args.out_prefix}.json", result.summary)
    print(json.dumps(result.summary, sort_keys=True))
    return EXIT_OK


COMMANDS = {
    "solve": _cmd_solve,
    "converge": _cmd_converge,
    "invariance": _cmd_invariance,
    "painleve-series": _cmd_painleve,
    "burgers": _cmd_burgers,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (MarchError, ExperimentError, SimulationError, ArithmeticError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ConfigError, ValueError, OSError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
