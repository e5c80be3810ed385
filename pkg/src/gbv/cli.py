"""Command line: ``gbv verify`` runs suites on a scenario, ``gbv eval`` evaluates an expression.

Exit codes: 0 every check passed, 1 some check failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import sys

from . import connections as cn
from . import derham as dr
from .oddpoisson import exp_nilpotent, master_defect
from .scenario import Scenario, ScenarioError, parse_scenario
from .schouten import del_mu
from .suites import SUITES, SuiteError, run
from .supernum import DimensionError, ParityError, ParseError, SuperFunction, parse

__all__ = ["main", "evaluate", "eval_functions"]

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def eval_functions(sc: Scenario) -> dict:
    """Operators available inside ``gbv eval`` expressions for this scenario."""
    gen = sc.generator()
    fns = {
        "delta": gen,
        "bracket": gen.bracket,
        "master": lambda w: master_defect(gen, w),
        "exp": exp_nilpotent,
    }
    if sc.model == "schouten":
        fns["del_mu"] = lambda A: del_mu(sc.w, A)
        if sc.connection is not None:
            fns["koszul_delta"] = lambda A: cn.koszul_delta(sc.connection, A)
            fns["delta_lc"] = cn.schouten_lc_generator(sc.connection)
    else:
        fns["d"] = dr.d
        if sc.P is not None:
            P = sc.P
            fns["i_P"] = lambda a: dr.i_P(P, a)
            fns["del_P"] = lambda a: dr.del_P(P, a)
            fns["poisson"] = lambda f, g: dr.poisson_bracket(P, f, g)
    return fns


def evaluate(sc: Scenario, expr: str) -> str:
    """Evaluate ``expr`` in the scenario's algebra and return its normal form."""
    value: SuperFunction = parse(expr, sc.m, sc.m, eval_functions(sc))
    return value.format(sc.odd_name)


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gbv", description="Exact checks for odd brackets and their generators.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run verification suites on a scenario")
    v.add_argument("scenario", help="scenario JSON file ('-' for stdin)")
    v.add_argument("--suite", action="append", dest="suites", metavar="NAME", help=f"one of: {', '.join(SUITES)}")
    v.add_argument("--trials", type=int)
    v.add_argument("--seed")
    v.add_argument("--format", choices=("json", "text"), default="text")
    v.add_argument("--no-timing", action="store_true", help="omit elapsed times (byte-stable output)")

    e = sub.add_parser("eval", help="evaluate an expression such as 'delta(x1*xi1)'")
    e.add_argument("scenario")
    e.add_argument("--expr", required=True)

    sub.add_parser("suites", help="list suite names")
    return p


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _seed(text):
    if text is None:
        return None
    try:
        return int(text)
    except ValueError:
        return text


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    if args.command == "suites":
        for name in SUITES:
            print(name)
        return EXIT_PASS
    try:
        sc = parse_scenario(_read(args.scenario))
    except OSError as exc:
        print(f"gbv: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ScenarioError as exc:
        for err in exc.errors:
            print(f"gbv: {args.scenario}: {err}", file=sys.stderr)
        return EXIT_USAGE

    if args.command == "eval":
        try:
            print(evaluate(sc, args.expr))
        except (ParseError, ParityError, DimensionError, ValueError) as exc:
            print(f"gbv: {exc}", file=sys.stderr)
            return EXIT_USAGE
        return EXIT_PASS

    if args.trials is not None and args.trials < 0:
        print("gbv: --trials must be non-negative", file=sys.stderr)
        return EXIT_USAGE
    try:
        report = run(sc, args.suites, args.trials, _seed(args.seed))
    except SuiteError as exc:
        print(f"gbv: {exc}", file=sys.stderr)
        return EXIT_USAGE
    timing = not args.no_timing
    print(report.to_json(timing) if args.format == "json" else report.to_text(timing))
    return EXIT_PASS if report.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
