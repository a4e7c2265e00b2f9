"""Command-line interface: ``csco-check {check,builtin,list}``.

Exit codes: 0 evaluation completed (criterion/oracle disagreements are
findings, not failures), 2 input or parse error, 3 internal numeric failure.
"""

import argparse
import sys
from dataclasses import replace

from ..criterion import evaluate_criterion
from ..errors import CscoError, NumericFailure
from ..numerics import DEFAULT_MAX_DIM
from ..opexpr import load_scenario
from .builtins import BUILTINS, builtin_scenarios
from .report import render_report

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NUMERIC = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser():
    parser = _Parser(prog="csco-check", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    check = sub.add_parser("check", help="evaluate a scenario JSON file")
    check.add_argument("file")
    check.add_argument("--json", action="store_true", help="emit the JSON report")
    check.add_argument("--max-dim", type=int, default=DEFAULT_MAX_DIM)
    check.add_argument("--tol-zero", type=float, default=None)
    check.add_argument("--tol-cluster", type=float, default=None)

    builtin = sub.add_parser("builtin", help="evaluate a built-in scenario")
    builtin.add_argument("name", choices=sorted(BUILTINS))
    builtin.add_argument("--l", type=int, default=1, help="orbital l for spin_orbit")
    builtin.add_argument("--json", action="store_true", help="emit the JSON report")

    sub.add_parser("list", help="list built-in scenarios")
    return parser


def _run(args):
    if args.command == "list":
        for name, (_, description) in BUILTINS.items():
            print(f"{name:<14} {description}")
        return EXIT_OK

    if args.command == "check":
        scenario = load_scenario(args.file, max_dim=args.max_dim)
        overrides = {}
        if args.tol_zero is not None:
            overrides["zero_tol"] = args.tol_zero
        if args.tol_cluster is not None:
            overrides["cluster_tol"] = args.tol_cluster
        if overrides:
            scenario = replace(scenario, tolerances=scenario.tolerances.with_overrides(**overrides))
        reports = evaluate_criterion(scenario)
    else:
        reports = [evaluate_criterion(s) for s in builtin_scenarios(args.name, args.l)]
        if len(reports) == 1:
            reports = reports[0]

    sys.stdout.write(render_report(reports, "json" if args.json else "text"))
    return EXIT_OK


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # usage errors and --help; report the code instead of raising
        return exc.code
    try:
        return _run(args)
    except NumericFailure as exc:
        print(f"csco-check: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except CscoError as exc:
        print(f"csco-check: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
