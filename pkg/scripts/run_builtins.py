"""Evaluate every built-in scenario, write JSON reports, print a summary table.

    python3 scripts/run_builtins.py --out reports/
"""

import argparse
import collections
from pathlib import Path

from csco_criterion.criterion import evaluate_criterion
from csco_criterion.harness import BUILTINS, builtin_scenarios, render_report


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=None, help="directory for <scenario>.json reports")
    ap.add_argument("--l", type=int, default=1, help="orbital l for spin_orbit")
    args = ap.parse_args()
    if args.out is not None:
        args.out.mkdir(parents=True, exist_ok=True)

    print(f"{'scenario':<16} {'states':>6} {'(a)':>4} {'predicted':>9} {'dependent':>9} {'disagree':>8}  C vs expected")
    for name in BUILTINS:
        for scenario in builtin_scenarios(name, args.l):
            r = evaluate_criterion(scenario)
            verdicts = collections.Counter(sv.criterion_verdict.value for sv in r.states)
            oracles = collections.Counter(sv.oracle_verdict.value for sv in r.states)
            if r.expected_c_match is None:
                match = "-"
            else:
                match = "ok" if all(all(row) for row in r.expected_c_match) else "MISMATCH"
            print(f"{r.scenario:<16} {len(r.states):>6} {'T' if r.condition_a else 'F':>4} "
                  f"{verdicts['PREDICTED_ENTANGLED']:>9} {oracles['DEPENDENT']:>9} "
                  f"{len(r.disagreements):>8}  {match}")
            if args.out is not None:
                path = args.out / (r.scenario.replace(":", "_") + ".json")
                path.write_text(render_report(r, "json"))


if __name__ == "__main__":
    main()
