"""Sweep the spin-orbit scenario over l and tabulate criterion vs oracle.

Only the two stretch states (|m_j| = l + 1/2) are products; the sweep shows
they are the sole INCONCLUSIVE / DETERMINISTIC states at every l.
"""

import argparse
import time

from csco_criterion.criterion import CriterionVerdict, OracleVerdict, evaluate_criterion
from csco_criterion.harness import builtin_scenario
from csco_criterion.harness.builtins import MAX_L


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--lmax", type=int, default=8, help=f"largest l to evaluate (<= {MAX_L})")
    args = ap.parse_args()

    print(f"{'l':>3} {'dim':>4} {'predicted':>9} {'dependent':>9} {'determ.':>7} {'rank1':>5} {'disagree':>8} {'sec':>7}")
    for l in range(args.lmax + 1):
        t0 = time.perf_counter()
        r = evaluate_criterion(builtin_scenario("spin_orbit", l=l))
        dt = time.perf_counter() - t0
        predicted = sum(sv.criterion_verdict is CriterionVerdict.PREDICTED_ENTANGLED for sv in r.states)
        dependent = sum(sv.oracle_verdict is OracleVerdict.DEPENDENT for sv in r.states)
        determ = sum(sv.oracle_verdict is OracleVerdict.DETERMINISTIC for sv in r.states)
        rank1 = sum(sv.schmidt_rank == 1 for sv in r.states)
        print(f"{l:>3} {len(r.states):>4} {predicted:>9} {dependent:>9} {determ:>7} {rank1:>5} "
              f"{len(r.disagreements):>8} {dt:7.3f}")


if __name__ == "__main__":
    main()
