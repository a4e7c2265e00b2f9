"""Exhaustive census of 2-qubit Pauli-string A-sets against local B-sets.

Every pair of commuting, independent, non-identity Pauli strings is a complete
A-set on two qubits; every (P(1), Q(2)) with P, Q in {X, Y, Z} is a complete
B-set. For each combination we count how often the criterion verdict and the
distribution oracle disagree, split by whether the A-basis is entangled.
"""

import argparse
import collections
import itertools

import numpy as np

from csco_criterion.criterion import CriterionVerdict, OracleVerdict, evaluate_criterion
from csco_criterion.opexpr import scenario_from_dict

PAULI = {"I": np.eye(2), "X": np.array([[0, 1], [1, 0]]),
         "Y": np.array([[0, -1j], [1j, 0]]), "Z": np.diag([1, -1])}


def _strings():
    return [a + b for a, b in itertools.product("IXYZ", repeat=2) if a + b != "II"]


def _matrix(p):
    return np.kron(PAULI[p[0]], PAULI[p[1]])


def _expr(p):
    factors = [f"{c}({k + 1})" for k, c in enumerate(p) if c != "I"]
    return "*".join(factors)


def _a_sets():
    out = []
    for p, q in itertools.combinations(_strings(), 2):
        mp, mq = _matrix(p), _matrix(q)
        # distinct commuting strings are independent, so the pair is complete
        if np.allclose(mp @ mq, mq @ mp):
            out.append((p, q))
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true", help="list every disagreeing scenario")
    args = ap.parse_args()

    layout = [{"kind": "spin", "s": 0.5}] * 2
    tally = collections.Counter()
    for (p, q), (u, v) in itertools.product(_a_sets(), itertools.product("XYZ", repeat=2)):
        doc = {
            "name": f"A=({p},{q}) B=({u}1,{v}2)",
            "subsystems": layout,
            "A": [{"name": p, "expr": _expr(p)}, {"name": q, "expr": _expr(q)}],
            "B": [{"name": f"{u}1", "expr": f"{u}(1)"}, {"name": f"{v}2", "expr": f"{v}(2)"}],
            "bipartition": [[1], [2]],
        }
        r = evaluate_criterion(scenario_from_dict(doc))
        for sv in r.states:
            kind = "entangled basis" if sv.schmidt_rank == 2 else "product basis"
            predicted = sv.criterion_verdict is CriterionVerdict.PREDICTED_ENTANGLED
            tally[kind, predicted, sv.oracle_verdict.value] += 1
        if args.verbose and r.disagreements:
            print(f"disagree on {len(r.disagreements)} state(s): {r.scenario}")

    print(f"{'A-eigenstate':<16} {'criterion':<20} {'oracle':<14} {'count':>6}")
    for (kind, predicted, oracle), n in sorted(tally.items()):
        verdict = "PREDICTED_ENTANGLED" if predicted else "INCONCLUSIVE"
        print(f"{kind:<16} {verdict:<20} {oracle:<14} {n:>6}")
    total = sum(tally.values())
    bad = sum(n for (_, predicted, oracle), n in tally.items() if predicted != (oracle == OracleVerdict.DEPENDENT.value))
    print(f"disagreement rate: {bad}/{total} = {bad / total:.3f}")


if __name__ == "__main__":
    main()
