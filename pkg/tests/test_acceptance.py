"""Acceptance gate: one test per criterion, each printing a [PASS]/[FAIL] line.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines inline; they are
also repeated in the terminal summary.
"""

import re
from pathlib import Path

import numpy as np
import pytest
from sympy import Rational
from sympy.physics.quantum.cg import CG

from csco_criterion.criterion import (
    CriterionVerdict,
    OracleVerdict,
    evaluate_criterion,
    expansion_coefficients,
    uncertainty_check,
)
from csco_criterion.harness import BUILTINS, builtin_scenario, builtin_scenarios
from csco_criterion.harness.cli import EXIT_INPUT, main
from csco_criterion.numerics import hermitian_eig
from csco_criterion.opexpr import SubsystemLayout, evaluate_expr, parse_operator_expr, pretty
from gate import report
from paulis import DOWN, I2, UP, X, Y, Z, kr, random_hermitian, random_state

S = 1 / np.sqrt(2)
MALFORMED = sorted((Path(__file__).parent / "data" / "malformed").glob("*.json"))


def _all_builtin_scenarios():
    out = []
    for name in BUILTINS:
        out += builtin_scenarios(name)
    out += builtin_scenarios("spin_orbit", l=2)
    return out


@pytest.fixture(scope="module")
def builtin_reports():
    return [evaluate_criterion(s) for s in _all_builtin_scenarios()]


def _outcomes(sv):
    return {tuple(np.round(lab, 9) + 0.0): p for lab, p in sv.distribution.support}


def test_criterion_1_operator_identities():
    failures = []
    two = np.linalg.norm(kr(X, X) @ kr(Y, Y) @ kr(Z, Z) + np.eye(4))
    if two > 1e-12:
        failures.append(f"2-qubit product residual {two:.2e}")
    layout = SubsystemLayout.of_spins(0.5, 0.5, 0.5)
    ops = [evaluate_expr(parse_operator_expr(t, layout), layout)
           for t in ["X(1)*Y(2)*Y(3)", "Y(1)*X(2)*Y(3)", "Y(1)*Y(2)*X(3)", "X(1)*X(2)*X(3)"]]
    three = np.linalg.norm(ops[0] @ ops[1] @ ops[2] @ ops[3] + np.eye(8))
    if three > 1e-12:
        failures.append(f"3-qubit product residual {three:.2e}")
    report(1, f"operator identities (residuals {two:.1e}, {three:.1e} <= 1e-12)", failures)


def _cg_oracle(l, j, mj):
    """Squared Clebsch-Gordan weights {(m_l, m_s): p} from sympy."""
    half = Rational(1, 2)
    out = {}
    for ms in (half, -half):
        ml = mj - ms
        if abs(ml) <= l:
            p = float(CG(l, ml, half, ms, j, mj).doit() ** 2)
            if p > 0:
                out[(float(ml), float(ms))] = p
    return out


def _closed_form(l, j, mj):
    """Coupled-state weights written out by hand for j = l +- 1/2."""
    m = mj - 0.5
    up, down = (l + m + 1) / (2 * l + 1), (l - m) / (2 * l + 1)
    if j < l:
        up, down = down, up
    return {k: p for k, p in {(m, 0.5): up, (m + 1, -0.5): down}.items() if p > 0}


def _check_spin_orbit(l, failures):
    r = evaluate_criterion(builtin_scenario("spin_orbit", l=l))
    for sv in r.states:
        j2, mj = sv.a_labels
        j = (np.sqrt(1 + 4 * j2) - 1) / 2
        j_half, mj_half = int(round(2 * j)), int(round(2 * mj))
        got = _outcomes(sv)
        want = _closed_form(l, j_half / 2, mj_half / 2)
        oracle = _cg_oracle(l, Rational(j_half, 2), Rational(mj_half, 2))
        for ref, name in ((want, "closed form"), (oracle, "sympy CG")):
            if got.keys() != ref.keys() or any(abs(got[k] - ref[k]) > 1e-10 for k in ref):
                failures.append(f"l={l} j={j_half}/2 m_j={mj_half}/2 vs {name}: {got}")
        stretch = abs(mj_half) == 2 * l + 1
        if stretch and sv.oracle_verdict is not OracleVerdict.DETERMINISTIC:
            failures.append(f"l={l} stretch m_j={mj_half}/2 is {sv.oracle_verdict.value}")
        if not stretch and len(got) != 2:
            failures.append(f"l={l} interior m_j={mj_half}/2 has {len(got)}-point support")
    return r


def test_criterion_2_spin_orbit_probabilities():
    failures = []
    r = _check_spin_orbit(1, failures)
    sv = next(sv for sv in r.states if np.allclose(sv.a_labels, (3.75, 0.5)))
    got = _outcomes(sv)
    if abs(got.get((0.0, 0.5), 0) - 2 / 3) > 1e-10 or abs(got.get((1.0, -0.5), 0) - 1 / 3) > 1e-10:
        failures.append(f"l=1 j=3/2 m_j=1/2 distribution {got}")
    _check_spin_orbit(2, failures)
    report(2, "spin-orbit probabilities for l=1 and l=2 (1e-10), stretch states DETERMINISTIC", failures)


def test_criterion_3_bell():
    failures = []
    expected = [
        S * (kr(UP, UP) + kr(DOWN, DOWN)),
        S * (kr(UP, UP) - kr(DOWN, DOWN)),
        S * (kr(UP, DOWN) + kr(DOWN, UP)),
        S * (kr(UP, DOWN) - kr(DOWN, UP)),
    ]
    for s in builtin_scenarios("bell"):
        r = evaluate_criterion(s)
        vecs = r.a_basis.vectors
        for e in expected:
            best = np.abs(vecs.conj().T @ e).max()
            if best < 1 - 1e-9:
                failures.append(f"{s.name}: best overlap {best:.12f}")
        for sv in r.states:
            if (sv.criterion_verdict is not CriterionVerdict.PREDICTED_ENTANGLED
                    or sv.oracle_verdict is not OracleVerdict.DEPENDENT):
                failures.append(f"{s.name} state {sv.index}: {sv.criterion_verdict.value}/"
                                f"{sv.oracle_verdict.value}")
        # entrywise comparison against the transcribed expected grid
        for i, row in enumerate(s.expected_c):
            for j, (text, tree) in enumerate(row):
                want = evaluate_expr(tree, s.layout)
                diff = np.abs(r.commutator.entries[i][j] - want).max()
                if diff > 1e-10:
                    failures.append(f"{s.name} C[{i + 1},{j + 1}] differs from {text!r} by {diff:.3g}")
    report(3, "Bell eigenbasis, verdicts, and C vs expected grids (1e-10)", failures)


def test_criterion_4_two_electron():
    failures = []
    r = evaluate_criterion(builtin_scenario("two_electron"))
    want = {
        (0.0, 0.0): (CriterionVerdict.PREDICTED_ENTANGLED, OracleVerdict.DEPENDENT, 2),
        (2.0, 0.0): (CriterionVerdict.PREDICTED_ENTANGLED, OracleVerdict.DEPENDENT, 2),
        (2.0, 1.0): (CriterionVerdict.INCONCLUSIVE, OracleVerdict.DETERMINISTIC, 1),
        (2.0, -1.0): (CriterionVerdict.INCONCLUSIVE, OracleVerdict.DETERMINISTIC, 1),
    }
    seen = set()
    for sv in r.states:
        if sv.expectation_max > 1e-10:
            failures.append(f"state {sv.a_labels}: max |<C>| = {sv.expectation_max:.2e}")
        key = tuple(np.round(sv.a_labels, 9) + 0.0)
        seen.add(key)
        got = (sv.criterion_verdict, sv.oracle_verdict, sv.schmidt_rank)
        if want.get(key) != got:
            failures.append(f"state {key}: {got}")
    if seen != set(want):
        failures.append(f"labels {sorted(seen)}")
    report(4, "two-electron literal (b) vanishes, operational verdicts and Schmidt ranks", failures)


def test_criterion_5_ghz():
    failures = []
    for s in builtin_scenarios("ghz"):
        r = evaluate_criterion(s)
        labels = {tuple(int(round(x)) for x in lab) for lab in r.a_basis.labels}
        if not r.a_status.complete or len(labels) != 8 or not labels <= {
                (a, b, c) for a in (-1, 1) for b in (-1, 1) for c in (-1, 1)}:
            failures.append(f"{s.name}: A-set labels {sorted(labels)}")
        if len(r.states) != 8:
            failures.append(f"{s.name}: {len(r.states)} states")
        for sv in r.states:
            if (sv.criterion_verdict is not CriterionVerdict.PREDICTED_ENTANGLED
                    or sv.oracle_verdict is not OracleVerdict.DEPENDENT):
                failures.append(f"{s.name} state {sv.index}: {sv.criterion_verdict.value}/"
                                f"{sv.oracle_verdict.value}")
        if not all(r.condition_a_rows):
            failures.append(f"{s.name}: condition (a) rows {r.condition_a_rows}")
    report(5, "GHZ complete CSCO, 8 states entangled and dependent, condition (a) on all rows", failures)


def test_criterion_6_counterexample():
    failures = []
    r = evaluate_criterion(builtin_scenario("plus_product"))
    for sv in r.states:
        if sv.criterion_verdict is not CriterionVerdict.PREDICTED_ENTANGLED:
            failures.append(f"state {sv.index}: {sv.criterion_verdict.value}")
        if sv.oracle_verdict is not OracleVerdict.INDEPENDENT or sv.agreement is not False:
            failures.append(f"state {sv.index}: {sv.oracle_verdict.value}, agreement {sv.agreement}")
        probs = [p for _, p in sv.distribution.support]
        if len(probs) != 4 or max(abs(p - 0.25) for p in probs) > 1e-12:
            failures.append(f"state {sv.index}: distribution {probs}")
        if abs(sv.distribution.pairwise_mutual_information[0, 1]) > 1e-12:
            failures.append(f"state {sv.index}: MI {sv.distribution.pairwise_mutual_information[0, 1]}")
    report(6, "plus_product surfaces PREDICTED_ENTANGLED with INDEPENDENT outcomes", failures)


def test_criterion_7_property_suites(builtin_reports):
    failures = []
    rng = np.random.default_rng(20240601)
    worst = np.inf
    for _ in range(100):
        n = int(rng.choice([2, 4, 6, 8]))
        a, b, psi = random_hermitian(rng, n), random_hermitian(rng, n), random_state(rng, n)
        da, db, bound = uncertainty_check(a, b, psi)
        worst = min(worst, da * db - bound)
    if worst < -1e-9:
        failures.append(f"Robertson slack {worst:.3e}")

    exp_max = max(sv.expectation_max for r in builtin_reports for sv in r.states)
    if exp_max > 1e-10:
        failures.append(f"builtin max |<C>| = {exp_max:.2e}")

    res_max = orth_max = 0.0
    for _ in range(100):
        n = int(rng.integers(2, 17))
        m = random_hermitian(rng, n)
        vals, vecs = hermitian_eig(m)
        sc = max(1.0, np.linalg.norm(m))
        res_max = max(res_max, np.linalg.norm(m @ vecs - vecs * vals, axis=0).max() / sc)
        orth_max = max(orth_max, np.abs(vecs.conj().T @ vecs - np.eye(n)).max() / sc)
    if res_max > 1e-10 or orth_max > 1e-10:
        failures.append(f"eigensolver residual {res_max:.2e}, orthonormality {orth_max:.2e}")

    rec_max = 0.0
    for r in builtin_reports:
        for sv in r.states:
            amps = expansion_coefficients(sv.state, r.b_basis)
            rec_max = max(rec_max, np.linalg.norm(r.b_basis.vectors @ amps - sv.state),
                          abs(np.sum(np.abs(amps) ** 2) - 1))
    if rec_max > 1e-9:
        failures.append(f"expansion reconstruction {rec_max:.2e}")
    report(7, f"properties: Robertson min slack {worst:.1e}, builtin max|<C>| {exp_max:.1e}, "
              f"eig residual {res_max:.1e}, reconstruction {rec_max:.1e}", failures)


EXTRA_EXPRESSIONS = [
    "-X(1)^2",
    "(X(1)^2)^3",
    "X(1) - (Y(1) - Z(1))",
    "X(1)*(Y(1)*Z(1))",
    "2.5*i*Id",
    "1e-05*Sz(1) + 3*Sm(2)",
    "0.1*Sp(1)*Sm(1)",
]


def test_criterion_8_parser(capsys):
    failures = []
    corpus = []
    for s in _all_builtin_scenarios():
        rows = [e.text for e in s.a_set + s.b_set]
        rows += [text for row in (s.expected_c or ()) for text, _ in row]
        corpus += [(text, s.layout) for text in rows]
    qubits = SubsystemLayout.of_spins(0.5, 0.5)
    corpus += [(text, qubits) for text in EXTRA_EXPRESSIONS]
    distinct = {text for text, _ in corpus}
    if len(distinct) < 20:
        failures.append(f"corpus has {len(distinct)} distinct expressions")
    for text, layout in corpus:
        tree = parse_operator_expr(text, layout)
        again = parse_operator_expr(pretty(tree), layout)
        if again != tree:
            failures.append(f"round trip changed {text!r}")
        elif np.abs(evaluate_expr(again, layout) - evaluate_expr(tree, layout)).max() != 0:
            failures.append(f"round trip changed the value of {text!r}")

    if len(MALFORMED) != 5:
        failures.append(f"{len(MALFORMED)} malformed files")
    for path in MALFORMED:
        code = main(["check", str(path)])
        err = capsys.readouterr().err
        if code != EXIT_INPUT or not re.search(r"line \d+, column \d+", err):
            failures.append(f"{path.name}: exit {code}, stderr {err.strip()!r}")
    report(8, f"parser round trip on {len(distinct)} expressions, {len(MALFORMED)} malformed files exit 2 "
              "with positions", failures)
