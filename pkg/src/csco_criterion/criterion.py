"""The commutator-matrix entanglement criterion and its brute-force oracles.

For A-eigenstates psi the criterion predicts that simultaneous measurements
of the B-set are correlated when every row i of C_ij = i[B_i, A_j] has a
nonzero entry (condition a) and the state is not annihilated row-wise
(condition b). The prediction is then compared with the exact joint outcome
distribution of the B-set on psi and, when a bipartition is declared, with
the Schmidt rank of psi.

Two readings of condition (b) are computed. The literal one uses the
expectation values <psi|C_ij|psi>; these vanish identically on any
normalizable A-eigenstate, since for A_j psi = a psi we get
<psi|B_i A_j - A_j B_i|psi> = a<B_i> - a<B_i> = 0. The operational one asks
whether C_ij psi = i(a - A_j) B_i psi is nonzero, which certifies that psi
is not an eigenstate of B_i. Verdicts use the operational reading.

Continuous-spectrum systems (canonical x, p pairs and their
non-normalizable eigenstates) are outside the dense finite-dimensional
model and are not handled here.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations

import numpy as np

from .csco import ObservableSet, analyze, check_completeness
from .errors import ContractError, DimensionError, InputError
from .numerics import DEFAULT_TOL, comm_i, fro, normalize, scale
from .opexpr import evaluate_expr, subsystems_of

log = logging.getLogger(__name__)


class CriterionVerdict(str, Enum):
    PREDICTED_ENTANGLED = "PREDICTED_ENTANGLED"
    INCONCLUSIVE = "INCONCLUSIVE"


class OracleVerdict(str, Enum):
    DETERMINISTIC = "DETERMINISTIC"
    INDEPENDENT = "INDEPENDENT"
    DEPENDENT = "DEPENDENT"
    UNAVAILABLE = "UNAVAILABLE"


@dataclass(frozen=True)
class CommutatorMatrix:
    """Grid C[i][j] = i[B_i, A_j]; rows follow the B-set, columns the A-set."""

    entries: tuple
    entry_norms: np.ndarray

    @property
    def shape(self):
        return self.entry_norms.shape

    @property
    def dim(self):
        return self.entries[0][0].shape[0]


def build_commutator_matrix(b_set, a_set):
    if b_set.dim != a_set.dim:
        raise DimensionError(f"B-set dim {b_set.dim} differs from A-set dim {a_set.dim}")
    entries = tuple(tuple(comm_i(b, a) for a in a_set.operators) for b in b_set.operators)
    norms = np.array([[fro(c) for c in row] for row in entries])
    return CommutatorMatrix(entries, norms)


def condition_a(c, tol=DEFAULT_TOL):
    """Per row: does some C_ij differ from the zero operator?"""
    threshold = tol.zero_tol * max(1, c.dim)
    return tuple(bool(np.any(row > threshold)) for row in c.entry_norms)


def _check_ket(c, psi):
    psi = np.asarray(psi, dtype=complex).ravel()
    if psi.shape[0] != c.dim:
        raise DimensionError(f"state of dim {psi.shape[0]} against operators of dim {c.dim}")
    return psi


def expectation_matrix(c, psi):
    psi = _check_ket(c, psi)
    return np.array([[np.real(np.vdot(psi, op @ psi)) for op in row] for row in c.entries])


def action_norm_matrix(c, psi):
    psi = _check_ket(c, psi)
    return np.array([[np.linalg.norm(op @ psi) for op in row] for row in c.entries])


def _spread(op, psi):
    mean = np.real(np.vdot(psi, op @ psi))
    second = np.real(np.vdot(op @ psi, op @ psi))
    return float(np.sqrt(max(second - mean * mean, 0.0)))


def uncertainty_check(a_j, b_i, psi):
    """Return (Delta A, Delta B, |<i[B, A]>|/2) for the Robertson relation."""
    psi = np.asarray(psi, dtype=complex).ravel()
    bound = abs(np.vdot(psi, comm_i(b_i, a_j) @ psi)) / 2
    return _spread(a_j, psi), _spread(b_i, psi), float(bound)


def expansion_coefficients(psi, basis):
    """Amplitudes <b|psi> for every vector b of the basis."""
    return basis.vectors.conj().T @ np.asarray(psi, dtype=complex).ravel()


def _entropy(p):
    p = p[p > 0]
    return float(-np.sum(p * np.log(p)))


def mutual_information(joint):
    """I(X;Y) in nats from a 2-d joint probability table (0 log 0 = 0)."""
    joint = np.clip(joint, 0.0, None)
    px, py = joint.sum(axis=1), joint.sum(axis=0)
    outer = np.outer(px, py)
    mask = (joint > 0) & (outer > 0)
    return float(np.sum(joint[mask] * np.log(joint[mask] / outer[mask])))


@dataclass(frozen=True)
class OutcomeDistribution:
    support: tuple  # ((b_labels, p), ...) for p > prob_tol
    marginals: tuple  # per B observable: {eigenvalue: p}
    pairwise_mutual_information: np.ndarray
    total_correlation: float
    probabilities: np.ndarray  # aligned with the B basis vectors
    cluster_ids: tuple

    @property
    def max_probability(self):
        return float(self.probabilities.max())


def joint_distribution(psi, b_basis, tol=DEFAULT_TOL):
    """Joint distribution of simultaneous B-measurement outcomes on ``psi``."""
    if not check_completeness(b_basis, tol).complete:
        raise ContractError("joint distribution needs a complete B-set (non-degenerate labels)")
    amps = expansion_coefficients(normalize(psi), b_basis)
    probs = np.abs(amps) ** 2
    n_ops = len(b_basis.cluster_ids[0])
    ids = np.array(b_basis.cluster_ids, dtype=int)

    support = tuple(
        (b_basis.labels[k], float(probs[k])) for k in range(len(probs)) if probs[k] > tol.prob_tol
    )
    marginal_tables = []
    marginals = []
    for m in range(n_ops):
        table = np.bincount(ids[:, m], weights=probs, minlength=len(b_basis.cluster_values[m]))
        marginal_tables.append(table)
        marginals.append({
            b_basis.cluster_values[m][c]: float(p) for c, p in enumerate(table) if p > tol.prob_tol
        })

    mi = np.zeros((n_ops, n_ops))
    for x, y in combinations(range(n_ops), 2):
        joint = np.zeros((len(marginal_tables[x]), len(marginal_tables[y])))
        np.add.at(joint, (ids[:, x], ids[:, y]), probs)
        mi[x, y] = mi[y, x] = mutual_information(joint)

    # sum of marginal entropies minus joint entropy; zero iff mutually independent
    total = sum(_entropy(t) for t in marginal_tables) - _entropy(probs)
    return OutcomeDistribution(support, tuple(marginals), mi, float(total), probs, b_basis.cluster_ids)


def dependence_test(d, tol=DEFAULT_TOL):
    if d.max_probability >= 1 - tol.prob_tol:
        return OracleVerdict.DETERMINISTIC
    if np.any(d.pairwise_mutual_information > tol.dep_tol) or d.total_correlation > tol.dep_tol:
        return OracleVerdict.DEPENDENT
    return OracleVerdict.INDEPENDENT


def schmidt_rank(psi, layout, bipartition, tol=DEFAULT_TOL):
    """Schmidt rank and descending coefficients of ``psi`` across a split.

    ``bipartition`` is a pair of 1-based subsystem index sequences.
    """
    left, right = (tuple(part) for part in bipartition)
    n = len(layout.subsystems)
    if not left or not right or sorted(left + right) != list(range(1, n + 1)):
        raise InputError(f"bipartition {bipartition!r} must split subsystems 1..{n} disjointly")
    dims = layout.dims
    psi = np.asarray(psi, dtype=complex).ravel()
    if psi.shape[0] != layout.total_dim:
        raise DimensionError(f"state of dim {psi.shape[0]} on a layout of dim {layout.total_dim}")
    tensor = psi.reshape(dims).transpose([k - 1 for k in left + right])
    d_left = int(np.prod([dims[k - 1] for k in left]))
    coeffs = np.linalg.svd(tensor.reshape(d_left, -1), compute_uv=False)
    return int(np.sum(coeffs > tol.zero_tol)), coeffs


@dataclass
class StateVerdict:
    index: int
    a_labels: tuple
    state: np.ndarray
    expectations: np.ndarray
    expectation_max: float
    action_norms: np.ndarray
    condition_b_literal: bool
    condition_b_operational: bool
    criterion_verdict: CriterionVerdict
    distribution: OutcomeDistribution = None
    oracle_verdict: OracleVerdict = OracleVerdict.UNAVAILABLE
    schmidt_rank: int = None
    schmidt_coefficients: np.ndarray = None
    agreement: bool = None


@dataclass
class UncertaintySample:
    i: int
    j: int
    state: int
    delta_a: float
    delta_b: float
    half_abs_exp_c: float

    @property
    def slack(self):
        return self.delta_a * self.delta_b - self.half_abs_exp_c


@dataclass
class CriterionReport:
    scenario: str
    a_names: tuple
    b_names: tuple
    a_status: object
    b_status: object
    commutator: CommutatorMatrix
    condition_a_rows: tuple
    expected_c_match: tuple = None
    expected_c_residuals: np.ndarray = None
    states: list = field(default_factory=list)
    uncertainty_samples: list = field(default_factory=list)
    uncertainty_ok: bool = True
    warnings: list = field(default_factory=list)
    a_basis: object = None
    b_basis: object = None

    @property
    def condition_a(self):
        return all(self.condition_a_rows)

    @property
    def disagreements(self):
        return [s for s in self.states if s.agreement is False]


def _warn(report, message):
    log.info("%s: %s", report.scenario, message)
    report.warnings.append(message)


def evaluate_criterion(scenario):
    """Run the whole pipeline for one scenario and collect a report."""
    tol = scenario.tolerances
    a_ops = scenario.a_operators()
    b_ops = scenario.b_operators()
    a_obs = ObservableSet.build([e.name for e in scenario.a_set], a_ops, tol)
    b_obs = ObservableSet.build([e.name for e in scenario.b_set], b_ops, tol)

    a_status, a_basis = analyze(a_obs, tol)
    if a_basis is None:
        raise ContractError(
            f"scenario {scenario.name!r}: A-set does not commute "
            f"(max commutator norm {a_status.max_commutator_norm:.3e})"
        )
    b_status, b_basis = analyze(b_obs, tol)

    c = build_commutator_matrix(b_obs, a_obs)
    report = CriterionReport(
        scenario=scenario.name,
        a_names=a_obs.names,
        b_names=b_obs.names,
        a_status=a_status,
        b_status=b_status,
        commutator=c,
        condition_a_rows=condition_a(c, tol),
        a_basis=a_basis,
        b_basis=b_basis,
    )
    if not a_status.complete:
        _warn(report, "A-set is not complete; eigenstates within degenerate label groups are not unique")
    if not b_status.commuting:
        _warn(report, "B-set does not commute; distribution oracles skipped")
    elif not b_status.complete:
        _warn(report, "B-set is not complete; distribution oracles skipped")

    if scenario.expected_c is not None:
        residuals = np.array([
            [fro(c.entries[i][j] - evaluate_expr(node, scenario.layout)) for j, (_, node) in enumerate(row)]
            for i, row in enumerate(scenario.expected_c)
        ])
        limits = np.array([[tol.zero_tol * scale(op) for op in row] for row in c.entries])
        report.expected_c_residuals = residuals
        report.expected_c_match = tuple(tuple(bool(x) for x in row) for row in residuals <= limits)
        if not all(all(row) for row in report.expected_c_match):
            _warn(report, "computed C differs from the declared expected_C in some entries")

    schmidt_ok = scenario.bipartition is not None and all(
        any(subsystems_of(e.expr) <= set(part) for part in scenario.bipartition) for e in scenario.b_set
    )
    if scenario.bipartition is not None and not schmidt_ok:
        _warn(report, "some B-observables straddle the bipartition; Schmidt oracle skipped")

    use_distribution = b_status.complete
    for k in range(len(a_basis)):
        psi = a_basis.vector(k)
        expectations = expectation_matrix(c, psi)
        norms = action_norm_matrix(c, psi)
        literal = bool(np.max(np.abs(expectations)) > tol.zero_tol)
        operational = bool(np.all(np.any(norms > tol.zero_tol, axis=1)))
        verdict = (
            CriterionVerdict.PREDICTED_ENTANGLED
            if report.condition_a and operational
            else CriterionVerdict.INCONCLUSIVE
        )
        sv = StateVerdict(
            index=k,
            a_labels=a_basis.labels[k],
            state=psi,
            expectations=expectations,
            expectation_max=float(np.max(np.abs(expectations))),
            action_norms=norms,
            condition_b_literal=literal,
            condition_b_operational=operational,
            criterion_verdict=verdict,
        )
        if use_distribution:
            sv.distribution = joint_distribution(psi, b_basis, tol)
            sv.oracle_verdict = dependence_test(sv.distribution, tol)
            predicted = verdict is CriterionVerdict.PREDICTED_ENTANGLED
            sv.agreement = predicted == (sv.oracle_verdict is OracleVerdict.DEPENDENT)
        if schmidt_ok:
            sv.schmidt_rank, sv.schmidt_coefficients = schmidt_rank(
                psi, scenario.layout, scenario.bipartition, tol
            )
        report.states.append(sv)

        for i, b in enumerate(b_ops):
            for j, a in enumerate(a_ops):
                da, db, bound = uncertainty_check(a, b, psi)
                report.uncertainty_samples.append(UncertaintySample(i, j, k, da, db, bound))

    report.uncertainty_ok = all(s.slack >= -tol.zero_tol for s in report.uncertainty_samples)
    return report
