"""Commuting-observable sets: commutation, simultaneous eigenbasis, completeness.

A set is treated as a CSCO when its operators commute pairwise and their
joint eigenvalue tuples label a basis with no repeats.
"""

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import ContractError, DimensionError, NumericFailure
from .numerics import DEFAULT_TOL, as_matrix, fix_phase, fro, hermitian_eig, hermiticity_defect, scale


@dataclass(frozen=True)
class ObservableSet:
    names: tuple
    operators: tuple

    def __post_init__(self):
        if len(self.names) != len(self.operators):
            raise ContractError("names and operators differ in length")
        if not self.operators:
            raise ContractError("empty observable set")
        dims = {op.shape for op in self.operators}
        if len(dims) != 1:
            raise DimensionError(f"operators have differing shapes {sorted(dims)}")

    @classmethod
    def build(cls, names, operators, tol=DEFAULT_TOL):
        ops = tuple(as_matrix(op) for op in operators)
        for name, op in zip(names, ops):
            defect = hermiticity_defect(op)
            if defect > tol.zero_tol * scale(op):
                raise ContractError(f"observable {name!r} is not Hermitian (defect {defect:.3e})")
        return cls(tuple(names), ops)

    @property
    def dim(self):
        return self.operators[0].shape[0]


@dataclass(frozen=True)
class LabeledEigenbasis:
    """Orthonormal simultaneous eigenvectors stored as matrix columns."""

    vectors: np.ndarray
    labels: tuple
    cluster_ids: tuple
    cluster_values: tuple  # per operator, representative value of each cluster id

    def __len__(self):
        return self.vectors.shape[1]

    def vector(self, k):
        return self.vectors[:, k]


@dataclass(frozen=True)
class CscoStatus:
    commuting: bool
    complete: bool
    max_commutator_norm: float
    degenerate_label_groups: tuple = ()


def check_mutually_commuting(obs, tol=DEFAULT_TOL):
    worst = 0.0
    ok = True
    for a, b in combinations(obs.operators, 2):
        norm = fro(a @ b - b @ a)
        worst = max(worst, norm)
        if norm > tol.zero_tol * max(1.0, fro(a) * fro(b)):
            ok = False
    return ok, worst


def _cluster(values, width):
    """Group sorted values into clusters whose consecutive gaps are <= width.

    Returns cluster ids aligned with ``values`` and the mean of each cluster.
    """
    order = np.argsort(values, kind="stable")
    ids = np.empty(len(values), dtype=int)
    means = []
    current = [order[0]]
    for prev, k in zip(order[:-1], order[1:]):
        if values[k] - values[prev] > width:
            means.append(float(np.mean(values[current])))
            current = []
        current.append(k)
        ids[k] = len(means)
    means.append(float(np.mean(values[current])))
    ids[order[0]] = 0
    return ids, means


def simultaneous_eigenbasis(obs, tol=DEFAULT_TOL):
    """Joint eigenbasis by sequential eigenspace refinement.

    Diagonalize the first operator, then within every eigenspace project and
    diagonalize the next one, and so on. Eigenvalues are clustered globally
    per operator so that cluster ids are comparable across eigenspaces.
    """
    commuting, worst = check_mutually_commuting(obs, tol)
    if not commuting:
        raise ContractError(f"observables do not commute (max ||[O_a, O_b]||_F = {worst:.3e})")

    n = obs.dim
    vectors = np.eye(n, dtype=complex)
    paths = [()] * n
    cluster_values = []
    for op in obs.operators:
        blocks = {}
        for k, path in enumerate(paths):
            blocks.setdefault(path, []).append(k)
        new_vectors = np.empty_like(vectors)
        for cols in blocks.values():
            q = vectors[:, cols]
            proj = q.conj().T @ op @ q
            _, w = hermitian_eig(0.5 * (proj + proj.conj().T), tol)
            new_vectors[:, cols] = q @ w
        vectors = new_vectors
        rayleigh = np.real(np.einsum("ik,ij,jk->k", vectors.conj(), op, vectors))
        width = tol.cluster_tol * scale(op)
        ids, means = _cluster(rayleigh, width)
        cluster_values.append(tuple(0.0 if abs(m) <= width else m for m in means))
        paths = [path + (int(c),) for path, c in zip(paths, ids)]

    order = sorted(range(n), key=lambda k: paths[k])
    vectors = vectors[:, order]
    for k in range(n):
        vectors[:, k] = fix_phase(vectors[:, k])
    cluster_ids = tuple(paths[k] for k in order)
    labels = tuple(
        tuple(cluster_values[m][c] for m, c in enumerate(path)) for path in cluster_ids
    )

    for op, vals in zip(obs.operators, zip(*labels)):
        residual = np.linalg.norm(op @ vectors - vectors * np.array(vals), axis=0).max()
        if residual > tol.eig_residual_tol * scale(op):
            raise NumericFailure(f"joint eigenvector residual {residual:.3e} exceeds tolerance")
    gram_err = np.abs(vectors.conj().T @ vectors - np.eye(n)).max()
    if gram_err > tol.eig_residual_tol:
        raise NumericFailure(f"joint eigenbasis not orthonormal ({gram_err:.3e})")
    return LabeledEigenbasis(vectors, labels, cluster_ids, tuple(cluster_values))


def check_completeness(basis, tol=DEFAULT_TOL, commuting=True, max_commutator_norm=0.0):
    counts = {}
    for ids, label in zip(basis.cluster_ids, basis.labels):
        counts.setdefault(ids, [label, 0])[1] += 1
    duplicates = tuple(label for label, count in counts.values() if count > 1)
    return CscoStatus(commuting, commuting and not duplicates, max_commutator_norm, duplicates)


def analyze(obs, tol=DEFAULT_TOL):
    """Commutation check plus, when it passes, eigenbasis and completeness.

    Returns ``(status, basis)``; ``basis`` is None for non-commuting sets.
    """
    commuting, worst = check_mutually_commuting(obs, tol)
    if not commuting:
        return CscoStatus(False, False, worst), None
    basis = simultaneous_eigenbasis(obs, tol)
    return check_completeness(basis, tol, True, worst), basis
