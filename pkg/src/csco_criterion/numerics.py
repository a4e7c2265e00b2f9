"""Dense complex linear algebra under an explicit tolerance policy.

Matrices are plain complex ``numpy.ndarray`` objects and kets are 1-d complex
arrays. The Hermitian eigensolver is a cyclic Jacobi method written here
rather than delegated to LAPACK, so the phase and ordering conventions are
fully under our control.
"""

from dataclasses import dataclass, fields, replace

import numpy as np

from .errors import ContractError, DimensionError, NumericFailure

DEFAULT_MAX_DIM = 4096
MAX_SWEEPS = 100

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class TolerancePolicy:
    """Dimensionless relative tolerances used throughout the package."""

    eig_residual_tol: float = 1e-10
    cluster_tol: float = 1e-8
    zero_tol: float = 1e-10
    prob_tol: float = 1e-9
    dep_tol: float = 1e-9

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise ContractError(f"tolerance {f.name} must be a number, got {value!r}")
            if not 0.0 < value < 1e-2:
                raise ContractError(f"tolerance {f.name}={value!r} outside (0, 1e-2)")

    def with_overrides(self, **overrides):
        unknown = set(overrides) - {f.name for f in fields(self)}
        if unknown:
            raise ContractError(f"unknown tolerance field(s): {', '.join(sorted(unknown))}")
        return replace(self, **overrides)


DEFAULT_TOL = TolerancePolicy()


def as_matrix(m):
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2:
        raise DimensionError(f"expected a 2-d matrix, got shape {m.shape}")
    return m


def fro(m):
    return float(np.linalg.norm(m))


def scale(m):
    """Reference magnitude max(1, ||m||_F) used by relative tolerances."""
    return max(1.0, fro(m))


def normalize(v):
    """Return ``v`` as a unit-norm complex ket."""
    v = np.asarray(v, dtype=complex).ravel()
    n = np.linalg.norm(v)
    if n == 0.0:
        raise ContractError("cannot normalize the zero vector")
    return v / n


def kron(a, b, max_dim=DEFAULT_MAX_DIM):
    a, b = as_matrix(a), as_matrix(b)
    rows, cols = a.shape[0] * b.shape[0], a.shape[1] * b.shape[1]
    if max(rows, cols) > max_dim:
        raise DimensionError(f"kron result {rows}x{cols} exceeds max dim {max_dim}")
    return np.kron(a, b)


def comm_i(b, a):
    """Return i(BA - AB), the single-entry commutator i[B, A]."""
    b, a = as_matrix(b), as_matrix(a)
    if b.shape != a.shape or b.shape[0] != b.shape[1]:
        raise DimensionError(f"comm_i needs equal square shapes, got {b.shape} and {a.shape}")
    return 1j * (b @ a - a @ b)


def hermiticity_defect(m):
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        return np.inf
    return float(np.max(np.abs(m - m.conj().T), initial=0.0))


def is_hermitian(m, tol=DEFAULT_TOL):
    return hermiticity_defect(m) <= tol.zero_tol * scale(m)


def is_zero_operator(m, tol=DEFAULT_TOL):
    m = as_matrix(m)
    return fro(m) <= tol.zero_tol * max(1, m.shape[0])


def fix_phase(v):
    """Rotate a ket's global phase so its largest component is real positive.

    Near-ties in magnitude resolve to the lowest index, which keeps the
    choice stable for vectors like (1, 1)/sqrt(2).
    """
    mags = np.abs(v)
    k = int(np.argmax(mags >= mags.max() * (1 - 1e-9)))
    c = v[k]
    if c == 0:
        return v
    return v * (abs(c) / c)


def _round_robin(n):
    """Disjoint (p, q) pair rounds covering every pair once per sweep."""
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        pairs = []
        for k in range(m // 2):
            p, q = players[k], players[m - 1 - k]
            if p < n and q < n:
                pairs.append((min(p, q), max(p, q)))
        if pairs:
            rounds.append(tuple(np.array(x) for x in zip(*pairs)))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def _offdiag_norm(a):
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def _jacobi(a, max_sweeps=MAX_SWEEPS):
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    total = fro(a)
    target = 4 * n * _EPS * total
    if n == 1 or _offdiag_norm(a) <= target:
        return np.real(np.diag(a)).copy(), v
    rounds = _round_robin(n)
    # entries below this are dropped instead of rotated (avoids subnormal division)
    negligible = 1e-3 * _EPS * total
    for _ in range(max_sweeps):
        for P, Q in rounds:
            apq = a[P, Q]
            mag = np.abs(apq)
            live = mag > negligible
            mag = np.where(live, mag, 0.0)
            phase = np.where(live, apq / np.where(live, mag, 1.0), 1.0)
            theta = 0.5 * np.arctan2(2 * mag, np.real(a[Q, Q]) - np.real(a[P, P]))
            c, s = np.cos(theta), np.sin(theta)
            # J = diag(1, conj(phase)) @ [[c, s], [-s, c]] on each (p, q) block
            jpp, jpq = c, s
            jqp, jqq = -s * phase.conj(), c * phase.conj()
            colp, colq = a[:, P].copy(), a[:, Q].copy()
            a[:, P] = colp * jpp + colq * jqp
            a[:, Q] = colp * jpq + colq * jqq
            rowp, rowq = a[P, :].copy(), a[Q, :].copy()
            a[P, :] = np.conj(jpp)[:, None] * rowp + np.conj(jqp)[:, None] * rowq
            a[Q, :] = np.conj(jpq)[:, None] * rowp + np.conj(jqq)[:, None] * rowq
            a[P, Q] = 0.0
            a[Q, P] = 0.0
            vp, vq = v[:, P].copy(), v[:, Q].copy()
            v[:, P] = vp * jpp + vq * jqp
            v[:, Q] = vp * jpq + vq * jqq
        a = 0.5 * (a + a.conj().T)
        if _offdiag_norm(a) <= target:
            return np.real(np.diag(a)).copy(), v
    raise NumericFailure(f"Jacobi eigensolver did not converge in {max_sweeps} sweeps (dim {n})")


def hermitian_eig(m, tol=DEFAULT_TOL):
    """Eigendecomposition of a Hermitian matrix.

    Returns
    -------
    values : (n,) float array, ascending (ties keep solver order)
    vectors : (n, n) complex array whose columns are orthonormal eigenvectors,
        each with its largest-magnitude component real and positive
    """
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise DimensionError(f"hermitian_eig needs a square matrix, got {m.shape}")
    if not is_hermitian(m, tol):
        raise ContractError(f"matrix is not Hermitian (defect {hermiticity_defect(m):.3e})")
    work = 0.5 * (m + m.conj().T)
    values, vectors = _jacobi(work.copy())
    order = np.argsort(values, kind="stable")
    values, vectors = values[order], vectors[:, order]
    for k in range(vectors.shape[1]):
        vectors[:, k] = fix_phase(vectors[:, k] / np.linalg.norm(vectors[:, k]))

    bound = tol.eig_residual_tol * scale(m)
    residual = np.linalg.norm(m @ vectors - vectors * values, axis=0)
    if residual.size and residual.max() > bound:
        raise NumericFailure(f"eigen-residual {residual.max():.3e} exceeds {bound:.3e}")
    gram = vectors.conj().T @ vectors - np.eye(m.shape[0])
    if np.abs(gram).max(initial=0.0) > bound:
        raise NumericFailure("eigenvector matrix is not unitary to tolerance")
    return values, vectors
