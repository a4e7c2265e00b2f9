import numpy as np

from ..errors import InputError


def two_s_of(s):
    """Return 2s as an int, rejecting values that are not half-integers."""
    if isinstance(s, bool):
        raise InputError(f"spin s={s!r} is not a number")
    try:
        twice = 2 * float(s)
    except (TypeError, ValueError):
        raise InputError(f"spin s={s!r} is not a number") from None
    if not np.isfinite(twice) or twice < 0 or abs(twice - round(twice)) > 1e-9:
        raise InputError(f"spin s={s!r} is not a nonnegative half-integer")
    return int(round(twice))


def spin_generators(s):
    """Spin matrices (Sx, Sy, Sz) of dimension 2s+1 with hbar = 1.

    Basis order is m = s, s-1, ..., -s, so index 0 is the highest weight
    state (|up> for s = 1/2).
    """
    two_s = two_s_of(s)
    dim = two_s + 1
    j = two_s / 2
    m = j - np.arange(dim)
    splus = np.zeros((dim, dim), dtype=complex)
    # <m+1|S+|m> sits one row above the column of m
    for col in range(1, dim):
        splus[col - 1, col] = np.sqrt(j * (j + 1) - m[col] * (m[col] + 1))
    sminus = splus.conj().T
    sx = (splus + sminus) / 2
    sy = (splus - sminus) / 2j
    sz = np.diag(m).astype(complex)
    return sx, sy, sz


def ladder_operators(s):
    sx, sy, _ = spin_generators(s)
    return sx + 1j * sy, sx - 1j * sy
