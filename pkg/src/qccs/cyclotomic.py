"""Exact zero tests for integer combinations of lambda-th roots of unity.

A correlation value of phase sequences is an integer combination
sum_j n_j * xi^j with xi = exp(2*pi*1j/lambda).  For lambda = p (odd
prime) the only Z-linear dependency among 1, xi, ..., xi^(p-1) is that
their sum vanishes, so the combination is zero iff all counts n_j are
equal.  For lambda = 2p every odd power folds onto a prime-cyclotomic
root with a sign flip, xi_2p**j == -xi_p**(((j + p) % 2p) / 2) for odd j,
which reduces the test to the prime case over signed counts.  Other
moduli have richer dependencies and are not supported here; callers fall
back to floating-point magnitudes with a tolerance.
"""

from __future__ import annotations

import numpy as np

from .errors import ParameterError
from .params import is_odd_prime


def decompose_modulus(lam: int) -> tuple[int, int]:
    """Split lambda into (p, s) with lambda = s*p, s in {1, 2}.

    Raises ParameterError when lambda is neither an odd prime nor twice one.
    """
    if is_odd_prime(lam):
        return lam, 1
    if lam % 2 == 0 and is_odd_prime(lam // 2):
        return lam // 2, 2
    raise ParameterError(
        f"exact zero test supports lambda in {{p, 2p}} for odd prime p, got {lam}"
    )


def fold_counts(counts: np.ndarray, lam: int) -> np.ndarray:
    """Reduce counts over lambda-th roots to signed counts over p-th roots.

    ``counts`` has shape (..., lambda); the result has shape (..., p) and
    represents the same algebraic number.
    """
    p, s = decompose_modulus(lam)
    counts = np.asarray(counts, dtype=np.int64)
    if counts.shape[-1] != lam:
        raise ParameterError(f"last axis must have length {lam}, got {counts.shape[-1]}")
    if s == 1:
        return counts.copy()
    folded = np.zeros(counts.shape[:-1] + (p,), dtype=np.int64)
    for j in range(lam):
        if j % 2 == 0:
            folded[..., j // 2] += counts[..., j]
        else:
            folded[..., ((j + p) % lam) // 2] -= counts[..., j]
    return folded


def is_zero_combination(counts: np.ndarray, lam: int) -> np.ndarray:
    """Exact zero mask along the last axis: True where sum n_j xi^j == 0."""
    folded = fold_counts(counts, lam)
    return np.all(folded == folded[..., :1], axis=-1)


def combination_values(counts: np.ndarray, lam: int) -> np.ndarray:
    """Complex values of the combinations, with exact zeros forced to 0."""
    counts = np.asarray(counts, dtype=np.int64)
    roots = np.exp(2j * np.pi * np.arange(lam) / lam)
    values = counts @ roots
    values = np.where(is_zero_combination(counts, lam), 0.0 + 0.0j, values)
    return values


def combination_magnitudes(counts: np.ndarray, lam: int) -> np.ndarray:
    """Magnitudes of the combinations; exactly 0.0 where the zero test holds."""
    return np.abs(combination_values(counts, lam))
