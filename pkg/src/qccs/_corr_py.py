"""Pure-numpy correlation kernels, the fallback backend.

Same contracts as the compiled ``qccs._corrkernel``:

* ``xcorr(a, b)``: all 2L-1 aperiodic cross-correlations of two complex
  vectors, entry L-1+tau holding sum_alpha a[alpha+tau] * conj(b[alpha]).
* ``code_xcorr(A, B)``: the same, summed over the M aligned row pairs of
  two MxL complex matrices.
* ``phase_diff_counts(Pa, Pb, lam)``: per-shift histograms of the phase
  differences (a - b) mod lam over row-aligned overlapping non-ZERO
  entries, shape (2L-1, lam); these feed the exact cyclotomic zero test.

np.correlate computes the direct (not FFT-based) sliding product, which is
what the verification contract requires.
"""

from __future__ import annotations

import numpy as np


def xcorr(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.correlate(a, b, mode="full")


def code_xcorr(a_mat: np.ndarray, b_mat: np.ndarray) -> np.ndarray:
    length = a_mat.shape[1]
    out = np.zeros(2 * length - 1, dtype=np.complex128)
    for row_a, row_b in zip(a_mat, b_mat):
        out += np.correlate(row_a, row_b, mode="full")
    return out


def phase_diff_counts(a_ph: np.ndarray, b_ph: np.ndarray, lam: int) -> np.ndarray:
    length = a_ph.shape[1]
    out = np.zeros((2 * length - 1, lam), dtype=np.int64)
    for tau in range(-(length - 1), length):
        if tau >= 0:
            sa = a_ph[:, tau:]
            sb = b_ph[:, : length - tau]
        else:
            sa = a_ph[:, : length + tau]
            sb = b_ph[:, -tau:]
        mask = (sa >= 0) & (sb >= 0)
        if mask.any():
            diffs = (sa[mask] - sb[mask]) % lam
            out[length - 1 + tau] = np.bincount(diffs, minlength=lam)
    return out
