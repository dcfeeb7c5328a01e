"""Reference correlation oracle, independent of the optimized engine.

Plain Python loops over cmath exponentials, transcribed directly from the
defining sum: for tau >= 0,

    corr(a, b)(tau)  =  sum_{alpha=0}^{L-tau-1}  a[alpha+tau] * conj(b[alpha])

and corr(a, b)(-tau) == conj(corr(b, a)(tau)).  The test-suite measures the
numpy and compiled kernels against these functions; nothing here imports
the engine, so the two routes stay independent.
"""

from __future__ import annotations

import cmath

from .errors import ParameterError
from .seqgen import ZERO, PhaseSequence


def entry_value(seq: PhaseSequence, i: int) -> complex:
    """Complex value of entry i: 0 for ZERO, else exp(2*pi*1j*phase/lambda)."""
    phase = int(seq.phases[i])
    if phase == ZERO:
        return 0j
    return cmath.exp(2j * cmath.pi * phase / seq.lam)


def accf_reference(a: PhaseSequence, b: PhaseSequence, tau: int) -> complex:
    """Aperiodic cross-correlation of a against b at integer shift tau."""
    if a.lam != b.lam or len(a) != len(b):
        raise ParameterError("sequences must share length and lambda")
    length = len(a)
    if not -length < tau < length:
        raise ParameterError(f"shift {tau} outside ({-length}, {length})")
    if tau < 0:
        return accf_reference(b, a, -tau).conjugate()
    total = 0j
    for alpha in range(length - tau):
        total += entry_value(a, alpha + tau) * entry_value(b, alpha).conjugate()
    return total


def code_accf_reference(rows_a: list[PhaseSequence], rows_b: list[PhaseSequence], tau: int) -> complex:
    """Sum of accf_reference over aligned row pairs of two codes."""
    if len(rows_a) != len(rows_b):
        raise ParameterError("codes must have the same number of rows")
    return sum((accf_reference(ra, rb, tau) for ra, rb in zip(rows_a, rows_b)), 0j)
