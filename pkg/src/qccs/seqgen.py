"""Exact phase sequences generated from multivariate functions.

A function f: {0, ..., p-1}^m -> Z_lambda yields the length-p**m sequence
whose i-th entry is the phase f(i_1, ..., i_m), where (i_1, ..., i_m) are
the base-p digits of i, most significant first.  A PhaseSequence stores
phases as integers; the complex sequence exp(2*pi*1j*phase/lambda) is
materialized only at correlation time, so generation stays exact.

Entries can also hold the distinct marker ZERO (the complex value 0, not
the phase 0, which maps to the unit 1).  Restricting a function to
x_J = c produces such a sparse sequence: it agrees with the full sequence
on the p**(m-n) indices whose J-digits equal c and is ZERO elsewhere.
Summing the restricted sequences over all c in {0, ..., p-1}^n recovers
the full sequence entry-for-entry; ``superpose`` performs that sum and
insists the supports are disjoint.
"""

from __future__ import annotations

import itertools
from functools import cached_property

import numpy as np

from .errors import ParameterError, SuperpositionError
from .poly import Polynomial, Restriction

ZERO = -1
"""Phase-array sentinel for an entry equal to complex 0."""


def index_to_digits(i: int, p: int, m: int) -> tuple[int, ...]:
    """Base-p digits of i, most significant first, as an m-tuple."""
    if not 0 <= i < p**m:
        raise ParameterError(f"index {i} outside [0, {p**m})")
    digits = []
    for _ in range(m):
        digits.append(i % p)
        i //= p
    return tuple(reversed(digits))


def digits_to_index(digits: tuple[int, ...], p: int) -> int:
    """Inverse of index_to_digits for digits in [0, p)."""
    i = 0
    for d in digits:
        if not 0 <= d < p:
            raise ParameterError(f"digit {d} outside [0, {p})")
        i = i * p + d
    return i


class PhaseSequence:
    """Immutable length-L sequence of phases in Z_lambda, or ZERO markers.

    ``phases`` is an int64 array with entries in [0, lambda) or ZERO (-1).
    Equality compares lambda and the phase array exactly.
    """

    __slots__ = ("lam", "phases", "__dict__")

    def __init__(self, lam: int, phases) -> None:
        arr = np.asarray(phases, dtype=np.int64).copy()
        if arr.ndim != 1 or arr.size == 0:
            raise ParameterError("phases must be a non-empty 1-D array")
        if lam < 1:
            raise ParameterError(f"lambda must be positive, got {lam}")
        bad = (arr != ZERO) & ((arr < 0) | (arr >= lam))
        if bad.any():
            raise ParameterError(
                f"phase {arr[bad][0]} at index {int(np.flatnonzero(bad)[0])} outside [0, {lam}) and not ZERO"
            )
        arr.setflags(write=False)
        self.lam = int(lam)
        self.phases = arr

    def __len__(self) -> int:
        return int(self.phases.size)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PhaseSequence):
            return NotImplemented
        return self.lam == other.lam and np.array_equal(self.phases, other.phases)

    def __hash__(self) -> int:
        return hash((self.lam, self.phases.tobytes()))

    def __repr__(self) -> str:
        return f"PhaseSequence(lam={self.lam}, phases={self.phases.tolist()})"

    @property
    def support_size(self) -> int:
        """Number of non-ZERO entries."""
        return int(np.count_nonzero(self.phases != ZERO))

    @property
    def is_full(self) -> bool:
        return self.support_size == len(self)

    @cached_property
    def complex_values(self) -> np.ndarray:
        """The unit-circle realization; ZERO entries become 0+0j."""
        angles = 2.0 * np.pi * np.where(self.phases == ZERO, 0, self.phases) / self.lam
        values = np.exp(1j * angles)
        values[self.phases == ZERO] = 0.0
        values.setflags(write=False)
        return values


def sequence_of(f: Polynomial) -> PhaseSequence:
    """Full phase sequence of f over all p**m points in index order."""
    phases = [f.evaluate(point) for point in f.points()]
    return PhaseSequence(f.params.lam, phases)


def restricted_sequence(f: Polynomial, restriction: Restriction) -> PhaseSequence:
    """Sparse sequence of f restricted to x_J = c.

    Entry i equals f's value when the J-digits of i match c, else ZERO;
    exactly p**(m-n) entries are non-ZERO.
    """
    params = f.params
    restriction.validate(params)
    p, m = params.p, params.m
    g = f.restrict(restriction)
    assign = dict(zip(restriction.indices, restriction.values))
    free = [a for a in range(m) if a not in assign]
    phases = np.full(p**m, ZERO, dtype=np.int64)
    point = [assign.get(a, 0) for a in range(m)]
    for combo in itertools.product(range(p), repeat=len(free)):
        for a, v in zip(free, combo):
            point[a] = v
        idx = 0
        for v in point:
            idx = idx * p + v
        phases[idx] = g.evaluate(tuple(point))
    return PhaseSequence(params.lam, phases)


def superpose(parts: list[PhaseSequence]) -> PhaseSequence:
    """Entry-wise sum of sparse sequences with pairwise disjoint supports.

    Because supports are disjoint, each output entry is either ZERO or comes
    from the single part that is non-ZERO there; overlapping supports raise
    SuperpositionError (the sum would leave the pure-phase alphabet).
    """
    if not parts:
        raise ParameterError("superpose needs at least one sequence")
    lam = parts[0].lam
    length = len(parts[0])
    if any(q.lam != lam or len(q) != length for q in parts[1:]):
        raise ParameterError("superpose requires equal lengths and equal lambda")
    out = np.full(length, ZERO, dtype=np.int64)
    for q in parts:
        mask = q.phases != ZERO
        clash = mask & (out != ZERO)
        if clash.any():
            raise SuperpositionError(
                f"supports overlap at index {int(np.flatnonzero(clash)[0])}"
            )
        out[mask] = q.phases[mask]
    return PhaseSequence(lam, out)
