"""Aperiodic correlation of phase sequences and codes, and family reports.

Conventions: for sequences a, b of equal length L, the cross-correlation at
shift tau in (-L, L) is sum_alpha a[alpha+tau] * conj(b[alpha]) over the
overlapping range, and negative shifts satisfy corr(a, b)(-tau) ==
conj(corr(b, a)(tau)).  A code is an ordered multiset of M equal-length
sequences; the code-level correlation sums the M row-aligned sequence
correlations.  All sums are direct (no FFT shortcut anywhere).

Two magnitude routes exist and are never collapsed:

* float route: complex accumulation through the backend kernels, compared
  against a tolerance (``zero_tol``, default 1e-6);
* exact route (``exact=True``, lambda in {p, 2p}): integer phase-difference
  histograms reduced by the cyclotomic zero test, so "equals zero" is a
  statement about integers, not floats.

Backend: the compiled kernels in ``qccs._corrkernel`` when the extension
was built, otherwise the pure-numpy twins in ``qccs._corr_py``.  Reports
are byte-identical across backends and thread counts: sweep tasks are
enumerated in a fixed order (autos by code index, then pairs in
lexicographic order), shifts ascend from -(L-1), and merges use strictly-
greater comparison, so the first maximum in scan order always wins.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import cyclotomic
from .errors import ParameterError
from .poly import Polynomial, Restriction
from .seqgen import PhaseSequence, restricted_sequence, sequence_of

try:
    from . import _corrkernel as _kernels

    _BACKEND = "cython"
except ImportError:  # extension not built (e.g. QCCS_NO_EXT=1)
    from . import _corr_py as _kernels

    _BACKEND = "python"

DEFAULT_ZERO_TOL = 1e-6


def backend_name() -> str:
    """Which kernel backend this process imported: 'cython' or 'python'."""
    return _BACKEND


def resolve_threads(threads: int | None = None) -> int:
    """Worker count: explicit argument, else QCCS_THREADS, else 1."""
    if threads is None:
        env = os.environ.get("QCCS_THREADS", "").strip()
        if not env:
            return 1
        try:
            threads = int(env)
        except ValueError as exc:
            raise ParameterError(f"QCCS_THREADS must be an integer, got {env!r}") from exc
    if threads < 1:
        raise ParameterError(f"thread count must be >= 1, got {threads}")
    return threads


class Code:
    """An ordered collection of M equal-length sequences over one alphabet."""

    def __init__(self, rows, label: tuple | None = None) -> None:
        rows = tuple(rows)
        if not rows:
            raise ParameterError("a code needs at least one row")
        lam, length = rows[0].lam, len(rows[0])
        if any(r.lam != lam or len(r) != length for r in rows[1:]):
            raise ParameterError("all rows of a code must share length and lambda")
        self.rows: tuple[PhaseSequence, ...] = rows
        self.label = label

    @property
    def size(self) -> int:
        """Number of rows M."""
        return len(self.rows)

    @property
    def length(self) -> int:
        return len(self.rows[0])

    @property
    def lam(self) -> int:
        return self.rows[0].lam

    @cached_property
    def complex_matrix(self) -> np.ndarray:
        mat = np.ascontiguousarray(np.vstack([r.complex_values for r in self.rows]))
        mat.setflags(write=False)
        return mat

    @cached_property
    def phase_matrix(self) -> np.ndarray:
        mat = np.ascontiguousarray(np.vstack([r.phases for r in self.rows]))
        mat.setflags(write=False)
        return mat

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Code):
            return NotImplemented
        return self.label == other.label and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.label, self.rows))

    def __repr__(self) -> str:
        return f"Code(label={self.label}, size={self.size}, length={self.length}, lam={self.lam})"


def _check_seq_pair(a: PhaseSequence, b: PhaseSequence, tau: int) -> None:
    if a.lam != b.lam or len(a) != len(b):
        raise ParameterError("sequences must share length and lambda")
    if not -len(a) < tau < len(a):
        raise ParameterError(f"shift {tau} outside ({-len(a)}, {len(a)})")


def _check_code_pair(a: Code, b: Code) -> None:
    if a.lam != b.lam or a.length != b.length or a.size != b.size:
        raise ParameterError("codes must share size, length and lambda")


def accf(a: PhaseSequence, b: PhaseSequence, tau: int) -> complex:
    """Aperiodic cross-correlation of two sequences at one shift."""
    _check_seq_pair(a, b, tau)
    va, vb = a.complex_values, b.complex_values
    length = len(a)
    if tau >= 0:
        seg = va[tau:] * np.conj(vb[: length - tau])
    else:
        seg = va[: length + tau] * np.conj(vb[-tau:])
    return complex(seg.sum())


def accf_sweep(a: PhaseSequence, b: PhaseSequence) -> np.ndarray:
    """All 2L-1 shifts at once; entry L-1+tau is accf(a, b, tau)."""
    _check_seq_pair(a, b, 0)
    return _kernels.xcorr(
        np.ascontiguousarray(a.complex_values), np.ascontiguousarray(b.complex_values)
    )


def code_accf(a: Code, b: Code, tau: int) -> complex:
    """Code-level correlation: row-aligned sequence correlations, summed."""
    _check_code_pair(a, b)
    if not -a.length < tau < a.length:
        raise ParameterError(f"shift {tau} outside ({-a.length}, {a.length})")
    am, bm = a.complex_matrix, b.complex_matrix
    length = a.length
    if tau >= 0:
        val = (am[:, tau:] * np.conj(bm[:, : length - tau])).sum()
    else:
        val = (am[:, : length + tau] * np.conj(bm[:, -tau:])).sum()
    return complex(val)


def code_accf_sweep(a: Code, b: Code) -> np.ndarray:
    """Code-level correlation at every shift, entry L-1+tau for shift tau."""
    _check_code_pair(a, b)
    return _kernels.code_xcorr(a.complex_matrix, b.complex_matrix)


def code_accf_counts(a: Code, b: Code) -> np.ndarray:
    """Integer phase-difference histograms, shape (2L-1, lambda).

    Row L-1+tau counts, over all rows and overlapping non-ZERO entry pairs,
    how often each phase difference occurs; feeding the row to the
    cyclotomic zero test decides code_accf(a, b, tau) == 0 exactly.
    """
    _check_code_pair(a, b)
    return _kernels.phase_diff_counts(a.phase_matrix, b.phase_matrix, a.lam)


def _magnitude_sweep(a: Code, b: Code, exact: bool) -> np.ndarray:
    if exact:
        return cyclotomic.combination_magnitudes(code_accf_counts(a, b), a.lam)
    return np.abs(code_accf_sweep(a, b))


@dataclass(frozen=True)
class CorrelationReport:
    """Family-level correlation summary.

    theta1 is the peak auto-correlation magnitude over nonzero shifts,
    theta2 the peak cross-correlation magnitude over all shifts and
    distinct code pairs, theta their maximum.  argmax_auto is (code, tau),
    argmax_cross is (code_i, code_j, tau); either is None when its scan
    range is empty.  mode records which zero-test route produced the
    magnitudes.
    """

    theta1: float
    theta2: float
    theta: float
    argmax_auto: tuple[int, int] | None
    argmax_cross: tuple[int, int, int] | None
    code_count: int
    code_size: int
    length: int
    zero_tol: float
    mode: str

    @property
    def argmax(self) -> tuple[tuple[int, int], int] | None:
        """Overall ((code_i, code_j), tau) attaining theta; autos report (i, i)."""
        if self.theta1 >= self.theta2 and self.argmax_auto is not None:
            i, tau = self.argmax_auto
            return (i, i), tau
        if self.argmax_cross is not None:
            i, j, tau = self.argmax_cross
            return (i, j), tau
        return None

    def to_json_dict(self) -> dict:
        overall = self.argmax
        return {
            "schema_version": 1,
            "theta1": self.theta1,
            "theta2": self.theta2,
            "theta": self.theta,
            "argmax": None
            if overall is None
            else {"codes": list(overall[0]), "tau": overall[1]},
            "argmax_auto": None
            if self.argmax_auto is None
            else {"code": self.argmax_auto[0], "tau": self.argmax_auto[1]},
            "argmax_cross": None
            if self.argmax_cross is None
            else {"codes": [self.argmax_cross[0], self.argmax_cross[1]], "tau": self.argmax_cross[2]},
            "code_count": self.code_count,
            "code_size": self.code_size,
            "length": self.length,
            "tolerance": self.zero_tol,
            "mode": self.mode,
        }


def _scan(tasks: list, evaluate, threads: int) -> tuple[float, tuple | None]:
    """Evaluate tasks in order, keep the first strict maximum."""
    if not tasks:
        return 0.0, None
    if threads == 1 or len(tasks) == 1:
        results = [evaluate(t) for t in tasks]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(evaluate, tasks))
    best, best_loc = -1.0, None
    for mag, loc in results:
        if mag > best:
            best, best_loc = mag, loc
    if best < 0.0:
        return 0.0, None
    return best, best_loc


def family_report(
    codes,
    *,
    zero_tol: float = DEFAULT_ZERO_TOL,
    exact: bool = False,
    threads: int | None = None,
) -> CorrelationReport:
    """Exhaustive auto/cross sweep over a list of codes.

    Every code pair and every shift is visited; nothing is sampled.  With
    exact=True the magnitudes come from the cyclotomic route and exact
    zeros are reported as 0.0 (requires lambda in {p, 2p}).
    """
    codes = list(codes)
    if not codes:
        raise ParameterError("family_report needs at least one code")
    for c in codes[1:]:
        _check_code_pair(codes[0], c)
    if exact:
        cyclotomic.decompose_modulus(codes[0].lam)
    workers = resolve_threads(threads)
    length = codes[0].length

    def eval_auto(i: int) -> tuple[float, tuple]:
        mags = _magnitude_sweep(codes[i], codes[i], exact).copy()
        mags[length - 1] = -1.0
        k = int(np.argmax(mags))
        return float(mags[k]), (i, k - (length - 1))

    def eval_cross(pair: tuple[int, int]) -> tuple[float, tuple]:
        i, j = pair
        mags = _magnitude_sweep(codes[i], codes[j], exact)
        k = int(np.argmax(mags))
        return float(mags[k]), (i, j, k - (length - 1))

    theta1, argmax_auto = _scan(list(range(len(codes))), eval_auto, workers)
    pair_tasks = list(itertools.combinations(range(len(codes)), 2))
    theta2, argmax_cross = _scan(pair_tasks, eval_cross, workers)
    if length == 1:
        theta1, argmax_auto = 0.0, None
    return CorrelationReport(
        theta1=theta1,
        theta2=theta2,
        theta=max(theta1, theta2),
        argmax_auto=argmax_auto,
        argmax_cross=argmax_cross,
        code_count=len(codes),
        code_size=codes[0].size,
        length=length,
        zero_tol=zero_tol,
        mode="exact" if exact else "float",
    )


def pairwise_peak(
    codes_a,
    codes_b,
    *,
    exact: bool = False,
    threads: int | None = None,
) -> tuple[float, tuple[int, int, int]]:
    """Peak |code_accf| over all pairs (a, b) from two code lists, all shifts.

    Returns (magnitude, (index_a, index_b, tau)); tau = 0 is included
    because distinct codes have no trivial peak there.
    """
    codes_a, codes_b = list(codes_a), list(codes_b)
    if not codes_a or not codes_b:
        raise ParameterError("pairwise_peak needs non-empty code lists")
    for c in codes_a + codes_b:
        _check_code_pair(codes_a[0], c)
    if exact:
        cyclotomic.decompose_modulus(codes_a[0].lam)
    workers = resolve_threads(threads)
    length = codes_a[0].length

    def eval_pair(pair: tuple[int, int]) -> tuple[float, tuple]:
        i, j = pair
        mags = _magnitude_sweep(codes_a[i], codes_b[j], exact)
        k = int(np.argmax(mags))
        return float(mags[k]), (i, j, k - (length - 1))

    tasks = [(i, j) for i in range(len(codes_a)) for j in range(len(codes_b))]
    peak, loc = _scan(tasks, eval_pair, workers)
    assert loc is not None
    return peak, loc


def restriction_decomposition_check(
    f: Polynomial,
    g: Polynomial,
    restricted: tuple[int, ...],
    tau: int,
    tol: float = 1e-9,
) -> bool:
    """Check that full-sequence correlation splits over restrictions.

    The correlation of the full sequences of f and g at shift tau must equal
    the double sum, over all value vectors (c1, c2), of the correlation of
    the restricted sequences f|_{x_J=c1} and g|_{x_J=c2} at the same shift.
    """
    if f.params != g.params:
        raise ParameterError("f and g must share parameters")
    p = f.params.p
    indices = tuple(int(i) for i in restricted)
    lhs = accf(sequence_of(f), sequence_of(g), tau)
    parts_f = {
        c: restricted_sequence(f, Restriction(indices, c))
        for c in itertools.product(range(p), repeat=len(indices))
    }
    parts_g = {
        c: restricted_sequence(g, Restriction(indices, c))
        for c in itertools.product(range(p), repeat=len(indices))
    }
    rhs = 0j
    for c1 in parts_f:
        for c2 in parts_g:
            rhs += accf(parts_f[c1], parts_g[c2], tau)
    return abs(lhs - rhs) <= tol
