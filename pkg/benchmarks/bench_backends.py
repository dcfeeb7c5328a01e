"""Compare the compiled correlation kernels against the numpy fallback.

Times the three kernel entry points (single-pair sweep, code-level sweep,
phase-difference histograms) on codes from a freshly built family and
prints per-call timings plus the speedup.  Run from the repository root:

    python3 benchmarks/bench_backends.py --p 3 --m 3 --n 2
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from qccs import Params, build_qccs, canonical_seed
from qccs import _corr_py

try:
    from qccs import _corrkernel
except ImportError:
    _corrkernel = None


def best_of(repeat: int, fn, *args) -> float:
    timings = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        timings.append(time.perf_counter() - t0)
    return min(timings)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--p", type=int, default=3)
    parser.add_argument("--m", type=int, default=3)
    parser.add_argument("--n", type=int, default=2)
    parser.add_argument("--lambda", dest="lam", type=int, default=None)
    parser.add_argument("--repeat", type=int, default=20)
    args = parser.parse_args()

    params = Params(p=args.p, m=args.m, n=args.n, lam=args.lam or args.p)
    family = build_qccs(canonical_seed(params))
    a, b = family.codes[0], family.codes[1]
    am, bm = a.complex_matrix, b.complex_matrix
    pa, pb = a.phase_matrix, b.phase_matrix
    row_a = np.ascontiguousarray(am[0])
    row_b = np.ascontiguousarray(bm[0])
    print(
        f"family ({family.descriptor.code_count}, {family.descriptor.code_size}, "
        f"{family.descriptor.length}) over Z_{params.lam}; best of {args.repeat} runs"
    )

    cases = [
        ("xcorr (one row pair)", (row_a, row_b)),
        ("code_xcorr (full code pair)", (am, bm)),
        ("phase_diff_counts", (pa, pb, params.lam)),
    ]
    for name, case_args in cases:
        py = best_of(args.repeat, getattr(_corr_py, name.split()[0]), *case_args)
        line = f"{name:<30} python {py * 1e6:>9.1f} us"
        if _corrkernel is not None:
            cy = best_of(args.repeat, getattr(_corrkernel, name.split()[0]), *case_args)
            line += f"   cython {cy * 1e6:>9.1f} us   speedup {py / cy:>6.2f}x"
        print(line)
    if _corrkernel is None:
        print("compiled kernels not available (built with QCCS_NO_EXT=1?); python timings only")
        return 0

    worst = max(
        float(np.max(np.abs(_corrkernel.xcorr(row_a, row_b) - _corr_py.xcorr(row_a, row_b)))),
        float(np.max(np.abs(_corrkernel.code_xcorr(am, bm) - _corr_py.code_xcorr(am, bm)))),
        float(
            np.max(
                np.abs(
                    _corrkernel.phase_diff_counts(pa, pb, params.lam)
                    - _corr_py.phase_diff_counts(pa, pb, params.lam)
                )
            )
        ),
    )
    print(f"largest disagreement between backends: {worst:.3e}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
