"""Command-line interface.

Subcommands: generate (build a family and write it), verify (exhaustively
check a stored family), bounds (lower bounds and optimality), correlate
(sweep one code pair of a stored family), certify-seed (check the
spanning-path condition of a polynomial file).

Exit codes: 0 success / property verified, 1 a verified property fails,
2 usage or parameter error, 3 seed rejection, 4 file or format error.
The only environment variable consulted is QCCS_THREADS (default sweep
thread count; the --threads flag wins when given).
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import fileio
from .analysis import comparison_rows, family_bounds, optimality
from .construction import build_ccc, build_qccs, canonical_seed, make_seed
from .correlation import (
    DEFAULT_ZERO_TOL,
    code_accf,
    code_accf_counts,
    code_accf_sweep,
    family_report,
    pairwise_peak,
)
from .cyclotomic import combination_values
from .errors import FormatError, ParameterError, QccsError, SeedError
from .params import Params
from .poly import certify_hamiltonian_path

PASS_EXIT = 0
FAIL_EXIT = 1
USAGE_EXIT = 2
SEED_EXIT = 3
FORMAT_EXIT = 4


def _params_from_args(args: argparse.Namespace) -> Params:
    return Params(p=args.p, m=args.m, n=args.n, lam=args.lam if args.lam else args.p)


def _seed_from_args(args: argparse.Namespace, params: Params):
    if getattr(args, "seed_file", None):
        f = fileio.read_polynomial(args.seed_file, n=params.n)
        if f.params != params:
            raise ParameterError(
                f"seed file parameters (p={f.params.p}, m={f.params.m}, lambda={f.params.lam}) "
                f"do not match the requested family parameters"
            )
        return make_seed(f, tuple(range(params.n)))
    return canonical_seed(params)


def _print_json(doc: dict) -> None:
    sys.stdout.write(fileio.dump_json_text(doc))


def cmd_generate(args: argparse.Namespace) -> int:
    params = _params_from_args(args)
    seed = _seed_from_args(args, params)
    if args.ccc_only:
        k = args.k if args.k is not None else 1
        stored = fileio.stored_from_ccc(seed, build_ccc(seed, k))
    else:
        if args.k is not None:
            raise ParameterError("--k only applies with --ccc-only")
        stored = fileio.stored_from_qccs(build_qccs(seed))
    fmt = args.format or ("csv" if str(args.out).endswith(".csv") else "json")
    fileio.write_family(stored, args.out, fmt)
    _print_json(
        {
            "kind": stored.kind,
            "p": params.p,
            "m": params.m,
            "n": params.n,
            "lambda": params.lam,
            "K": stored.code_count,
            "M": stored.code_size,
            "L": stored.length,
            "theta_bound": stored.theta_bound,
            "out": str(args.out),
            "format": fmt,
        }
    )
    return PASS_EXIT


def _grouped_sets(stored: fileio.StoredFamily) -> list[tuple[int, list]]:
    groups: dict[int, list] = {}
    for code in stored.codes:
        groups.setdefault(code.label[0], []).append(code)
    return sorted(groups.items())


def cmd_verify(args: argparse.Namespace) -> int:
    stored = fileio.read_family(args.family, fmt=args.format)
    params = stored.params
    tol = args.tolerance
    peak_expected = stored.code_size * stored.length
    sets_doc = []
    all_pass = True
    for k, group in _grouped_sets(stored):
        report = family_report(group, zero_tol=tol, exact=args.exact, threads=args.threads)
        peak_dev = max(
            abs(abs(code_accf(code, code, 0)) - peak_expected) for code in group
        )
        set_pass = report.theta <= tol
        all_pass = all_pass and set_pass
        doc = report.to_json_dict()
        doc.pop("schema_version")
        sets_doc.append(
            {
                "k": k,
                "codes": len(group),
                "report": doc,
                "peak_expected": peak_expected,
                "peak_max_deviation": peak_dev,
                "pass": set_pass,
            }
        )
    cross_doc = None
    if stored.kind == "qccs":
        groups = _grouped_sets(stored)
        best = -1.0
        best_loc = None
        for a in range(len(groups)):
            for b in range(a + 1, len(groups)):
                k1, group1 = groups[a]
                k2, group2 = groups[b]
                peak, (i, j, tau) = pairwise_peak(
                    group1, group2, exact=args.exact, threads=args.threads
                )
                if peak > best:
                    best = peak
                    best_loc = {
                        "codes": [list(group1[i].label), list(group2[j].label)],
                        "tau": tau,
                    }
        cross_pass = best <= stored.theta_bound + tol
        all_pass = all_pass and cross_pass
        cross_doc = {
            "max": best,
            "bound": stored.theta_bound,
            "argmax": best_loc,
            "pass": cross_pass,
        }
    report_doc = {
        "schema_version": fileio.SCHEMA_VERSION,
        "family": str(args.family),
        "kind": stored.kind,
        "p": params.p,
        "m": params.m,
        "n": params.n,
        "lambda": params.lam,
        "K": stored.code_count,
        "M": stored.code_size,
        "L": stored.length,
        "tolerance": tol,
        "mode": "exact" if args.exact else "float",
        "sets": sets_doc,
        "cross": cross_doc,
        "pass": all_pass,
    }
    _print_json(report_doc)
    if args.report:
        fileio.write_json(report_doc, args.report)
    return PASS_EXIT if all_pass else FAIL_EXIT


def cmd_bounds(args: argparse.Namespace) -> int:
    raw_mode = args.K is not None or args.M is not None or args.L is not None
    if raw_mode:
        if args.K is None or args.M is None or args.L is None or args.theta is None:
            raise ParameterError("raw mode needs all of --K, --M, --L, --theta")
        report = optimality(args.K, args.M, args.L, args.theta)
        _print_json(report.to_json_dict())
        return PASS_EXIT
    if args.p is None or args.m is None or args.n is None:
        raise ParameterError("bounds needs either (--p, --m, --n) or (--K, --M, --L, --theta)")
    params = _params_from_args(args)
    fam = family_bounds(params, theta=args.theta)
    _print_json(fam.to_json_dict())
    if args.table:
        rows = comparison_rows(params)
        header = ["source", "K", "M", "L", "theta", "alphabet", "rho", "constraints"]
        table = [header]
        for row in rows:
            rho = "n/a" if row["rho"] is None else f"{row['rho']:.4f}"
            table.append(
                [
                    str(row["source"]),
                    str(row["K"]),
                    str(row["M"]),
                    str(row["L"]),
                    str(row["theta"]),
                    str(row["alphabet"]),
                    rho,
                    str(row["constraints"]),
                ]
            )
        widths = [max(len(r[i]) for r in table) for i in range(len(header))]
        for r in table:
            sys.stdout.write("  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() + "\n")
    return PASS_EXIT


def cmd_correlate(args: argparse.Namespace) -> int:
    stored = fileio.read_family(args.family, fmt=args.format)
    i, j = args.pair
    if not (0 <= i < stored.code_count and 0 <= j < stored.code_count):
        raise ParameterError(f"pair indices must lie in [0, {stored.code_count})")
    code_a, code_b = stored.codes[i], stored.codes[j]
    if args.exact:
        values = combination_values(code_accf_counts(code_a, code_b), stored.params.lam)
    else:
        values = code_accf_sweep(code_a, code_b)
    mags = np.abs(values)
    length = code_a.length
    arg = int(np.argmax(mags))
    _print_json(
        {
            "schema_version": fileio.SCHEMA_VERSION,
            "family": str(args.family),
            "codes": [i, j],
            "labels": [list(code_a.label), list(code_b.label)],
            "mode": "exact" if args.exact else "float",
            "peak": float(mags[arg]),
            "argmax_tau": arg - (length - 1),
        }
    )
    if args.out:
        fileio.write_correlation_csv(values, args.out)
    return PASS_EXIT


def cmd_certify_seed(args: argparse.Namespace) -> int:
    if (args.n is None) == (args.restricted is None):
        raise ParameterError("certify-seed needs exactly one of --n or --restricted")
    if args.restricted is not None:
        try:
            restricted = tuple(int(x) for x in args.restricted.split(",") if x.strip() != "")
        except ValueError as exc:
            raise ParameterError(f"malformed --restricted {args.restricted!r}") from exc
    else:
        restricted = tuple(range(args.n))
    f = fileio.read_polynomial(args.polynomial, n=len(restricted))
    cert = certify_hamiltonian_path(f, restricted, first_var=args.first_var)
    _print_json(
        {
            "schema_version": fileio.SCHEMA_VERSION,
            "polynomial": str(args.polynomial),
            "restricted": list(restricted),
            "valid": cert.valid,
            "path": list(cert.order),
            "edge_weight": cert.edge_weight,
            "failure_reason": cert.failure_reason,
        }
    )
    return PASS_EXIT if cert.valid else SEED_EXIT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qccs",
        description="Build and exhaustively verify complementary code sets from multivariate functions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_param_flags(sp, required: bool) -> None:
        sp.add_argument("--p", type=int, required=required, help="odd prime alphabet base")
        sp.add_argument("--m", type=int, required=required, help="number of variables")
        sp.add_argument("--n", type=int, required=required, help="number of restricted variables")
        sp.add_argument(
            "--lambda", dest="lam", type=int, default=None, help="phase modulus (default: p)"
        )

    g = sub.add_parser("generate", help="build a family and write it to a file")
    add_param_flags(g, required=True)
    g.add_argument("--seed-file", default=None, help="polynomial JSON to use as seed (default: chain seed)")
    g.add_argument("--ccc-only", action="store_true", help="emit a single complementary set instead of all p-1")
    g.add_argument("--k", type=int, default=None, help="set index for --ccc-only (default 1)")
    g.add_argument("--out", required=True, help="output path")
    g.add_argument("--format", choices=("json", "csv"), default=None, help="default: by extension")
    g.set_defaults(func=cmd_generate)

    v = sub.add_parser("verify", help="exhaustively verify a stored family")
    v.add_argument("family", help="family file (json or csv)")
    v.add_argument("--format", choices=("json", "csv"), default=None)
    v.add_argument("--tolerance", type=float, default=DEFAULT_ZERO_TOL)
    v.add_argument("--exact", action="store_true", help="use the exact cyclotomic zero test")
    v.add_argument("--threads", type=int, default=None)
    v.add_argument("--report", default=None, help="also write the report JSON here")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bounds", help="lower bounds and optimality factor")
    add_param_flags(b, required=False)
    b.add_argument("--K", type=int, default=None, help="raw mode: number of codes")
    b.add_argument("--M", type=int, default=None, help="raw mode: code size")
    b.add_argument("--L", type=int, default=None, help="raw mode: sequence length")
    b.add_argument("--theta", type=float, default=None, help="peak correlation (default: p**m)")
    b.add_argument("--table", action="store_true", help="also print the prior-family comparison table")
    b.set_defaults(func=cmd_bounds)

    c = sub.add_parser("correlate", help="sweep one code pair of a stored family")
    c.add_argument("family", help="family file (json or csv)")
    c.add_argument("--format", choices=("json", "csv"), default=None)
    c.add_argument("--pair", type=int, nargs=2, required=True, metavar=("I", "J"))
    c.add_argument("--exact", action="store_true")
    c.add_argument("--out", default=None, help="write the per-shift magnitude CSV here")
    c.set_defaults(func=cmd_correlate)

    s = sub.add_parser("certify-seed", help="check the spanning-path condition of a polynomial file")
    s.add_argument("polynomial", help="polynomial JSON file")
    s.add_argument("--n", type=int, default=None, help="restrict the first n variables")
    s.add_argument("--restricted", default=None, help="comma-separated restricted indices")
    s.add_argument("--first-var", type=int, default=None, help="path endpoint to start from")
    s.set_defaults(func=cmd_certify_seed)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FormatError as exc:
        print(f"qccs: format error: {exc}", file=sys.stderr)
        return FORMAT_EXIT
    except SeedError as exc:
        print(f"qccs: seed rejected: {exc}", file=sys.stderr)
        return SEED_EXIT
    except ParameterError as exc:
        print(f"qccs: parameter error: {exc}", file=sys.stderr)
        return USAGE_EXIT
    except QccsError as exc:
        print(f"qccs: error: {exc}", file=sys.stderr)
        return USAGE_EXIT


if __name__ == "__main__":
    sys.exit(main())
