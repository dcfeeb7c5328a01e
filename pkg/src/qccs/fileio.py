"""File formats for polynomials, sequences, families, and reports.

All writers are deterministic: JSON is dumped with sorted keys, 2-space
indent, and one trailing newline; CSV uses a fixed column order and LF line
endings.  Loading a file and re-serializing it therefore reproduces the
bytes exactly.  Every document carries ``schema_version`` (currently 1).
Readers raise FormatError on anything malformed, including parameter values
the library would reject.

Phase entries use the integer sentinel -1 for a ZERO (complex 0) entry, in
both CSV and JSON; real phases are non-negative.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .construction import CodeFamily, SeedSpec
from .correlation import Code
from .errors import FormatError, ParameterError
from .params import Params
from .poly import Polynomial, polynomial_from_json_dict
from .seqgen import ZERO, PhaseSequence

SCHEMA_VERSION = 1


def _write_text(path, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8", newline="\n")


def _read_text(path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc


def dump_json_text(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def write_json(doc: dict, path) -> None:
    _write_text(path, dump_json_text(doc))


def read_json(path) -> dict:
    text = _read_text(path)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON in {path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise FormatError(f"expected a JSON object in {path}")
    return doc


def _check_schema_version(doc: dict, path) -> None:
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise FormatError(f"{path}: unsupported schema_version {version!r}, expected {SCHEMA_VERSION}")


# ---------------------------------------------------------------- polynomials


def write_polynomial(f: Polynomial, path) -> None:
    write_json(f.to_json_dict(), path)


def read_polynomial(path, n: int = 0) -> Polynomial:
    doc = read_json(path)
    _check_schema_version(doc, path)
    return polynomial_from_json_dict(doc, n=n)


# ------------------------------------------------------------------ sequences


def sequence_to_json_dict(seq: PhaseSequence) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "lambda": seq.lam,
        "phases": [int(v) for v in seq.phases],
    }


def write_sequence_json(seq: PhaseSequence, path) -> None:
    write_json(sequence_to_json_dict(seq), path)


def read_sequence_json(path) -> PhaseSequence:
    doc = read_json(path)
    _check_schema_version(doc, path)
    try:
        lam = doc["lambda"]
        phases = doc["phases"]
    except KeyError as exc:
        raise FormatError(f"{path}: sequence document missing key {exc}") from exc
    try:
        return PhaseSequence(lam, phases)
    except (ParameterError, ValueError) as exc:
        raise FormatError(f"{path}: invalid sequence: {exc}") from exc


def sequence_to_csv_text(seq: PhaseSequence) -> str:
    lines = [
        f"# schema_version={SCHEMA_VERSION}",
        f"# lambda={seq.lam}",
        "index,is_zero,phase",
    ]
    for i, phase in enumerate(seq.phases):
        phase = int(phase)
        lines.append(f"{i},{1 if phase == ZERO else 0},{phase}")
    return "\n".join(lines) + "\n"


def write_sequence_csv(seq: PhaseSequence, path) -> None:
    _write_text(path, sequence_to_csv_text(seq))


def _split_comments(text: str, path) -> tuple[dict[str, str], list[str]]:
    """Leading '# key=value' lines, then the remaining non-empty lines."""
    meta: dict[str, str] = {}
    rows: list[str] = []
    for line in text.splitlines():
        if line.startswith("#"):
            if rows:
                raise FormatError(f"{path}: comment after data rows")
            body = line[1:].strip()
            if "=" not in body:
                raise FormatError(f"{path}: malformed header comment {line!r}")
            key, _, value = body.partition("=")
            meta[key.strip()] = value.strip()
        elif line.strip():
            rows.append(line)
    return meta, rows


def _meta_int(meta: dict[str, str], key: str, path) -> int:
    if key not in meta:
        raise FormatError(f"{path}: missing header field {key!r}")
    try:
        return int(meta[key])
    except ValueError as exc:
        raise FormatError(f"{path}: header field {key!r} is not an integer") from exc


def read_sequence_csv(path) -> PhaseSequence:
    meta, rows = _split_comments(_read_text(path), path)
    if _meta_int(meta, "schema_version", path) != SCHEMA_VERSION:
        raise FormatError(f"{path}: unsupported schema_version {meta['schema_version']}")
    lam = _meta_int(meta, "lambda", path)
    if not rows or rows[0] != "index,is_zero,phase":
        raise FormatError(f"{path}: expected header 'index,is_zero,phase'")
    phases: list[int] = []
    for lineno, row in enumerate(rows[1:]):
        parts = row.split(",")
        if len(parts) != 3:
            raise FormatError(f"{path}: expected 3 columns, got {row!r}")
        try:
            index, is_zero, phase = (int(x) for x in parts)
        except ValueError as exc:
            raise FormatError(f"{path}: non-integer value in row {row!r}") from exc
        if index != lineno:
            raise FormatError(f"{path}: row index {index} out of order (expected {lineno})")
        if (phase == ZERO) != (is_zero == 1):
            raise FormatError(f"{path}: is_zero flag inconsistent with phase in row {row!r}")
        phases.append(phase)
    try:
        return PhaseSequence(lam, phases)
    except (ParameterError, ValueError) as exc:
        raise FormatError(f"{path}: invalid sequence: {exc}") from exc


# ------------------------------------------------------------------- families


@dataclass(frozen=True)
class StoredFamily:
    """A code family as it lives on disk.

    kind is "qccs" (all p-1 sets) or "ccc" (a single complementary set);
    codes keep file order, each labelled (k, t).  theta_bound is the
    family's guaranteed peak: p**m for "qccs", 0 for "ccc" (within-set
    correlations vanish everywhere off the main peak).
    """

    kind: str
    params: Params
    seed_polynomial: Polynomial
    restricted: tuple[int, ...]
    path_order: tuple[int, ...]
    theta_bound: int
    codes: tuple[Code, ...]

    @property
    def code_count(self) -> int:
        return len(self.codes)

    @property
    def code_size(self) -> int:
        return self.codes[0].size

    @property
    def length(self) -> int:
        return self.codes[0].length


def stored_from_qccs(family: CodeFamily) -> StoredFamily:
    return StoredFamily(
        kind="qccs",
        params=family.descriptor.params,
        seed_polynomial=family.seed.f,
        restricted=family.seed.restricted,
        path_order=family.seed.certificate.order,
        theta_bound=family.descriptor.theta_bound,
        codes=family.codes,
    )


def stored_from_ccc(seed: SeedSpec, codes: list[Code]) -> StoredFamily:
    return StoredFamily(
        kind="ccc",
        params=seed.params,
        seed_polynomial=seed.f,
        restricted=seed.restricted,
        path_order=seed.certificate.order,
        theta_bound=0,
        codes=tuple(codes),
    )


def family_to_json_dict(stored: StoredFamily) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": stored.kind,
        "p": stored.params.p,
        "m": stored.params.m,
        "n": stored.params.n,
        "lambda": stored.params.lam,
        "K": stored.code_count,
        "M": stored.code_size,
        "L": stored.length,
        "theta_bound": stored.theta_bound,
        "seed": {
            "polynomial": stored.seed_polynomial.to_json_dict(),
            "restricted": list(stored.restricted),
            "path": list(stored.path_order),
            "edge_weight": stored.params.weight,
        },
        "codes": [
            {
                "k": code.label[0],
                "t": code.label[1],
                "rows": [[int(v) for v in row.phases] for row in code.rows],
            }
            for code in stored.codes
        ],
    }


def write_family_json(stored: StoredFamily, path) -> None:
    write_json(family_to_json_dict(stored), path)


def _family_from_parts(kind, params, seed_poly, restricted, path_order, theta_bound, codes, path):
    if kind not in ("qccs", "ccc"):
        raise FormatError(f"{path}: unknown family kind {kind!r}")
    if not codes:
        raise FormatError(f"{path}: family contains no codes")
    sizes = {c.size for c in codes}
    lengths = {c.length for c in codes}
    if len(sizes) != 1 or len(lengths) != 1:
        raise FormatError(f"{path}: codes disagree on size or length")
    if lengths != {params.length}:
        raise FormatError(f"{path}: row length {lengths} does not match p**m = {params.length}")
    return StoredFamily(
        kind=kind,
        params=params,
        seed_polynomial=seed_poly,
        restricted=restricted,
        path_order=path_order,
        theta_bound=theta_bound,
        codes=tuple(codes),
    )


def read_family_json(path) -> StoredFamily:
    doc = read_json(path)
    _check_schema_version(doc, path)
    try:
        kind = doc["kind"]
        params = Params(p=doc["p"], m=doc["m"], n=doc["n"], lam=doc["lambda"])
        k_count = doc["K"]
        m_size = doc["M"]
        length = doc["L"]
        theta_bound = doc["theta_bound"]
        seed_doc = doc["seed"]
        code_docs = doc["codes"]
        seed_poly = polynomial_from_json_dict(seed_doc["polynomial"], n=params.n)
        restricted = tuple(int(i) for i in seed_doc["restricted"])
        path_order = tuple(int(i) for i in seed_doc["path"])
        edge_weight = int(seed_doc["edge_weight"])
    except (KeyError, TypeError) as exc:
        raise FormatError(f"{path}: family document missing or malformed field: {exc}") from exc
    except ParameterError as exc:
        raise FormatError(f"{path}: invalid family parameters: {exc}") from exc
    if seed_poly.params != params:
        raise FormatError(f"{path}: seed polynomial parameters disagree with family header")
    if edge_weight != params.weight:
        raise FormatError(f"{path}: edge_weight {edge_weight} != lambda/p = {params.weight}")
    codes = []
    try:
        for entry in code_docs:
            rows = [PhaseSequence(params.lam, row) for row in entry["rows"]]
            codes.append(Code(rows, label=(int(entry["k"]), int(entry["t"]))))
    except (KeyError, TypeError) as exc:
        raise FormatError(f"{path}: malformed code entry: {exc}") from exc
    except (ParameterError, ValueError) as exc:
        raise FormatError(f"{path}: invalid code rows: {exc}") from exc
    if len(codes) != k_count or codes[0].size != m_size or codes[0].length != length:
        raise FormatError(f"{path}: header (K, M, L) disagrees with the stored codes")
    return _family_from_parts(
        kind, params, seed_poly, restricted, path_order, theta_bound, codes, path
    )


def family_to_csv_text(stored: StoredFamily) -> str:
    poly_compact = json.dumps(
        stored.seed_polynomial.to_json_dict(), sort_keys=True, separators=(",", ":")
    )
    lines = [
        f"# schema_version={SCHEMA_VERSION}",
        f"# kind={stored.kind}",
        f"# p={stored.params.p}",
        f"# m={stored.params.m}",
        f"# n={stored.params.n}",
        f"# lambda={stored.params.lam}",
        f"# K={stored.code_count}",
        f"# M={stored.code_size}",
        f"# L={stored.length}",
        f"# theta_bound={stored.theta_bound}",
        f"# seed_polynomial={poly_compact}",
        "# seed_restricted=" + ";".join(str(i) for i in stored.restricted),
        "# seed_path=" + ";".join(str(i) for i in stored.path_order),
        f"# seed_edge_weight={stored.params.weight}",
        "k,t,d," + ",".join(f"ph{i}" for i in range(stored.length)),
    ]
    for code in stored.codes:
        k, t = code.label
        for d, row in enumerate(code.rows):
            lines.append(f"{k},{t},{d}," + ",".join(str(int(v)) for v in row.phases))
    return "\n".join(lines) + "\n"


def write_family_csv(stored: StoredFamily, path) -> None:
    _write_text(path, family_to_csv_text(stored))


def read_family_csv(path) -> StoredFamily:
    meta, rows = _split_comments(_read_text(path), path)
    if _meta_int(meta, "schema_version", path) != SCHEMA_VERSION:
        raise FormatError(f"{path}: unsupported schema_version {meta['schema_version']}")
    kind = meta.get("kind")
    try:
        params = Params(
            p=_meta_int(meta, "p", path),
            m=_meta_int(meta, "m", path),
            n=_meta_int(meta, "n", path),
            lam=_meta_int(meta, "lambda", path),
        )
    except ParameterError as exc:
        raise FormatError(f"{path}: invalid family parameters: {exc}") from exc
    k_count = _meta_int(meta, "K", path)
    m_size = _meta_int(meta, "M", path)
    length = _meta_int(meta, "L", path)
    theta_bound = _meta_int(meta, "theta_bound", path)
    if "seed_polynomial" not in meta:
        raise FormatError(f"{path}: missing header field 'seed_polynomial'")
    try:
        seed_doc = json.loads(meta["seed_polynomial"])
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: seed_polynomial is not valid JSON: {exc}") from exc
    seed_poly = polynomial_from_json_dict(seed_doc, n=params.n)
    if seed_poly.params != params:
        raise FormatError(f"{path}: seed polynomial parameters disagree with family header")

    def parse_index_list(key: str) -> tuple[int, ...]:
        if key not in meta:
            raise FormatError(f"{path}: missing header field {key!r}")
        text = meta[key]
        if not text:
            return ()
        try:
            return tuple(int(x) for x in text.split(";"))
        except ValueError as exc:
            raise FormatError(f"{path}: malformed {key}: {text!r}") from exc

    restricted = parse_index_list("seed_restricted")
    path_order = parse_index_list("seed_path")
    if _meta_int(meta, "seed_edge_weight", path) != params.weight:
        raise FormatError(f"{path}: seed_edge_weight != lambda/p = {params.weight}")
    expected_header = "k,t,d," + ",".join(f"ph{i}" for i in range(length))
    if not rows or rows[0] != expected_header:
        raise FormatError(f"{path}: unexpected column header")
    codes: list[Code] = []
    current_label: tuple[int, int] | None = None
    current_rows: list[PhaseSequence] = []
    seen_labels: set[tuple[int, int]] = set()

    def flush() -> None:
        if current_label is None:
            return
        if len(current_rows) != m_size:
            raise FormatError(
                f"{path}: code {current_label} has {len(current_rows)} rows, expected {m_size}"
            )
        codes.append(Code(list(current_rows), label=current_label))

    for row in rows[1:]:
        parts = row.split(",")
        if len(parts) != 3 + length:
            raise FormatError(f"{path}: expected {3 + length} columns, got {len(parts)}")
        try:
            values = [int(x) for x in parts]
        except ValueError as exc:
            raise FormatError(f"{path}: non-integer value in row {row[:60]!r}") from exc
        k, t, d = values[0], values[1], values[2]
        label = (k, t)
        if label != current_label:
            flush()
            if label in seen_labels:
                raise FormatError(f"{path}: code {label} appears in two separate blocks")
            seen_labels.add(label)
            current_label = label
            current_rows = []
        if d != len(current_rows):
            raise FormatError(f"{path}: member index {d} out of order in code {label}")
        try:
            current_rows.append(PhaseSequence(params.lam, values[3:]))
        except (ParameterError, ValueError) as exc:
            raise FormatError(f"{path}: invalid phase row: {exc}") from exc
    flush()
    if len(codes) != k_count:
        raise FormatError(f"{path}: header K={k_count} disagrees with {len(codes)} stored codes")
    return _family_from_parts(
        kind, params, seed_poly, restricted, path_order, theta_bound, codes, path
    )


def write_family(stored: StoredFamily, path, fmt: str) -> None:
    if fmt == "json":
        write_family_json(stored, path)
    elif fmt == "csv":
        write_family_csv(stored, path)
    else:
        raise ParameterError(f"unknown family format {fmt!r} (expected 'json' or 'csv')")


def read_family(path, fmt: str | None = None) -> StoredFamily:
    if fmt is None:
        fmt = "csv" if str(path).endswith(".csv") else "json"
    if fmt == "json":
        return read_family_json(path)
    if fmt == "csv":
        return read_family_csv(path)
    raise ParameterError(f"unknown family format {fmt!r} (expected 'json' or 'csv')")


# -------------------------------------------------------------------- reports


def correlation_sweep_to_csv_text(sweep: np.ndarray) -> str:
    length = (sweep.shape[0] + 1) // 2
    lines = [f"# schema_version={SCHEMA_VERSION}", "tau,magnitude"]
    for offset, value in enumerate(sweep):
        lines.append(f"{offset - (length - 1)},{float(abs(value))!r}")
    return "\n".join(lines) + "\n"


def write_correlation_csv(sweep: np.ndarray, path) -> None:
    _write_text(path, correlation_sweep_to_csv_text(sweep))
