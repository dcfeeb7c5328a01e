"""Complementary code sets from multivariate functions, with exhaustive
correlation certification.

The pipeline: define a function over {0, ..., p-1}^m with values mod lambda
(``Polynomial``), certify its spanning-path condition
(``certify_hamiltonian_path`` / ``make_seed``), expand it into complementary
sets or a full multi-set family (``build_ccc`` / ``build_qccs``), and verify
every correlation claim by direct computation (``family_report``,
``pairwise_peak``), optionally with an exact cyclotomic zero test.  Bounds
and optimality factors live in ``qccs.analysis``; file formats in
``qccs.fileio``; the CLI in ``qccs.cli``.
"""

from .analysis import (
    BoundsReport,
    FamilyBounds,
    RestrictedSumBound,
    asymptotic_rho_trend,
    comparison_rows,
    family_bounds,
    liu_bound,
    optimality,
    restricted_sum_bound_check,
    rho_closed_form,
    welch_bound,
)
from .construction import (
    CodeFamily,
    FamilyDescriptor,
    SeedSpec,
    build_ccc,
    build_code,
    build_qccs,
    canonical_seed,
    descriptor_for,
    make_seed,
    member_function,
)
from .correlation import (
    Code,
    CorrelationReport,
    accf,
    accf_sweep,
    backend_name,
    code_accf,
    code_accf_counts,
    code_accf_sweep,
    family_report,
    pairwise_peak,
    restriction_decomposition_check,
)
from .errors import (
    FormatError,
    NotQuadraticError,
    ParameterError,
    QccsError,
    SeedError,
    SuperpositionError,
)
from .params import Params
from .poly import (
    FunctionGraph,
    PathCertificate,
    Polynomial,
    Restriction,
    build_graph,
    certify_hamiltonian_path,
)
from .seqgen import (
    ZERO,
    PhaseSequence,
    digits_to_index,
    index_to_digits,
    restricted_sequence,
    sequence_of,
    superpose,
)

__version__ = "0.1.0"

__all__ = [
    "BoundsReport",
    "Code",
    "CodeFamily",
    "CorrelationReport",
    "FamilyBounds",
    "FamilyDescriptor",
    "FormatError",
    "FunctionGraph",
    "NotQuadraticError",
    "ParameterError",
    "Params",
    "PathCertificate",
    "PhaseSequence",
    "Polynomial",
    "QccsError",
    "Restriction",
    "RestrictedSumBound",
    "SeedError",
    "SeedSpec",
    "SuperpositionError",
    "ZERO",
    "accf",
    "accf_sweep",
    "asymptotic_rho_trend",
    "backend_name",
    "build_ccc",
    "build_code",
    "build_graph",
    "build_qccs",
    "canonical_seed",
    "code_accf",
    "code_accf_counts",
    "code_accf_sweep",
    "comparison_rows",
    "descriptor_for",
    "digits_to_index",
    "family_bounds",
    "family_report",
    "index_to_digits",
    "liu_bound",
    "make_seed",
    "member_function",
    "optimality",
    "pairwise_peak",
    "restricted_sequence",
    "restricted_sum_bound_check",
    "restriction_decomposition_check",
    "rho_closed_form",
    "sequence_of",
    "superpose",
    "welch_bound",
]
