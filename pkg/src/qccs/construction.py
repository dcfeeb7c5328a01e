"""Complementary code sets built from certified seed functions.

A seed is a function f over {0, ..., p-1}^m together with an index set J of
n restricted variables such that every restriction of f to x_J = c has the
same simple spanning path, with every edge weighted lambda/p, over the
m - n free variables (see ``certify_hamiltonian_path``).  Write w for
lambda/p, l_first for the path's starting variable and l_last for its final
one.

For a set index k in [1, p-1] and code index t in [0, p**(n+1)), the code's
member d in [0, p**(n+1)) is the full sequence of

    f + k*w*( sum_a d_a * x_{J[a]} + d_n * x_{l_first} )
      +   w*( sum_a t_a * x_{J[a]} + t_n * x_{l_last}  )

where (d_0, ..., d_n) and (t_0, ..., t_n) are the base-p digits of d and t,
most significant first.  For each fixed k the p**(n+1) codes form a
complementary set: code-level auto-correlations vanish at every nonzero
shift, cross-correlations vanish everywhere, and the zero-shift
auto-correlation is p**(m+n+1).

Taking all p-1 values of k at once requires the rigid layout
J = (0, ..., n-1) with the path starting at x_n; then the union of the
p-1 complementary sets has cross-set correlation magnitude at most p**m
everywhere, giving a (p**(n+1)*(p-1), p**(n+1), p**m, p**m) family.
``build_qccs`` enforces that layout strictly and refuses other seeds, which
remain usable through ``build_ccc``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .correlation import Code
from .errors import ParameterError, SeedError
from .params import Params
from .poly import PathCertificate, Polynomial, certify_hamiltonian_path
from .seqgen import index_to_digits, sequence_of


@dataclass(frozen=True)
class SeedSpec:
    """A certified seed: function, restricted index set, path certificate."""

    f: Polynomial
    restricted: tuple[int, ...]
    certificate: PathCertificate

    @property
    def params(self) -> Params:
        return self.f.params

    @property
    def path_first(self) -> int:
        return self.certificate.order[0]

    @property
    def path_last(self) -> int:
        return self.certificate.order[-1]


def make_seed(
    f: Polynomial, restricted: tuple[int, ...], *, first_var: int | None = None
) -> SeedSpec:
    """Certify f relative to the restricted set and package it as a seed.

    Raises SeedError (with the certificate's failure reason) when the
    spanning-path condition does not hold.  ``first_var`` chooses which of
    the two path endpoints counts as the start, when both qualify.
    """
    restricted = tuple(int(i) for i in restricted)
    if len(restricted) != f.params.n:
        raise ParameterError(
            f"seed restricts {len(restricted)} variables but params.n = {f.params.n}"
        )
    cert = certify_hamiltonian_path(f, restricted, first_var=first_var)
    if not cert.valid:
        raise SeedError(f"seed function rejected: {cert.failure_reason}")
    return SeedSpec(f=f, restricted=restricted, certificate=cert)


def canonical_seed(
    params: Params,
    *,
    linear: dict[int, int] | None = None,
    constant: int = 0,
) -> SeedSpec:
    """The chain seed: w * (x0*x1 + x1*x2 + ... + x_{m-2}*x_{m-1}).

    Restricting J = (0, ..., n-1) always leaves the sub-chain on
    x_n, ..., x_{m-1}, so this seed satisfies the rigid layout required by
    ``build_qccs`` for every valid n.  Optional affine terms (a coefficient
    per variable index, plus a constant) are added on top; they never affect
    certification.
    """
    w = params.weight
    terms: dict[tuple[int, ...], int] = {}
    for i in range(params.m - 1):
        exp = [0] * params.m
        exp[i] = 1
        exp[i + 1] = 1
        terms[tuple(exp)] = w
    for i, coeff in (linear or {}).items():
        if not 0 <= i < params.m:
            raise ParameterError(f"linear term index {i} outside [0, {params.m})")
        exp = [0] * params.m
        exp[i] = 1
        terms[tuple(exp)] = terms.get(tuple(exp), 0) + coeff
    if constant:
        terms[(0,) * params.m] = terms.get((0,) * params.m, 0) + constant
    f = Polynomial(params, terms)
    return make_seed(f, tuple(range(params.n)))


def member_function(seed: SeedSpec, k: int, t: int, d: int) -> Polynomial:
    """The degree-<=2 function whose sequence is row d of code (k, t)."""
    params = seed.params
    p, n, w = params.p, params.n, params.weight
    if not 1 <= k <= p - 1:
        raise ParameterError(f"set index k must lie in [1, {p - 1}], got {k}")
    count = p ** (n + 1)
    if not 0 <= t < count:
        raise ParameterError(f"code index t must lie in [0, {count}), got {t}")
    if not 0 <= d < count:
        raise ParameterError(f"member index d must lie in [0, {count}), got {d}")
    d_digits = index_to_digits(d, p, n + 1)
    t_digits = index_to_digits(t, p, n + 1)
    linear: dict[int, int] = {}
    for a, var in enumerate(seed.restricted):
        linear[var] = linear.get(var, 0) + k * w * d_digits[a] + w * t_digits[a]
    linear[seed.path_first] = linear.get(seed.path_first, 0) + k * w * d_digits[n]
    linear[seed.path_last] = linear.get(seed.path_last, 0) + w * t_digits[n]
    extra: dict[tuple[int, ...], int] = {}
    for var, coeff in linear.items():
        exp = [0] * params.m
        exp[var] = 1
        extra[tuple(exp)] = coeff
    return seed.f.add_terms(extra)


def build_code(seed: SeedSpec, k: int, t: int) -> Code:
    """Code (k, t): the p**(n+1) member sequences, member index ascending."""
    count = seed.params.p ** (seed.params.n + 1)
    rows = [sequence_of(member_function(seed, k, t, d)) for d in range(count)]
    return Code(rows, label=(k, t))


def build_ccc(seed: SeedSpec, k: int) -> list[Code]:
    """The complementary set at index k: codes t = 0, ..., p**(n+1) - 1."""
    count = seed.params.p ** (seed.params.n + 1)
    return [build_code(seed, k, t) for t in range(count)]


@dataclass(frozen=True)
class FamilyDescriptor:
    """The headline parameters (K, M, L, theta_bound) of a full family."""

    params: Params
    code_count: int
    code_size: int
    length: int
    theta_bound: int


def descriptor_for(params: Params) -> FamilyDescriptor:
    """Descriptor of the full multi-set family at these parameters."""
    size = params.p ** (params.n + 1)
    return FamilyDescriptor(
        params=params,
        code_count=size * (params.p - 1),
        code_size=size,
        length=params.length,
        theta_bound=params.length,
    )


@dataclass(frozen=True)
class CodeFamily:
    """A built family: codes in (k, t) lexicographic order plus metadata."""

    descriptor: FamilyDescriptor
    seed: SeedSpec
    codes: tuple[Code, ...]

    def sets(self) -> dict[int, list[Code]]:
        """Codes grouped by set index k, preserving t order."""
        grouped: dict[int, list[Code]] = {}
        for code in self.codes:
            grouped.setdefault(code.label[0], []).append(code)
        return grouped


def build_qccs(seed: SeedSpec) -> CodeFamily:
    """All p-1 complementary sets of a rigid-layout seed, as one family.

    The cross-set correlation bound p**m is only proved for seeds with
    J = (0, ..., n-1) and path starting at x_n, so any other layout raises
    SeedError here instead of silently producing an unverified family.
    """
    params = seed.params
    if seed.restricted != tuple(range(params.n)):
        raise SeedError(
            f"multi-set construction requires restricted variables (0, ..., {params.n - 1}), "
            f"got {seed.restricted}"
        )
    if seed.path_first != params.n:
        raise SeedError(
            f"multi-set construction requires the path to start at x{params.n}, "
            f"got x{seed.path_first}"
        )
    codes: list[Code] = []
    for k in range(1, params.p):
        codes.extend(build_ccc(seed, k))
    return CodeFamily(descriptor=descriptor_for(params), seed=seed, codes=tuple(codes))
