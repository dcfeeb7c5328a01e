"""Sparse multivariate functions on {0, ..., p-1}^m with values in Z_lambda.

A Polynomial maps exponent tuples to coefficients, e.g. the function
2*x0*x1 + x2 + 1 over three variables is ``{(1, 1, 0): 2, (0, 0, 1): 1,
(0, 0, 0): 1}``.  Monomials are evaluated as ordinary integer products and
only the final sum is reduced mod lambda: the domain is the integer grid,
not a quotient ring, so no exponent identity such as x**p == x holds and
none is applied.

The degree-2 structure of a function is summarized by its variable graph
(FunctionGraph): an edge {i, j} for every mixed monomial x_i*x_j with a
nonzero coefficient and a loop at i for every square x_i**2.  The seed
condition behind the code constructions is checked by
``certify_hamiltonian_path``: after substituting every possible value
vector for a chosen index set J, the remaining quadratic part must always
be the same simple spanning path over the free variables, every edge
weighted lambda/p, with no loops.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import NotQuadraticError, ParameterError
from .params import Params

Exponent = tuple[int, ...]


def _canonical_terms(params: Params, terms: dict[Exponent, int]) -> dict[Exponent, int]:
    """Validate exponent tuples, reduce coefficients mod lambda, drop zeros."""
    out: dict[Exponent, int] = {}
    for exp, coeff in terms.items():
        exp = tuple(exp)
        if len(exp) != params.m:
            raise ParameterError(f"exponent {exp} has arity {len(exp)}, expected m={params.m}")
        if any(not isinstance(e, int) or e < 0 for e in exp):
            raise ParameterError(f"exponent {exp} must contain non-negative ints")
        c = int(coeff) % params.lam
        if c:
            out[exp] = c
    return out


@dataclass(frozen=True)
class Restriction:
    """An assignment x_{J[a]} = values[a] of n distinct variables.

    Indices must be strictly increasing in [0, m) and values lie in [0, p);
    at least one variable must stay free (n <= m - 1).  An empty restriction
    is allowed and acts as the identity.
    """

    indices: tuple[int, ...]
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "indices", tuple(int(i) for i in self.indices))
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if len(self.indices) != len(self.values):
            raise ParameterError(
                f"restriction has {len(self.indices)} indices but {len(self.values)} values"
            )
        if any(b <= a for a, b in zip(self.indices, self.indices[1:])):
            raise ParameterError(f"restriction indices must be strictly increasing: {self.indices}")

    def validate(self, params: Params) -> None:
        """Range-check this restriction against concrete (p, m)."""
        if self.indices and not (0 <= self.indices[0] and self.indices[-1] < params.m):
            raise ParameterError(f"restriction indices {self.indices} outside [0, {params.m})")
        if len(self.indices) > params.m - 1:
            raise ParameterError(
                f"restriction fixes {len(self.indices)} of {params.m} variables; at least one must stay free"
            )
        if any(not 0 <= v < params.p for v in self.values):
            raise ParameterError(f"restriction values {self.values} outside [0, {params.p})")

    @property
    def n(self) -> int:
        return len(self.indices)


@dataclass(frozen=True)
class Polynomial:
    """Immutable sparse function f: {0, ..., p-1}^m -> Z_lambda.

    ``terms`` is canonical: coefficients in [1, lambda-1] (zeros dropped),
    one entry per exponent tuple of length m.  Instances compare equal iff
    they represent the same function with the same parameters.
    """

    params: Params
    terms: dict[Exponent, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "terms", _canonical_terms(self.params, self.terms))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.params == other.params and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.params, tuple(sorted(self.terms.items()))))

    def degree(self) -> int:
        """Total degree (0 for the zero or constant function)."""
        return max((sum(exp) for exp in self.terms), default=0)

    def add_terms(self, extra: dict[Exponent, int]) -> Polynomial:
        """New polynomial with ``extra`` added coefficient-wise mod lambda."""
        merged = dict(self.terms)
        for exp, coeff in extra.items():
            exp = tuple(exp)
            merged[exp] = merged.get(exp, 0) + coeff
        return Polynomial(self.params, merged)

    def evaluate(self, point: tuple[int, ...]) -> int:
        """Value f(point) in [0, lambda), with point in {0, ..., p-1}^m."""
        if len(point) != self.params.m:
            raise ParameterError(f"point {point} has arity {len(point)}, expected {self.params.m}")
        if any(not 0 <= x < self.params.p for x in point):
            raise ParameterError(f"point {point} outside the grid [0, {self.params.p})^{self.params.m}")
        total = 0
        for exp, coeff in self.terms.items():
            prod = coeff
            for x, e in zip(point, exp):
                if e:
                    prod *= x**e
            total += prod
        return total % self.params.lam

    def restrict(self, restriction: Restriction) -> Polynomial:
        """Substitute the restricted variables by their values.

        The result keeps arity m: bound variables simply no longer occur
        (their exponent entries become 0), so restrict({x2: 2}) applied to
        x1*x2 yields the arity-preserving polynomial 2*x1.  For every point
        agreeing with the restriction, evaluation commutes with restrict.
        """
        restriction.validate(self.params)
        if not restriction.indices:
            return self
        assign = dict(zip(restriction.indices, restriction.values))
        new_terms: dict[Exponent, int] = {}
        for exp, coeff in self.terms.items():
            factor = coeff
            new_exp = list(exp)
            for j, v in assign.items():
                e = exp[j]
                if e:
                    factor *= v**e
                    new_exp[j] = 0
            key = tuple(new_exp)
            new_terms[key] = new_terms.get(key, 0) + factor
        return Polynomial(self.params, new_terms)

    def points(self) -> itertools.product:
        """All p**m grid points in index order (MSB-first digit order)."""
        return itertools.product(range(self.params.p), repeat=self.params.m)

    def to_json_dict(self) -> dict:
        """JSON document with terms sorted by exponent for stable output."""
        return {
            "schema_version": 1,
            "p": self.params.p,
            "m": self.params.m,
            "lambda": self.params.lam,
            "terms": [
                {"exp": list(exp), "coeff": coeff}
                for exp, coeff in sorted(self.terms.items())
            ],
        }


def polynomial_from_json_dict(doc: dict, n: int = 0) -> Polynomial:
    """Rebuild a Polynomial from its JSON document.

    ``n`` only parameterizes the returned Params (a polynomial document does
    not fix how many variables a later restriction binds).
    """
    from .errors import FormatError

    try:
        p = doc["p"]
        m = doc["m"]
        lam = doc["lambda"]
        raw = doc["terms"]
    except (TypeError, KeyError) as exc:
        raise FormatError(f"polynomial document missing key: {exc}") from exc
    try:
        params = Params(p=p, m=m, n=n, lam=lam)
    except ParameterError as exc:
        raise FormatError(f"polynomial document has invalid parameters: {exc}") from exc
    if not isinstance(raw, list):
        raise FormatError("polynomial 'terms' must be a list")
    terms: dict[Exponent, int] = {}
    for entry in raw:
        try:
            exp = tuple(entry["exp"])
            coeff = int(entry["coeff"])
        except (TypeError, KeyError) as exc:
            raise FormatError(f"malformed term {entry!r}") from exc
        if exp in terms:
            raise FormatError(f"duplicate exponent {exp} in polynomial document")
        terms[exp] = coeff
    try:
        return Polynomial(params, terms)
    except ParameterError as exc:
        raise FormatError(f"polynomial document invalid: {exc}") from exc


@dataclass(frozen=True)
class FunctionGraph:
    """Variable graph of a degree-<=2 function.

    ``edges`` maps unordered pairs (i, j), i < j, to the coefficient of
    x_i*x_j; ``loops`` maps i to the coefficient of x_i**2.  Linear and
    constant terms do not contribute.
    """

    vertex_count: int
    edges: dict[tuple[int, int], int]
    loops: dict[int, int]

    def degree_of(self, v: int) -> int:
        """Number of incident edges (loops excluded)."""
        return sum(1 for e in self.edges if v in e)


def build_graph(f: Polynomial) -> FunctionGraph:
    """Variable graph of f; raises NotQuadraticError above total degree 2."""
    deg = f.degree()
    if deg > 2:
        raise NotQuadraticError(f"function has total degree {deg}, graph defined only up to 2")
    edges: dict[tuple[int, int], int] = {}
    loops: dict[int, int] = {}
    for exp, coeff in f.terms.items():
        support = [i for i, e in enumerate(exp) if e]
        if sum(exp) != 2:
            continue
        if len(support) == 2:
            edges[(support[0], support[1])] = coeff
        else:
            loops[support[0]] = coeff
    return FunctionGraph(vertex_count=f.params.m, edges=edges, loops=loops)


@dataclass(frozen=True)
class PathCertificate:
    """Outcome of certify_hamiltonian_path.

    When valid, ``order`` lists the free variables in path order (first
    entry is the chosen or canonical start endpoint) and ``edge_weight``
    is the common coefficient lambda/p on every path edge.  When invalid,
    ``failure_reason`` pinpoints the first violated condition.
    """

    valid: bool
    order: tuple[int, ...]
    edge_weight: int
    failure_reason: str | None = None


def _path_order(
    free: list[int], edges: dict[tuple[int, int], int], first_var: int | None
) -> tuple[tuple[int, ...], str | None]:
    """Order free vertices along the path given a valid simple-path edge set.

    Returns (order, None) or ((), reason).  The canonical orientation starts
    at the smaller endpoint unless first_var selects the other one.
    """
    if len(free) == 1:
        v = free[0]
        if first_var is not None and first_var != v:
            return (), f"requested start x{first_var} is not the free variable"
        return (v,), None
    if len(edges) != len(free) - 1:
        return (), f"expected {len(free) - 1} path edges over the free variables, found {len(edges)}"
    adjacency: dict[int, list[int]] = {v: [] for v in free}
    for i, j in edges:
        adjacency[i].append(j)
        adjacency[j].append(i)
    endpoints = sorted(v for v, nbrs in adjacency.items() if len(nbrs) == 1)
    if any(len(nbrs) > 2 for nbrs in adjacency.values()):
        v = min(v for v, nbrs in adjacency.items() if len(nbrs) > 2)
        return (), f"vertex x{v} has {len(adjacency[v])} path neighbours (branching, not a path)"
    if len(endpoints) != 2:
        return (), "quadratic edges form a cycle or a disconnected graph, not a single path"
    start = endpoints[0]
    if first_var is not None:
        if first_var not in endpoints:
            return (), f"requested start x{first_var} is not a path endpoint (endpoints: {endpoints})"
        start = first_var
    order = [start]
    prev = None
    while len(order) < len(free):
        nxt = [u for u in adjacency[order[-1]] if u != prev]
        if not nxt:
            return (), "quadratic edges do not connect all free variables"
        prev = order[-1]
        order.append(nxt[0])
    return tuple(order), None


def certify_hamiltonian_path(
    f: Polynomial,
    restricted: tuple[int, ...] = (),
    *,
    first_var: int | None = None,
    check_all_restrictions: bool = False,
) -> PathCertificate:
    """Certify the spanning-path condition of f relative to the index set J.

    For every assignment c of values to the variables in ``restricted`` the
    restriction f|_{x_J = c} must (a) have total degree at most 2, (b) carry
    no square terms, and (c) have quadratic edges forming one simple path
    spanning the m - n free variables, every edge with coefficient lambda/p,
    and identically the same path for every c.

    When f itself has total degree <= 2, restriction can only delete edges
    incident to J, never create or reweight them, so checking c = (0, ..., 0)
    suffices; pass check_all_restrictions=True to force the exhaustive sweep
    anyway (the certificate must not change).  ``first_var`` optionally pins
    which path endpoint the reported order starts from.
    """
    params = f.params
    weight = params.weight
    restricted = tuple(int(i) for i in restricted)
    probe = Restriction(restricted, (0,) * len(restricted))
    probe.validate(params)
    free = [i for i in range(params.m) if i not in restricted]

    if f.degree() <= 2 and not check_all_restrictions:
        assignments: list[tuple[int, ...]] = [(0,) * len(restricted)]
    else:
        assignments = list(itertools.product(range(params.p), repeat=len(restricted)))

    def fail(reason: str) -> PathCertificate:
        return PathCertificate(valid=False, order=(), edge_weight=weight, failure_reason=reason)

    reference_edges: dict[tuple[int, int], int] | None = None
    for c in assignments:
        g = f.restrict(Restriction(restricted, c)) if restricted else f
        if g.degree() > 2:
            return fail(f"restriction at c={c} has total degree {g.degree()} > 2")
        graph = build_graph(g)
        if graph.loops:
            v = min(graph.loops)
            return fail(f"loop present: restriction at c={c} keeps a square term on x{v}")
        bad = [e for e, wt in graph.edges.items() if wt != weight]
        if bad:
            (i, j) = min(bad)
            return fail(
                f"edge x{i}-x{j} has weight {graph.edges[(i, j)]} at c={c}, expected lambda/p = {weight}"
            )
        stray = [e for e in graph.edges if e[0] in restricted or e[1] in restricted]
        if stray:
            return fail(f"quadratic term on restricted variable pair {min(stray)} survived restriction")
        if reference_edges is None:
            reference_edges = graph.edges
            order, reason = _path_order(free, graph.edges, first_var)
            if reason is not None:
                return fail(reason)
        elif graph.edges != reference_edges:
            return fail(f"path differs between restrictions (first at c={c})")
    assert reference_edges is not None
    order, reason = _path_order(free, reference_edges, first_var)
    if reason is not None:
        return fail(reason)
    return PathCertificate(valid=True, order=order, edge_weight=weight, failure_reason=None)
