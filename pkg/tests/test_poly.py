"""Parameter validation, polynomial arithmetic, graphs, path certification."""

from __future__ import annotations

import itertools
import random

import pytest

from qccs import (
    NotQuadraticError,
    ParameterError,
    Params,
    Polynomial,
    Restriction,
    build_graph,
    certify_hamiltonian_path,
)
from qccs.poly import polynomial_from_json_dict


def test_params_validation():
    Params(p=3, m=1, n=0, lam=3)
    Params(p=7, m=4, n=3, lam=21)
    with pytest.raises(ParameterError):
        Params(p=2, m=2, n=0, lam=2)
    with pytest.raises(ParameterError):
        Params(p=9, m=2, n=0, lam=9)
    with pytest.raises(ParameterError):
        Params(p=3, m=2, n=2, lam=3)
    with pytest.raises(ParameterError):
        Params(p=3, m=2, n=-1, lam=3)
    with pytest.raises(ParameterError):
        Params(p=3, m=0, n=0, lam=3)
    with pytest.raises(ParameterError):
        Params(p=3, m=2, n=1, lam=4)
    with pytest.raises(ParameterError):
        Params(p=3, m=2, n=1, lam=0)


def test_params_derived_quantities():
    params = Params(p=3, m=3, n=1, lam=6)
    assert params.length == 27
    assert params.weight == 2


def test_terms_are_canonical():
    params = Params(p=3, m=2, n=0, lam=3)
    f = Polynomial(params, {(1, 0): 4, (0, 1): 3, (1, 1): -1})
    assert f.terms == {(1, 0): 1, (1, 1): 2}
    g = f.add_terms({(1, 0): 2})
    assert (1, 0) not in g.terms
    assert all(0 < c < params.lam for c in g.terms.values())


def test_polynomial_validation():
    params = Params(p=3, m=2, n=0, lam=3)
    with pytest.raises(ParameterError):
        Polynomial(params, {(1,): 1})
    with pytest.raises(ParameterError):
        Polynomial(params, {(1, -1): 1})


def test_evaluate_against_direct_sum():
    rng = random.Random(11)
    params = Params(p=5, m=3, n=0, lam=10)
    for _ in range(50):
        terms = {
            tuple(rng.randrange(3) for _ in range(3)): rng.randrange(1, 10)
            for _ in range(rng.randrange(1, 6))
        }
        f = Polynomial(params, terms)
        for _ in range(10):
            point = tuple(rng.randrange(5) for _ in range(3))
            direct = sum(
                coeff * point[0] ** e[0] * point[1] ** e[1] * point[2] ** e[2]
                for e, coeff in terms.items()
            ) % 10
            assert f.evaluate(point) == direct


def test_evaluate_validation():
    f = Polynomial(Params(p=3, m=2, n=0, lam=3), {(1, 1): 1})
    with pytest.raises(ParameterError):
        f.evaluate((1,))
    with pytest.raises(ParameterError):
        f.evaluate((1, 3))


def test_restrict_keeps_arity():
    params = Params(p=3, m=2, n=1, lam=3)
    f = Polynomial(params, {(1, 1): 1})
    g = f.restrict(Restriction((1,), (2,)))
    assert g.terms == {(1, 0): 2}
    assert g.params.m == 2


def test_restrict_commutes_with_evaluate():
    rng = random.Random(23)
    params = Params(p=3, m=3, n=1, lam=6)
    for _ in range(30):
        terms = {
            tuple(rng.randrange(3) for _ in range(3)): rng.randrange(1, 6)
            for _ in range(rng.randrange(1, 7))
        }
        f = Polynomial(params, terms)
        indices = tuple(sorted(rng.sample(range(3), rng.randrange(1, 3))))
        values = tuple(rng.randrange(3) for _ in indices)
        g = f.restrict(Restriction(indices, values))
        assign = dict(zip(indices, values))
        for free_point in itertools.product(range(3), repeat=3):
            if all(free_point[i] == v for i, v in assign.items()):
                assert g.evaluate(free_point) == f.evaluate(free_point)


def test_restriction_validation():
    params = Params(p=3, m=3, n=1, lam=3)
    f = Polynomial(params, {(1, 1, 0): 1})
    with pytest.raises(ParameterError):
        Restriction((1, 1), (0, 0))
    with pytest.raises(ParameterError):
        Restriction((2, 1), (0, 0))
    with pytest.raises(ParameterError):
        Restriction((0,), (0, 1))
    with pytest.raises(ParameterError):
        f.restrict(Restriction((3,), (0,)))
    with pytest.raises(ParameterError):
        f.restrict(Restriction((0,), (3,)))
    with pytest.raises(ParameterError):
        f.restrict(Restriction((0, 1, 2), (0, 0, 0)))
    assert f.restrict(Restriction((), ())) == f


def test_build_graph_edges_and_loops():
    params = Params(p=3, m=3, n=0, lam=6)
    f = Polynomial(params, {(1, 1, 0): 2, (0, 1, 1): 4, (2, 0, 0): 3, (1, 0, 0): 5, (0, 0, 0): 1})
    graph = build_graph(f)
    assert graph.edges == {(0, 1): 2, (1, 2): 4}
    assert graph.loops == {0: 3}
    assert graph.degree_of(1) == 2
    assert graph.degree_of(2) == 1


def test_build_graph_rejects_cubic():
    f = Polynomial(Params(p=3, m=3, n=0, lam=3), {(1, 1, 1): 1})
    with pytest.raises(NotQuadraticError):
        build_graph(f)


def _chain(params: Params, weight: int | None = None) -> Polynomial:
    w = params.weight if weight is None else weight
    terms = {}
    for i in range(params.m - 1):
        exp = [0] * params.m
        exp[i] = exp[i + 1] = 1
        terms[tuple(exp)] = w
    return Polynomial(params, terms)


def test_certify_worked_example():
    params = Params(p=3, m=3, n=1, lam=3)
    f = Polynomial(params, {(1, 0, 1): 1, (0, 1, 1): 2, (0, 2, 0): 2, (0, 0, 1): 1, (0, 0, 0): 1})
    cert = certify_hamiltonian_path(f, (1,))
    assert cert.valid
    assert cert.order == (0, 2)
    assert cert.edge_weight == 1


def test_certify_rejects_loop():
    f = Polynomial(Params(p=3, m=1, n=0, lam=3), {(2,): 1})
    cert = certify_hamiltonian_path(f, ())
    assert not cert.valid
    assert "loop" in cert.failure_reason


def test_certify_rejects_wrong_weight():
    params = Params(p=3, m=2, n=0, lam=3)
    cert = certify_hamiltonian_path(_chain(params, weight=2), ())
    assert not cert.valid
    assert "weight" in cert.failure_reason


def test_certify_rejects_cycle_branch_disconnected():
    params4 = Params(p=3, m=4, n=0, lam=3)
    cycle = Polynomial(
        Params(p=3, m=3, n=0, lam=3), {(1, 1, 0): 1, (0, 1, 1): 1, (1, 0, 1): 1}
    )
    assert not certify_hamiltonian_path(cycle, ()).valid
    star = Polynomial(params4, {(1, 1, 0, 0): 1, (1, 0, 1, 0): 1, (1, 0, 0, 1): 1})
    cert = certify_hamiltonian_path(star, ())
    assert not cert.valid
    assert "x0" in cert.failure_reason
    split = Polynomial(params4, {(1, 1, 0, 0): 1, (0, 0, 1, 1): 1})
    assert not certify_hamiltonian_path(split, ()).valid
    missing = Polynomial(Params(p=3, m=2, n=0, lam=3), {(1, 0): 1})
    assert not certify_hamiltonian_path(missing, ()).valid


def test_certify_chain_every_small_parameter():
    for p in (3, 5):
        for m in (1, 2, 3):
            for n in range(m):
                params = Params(p=p, m=m, n=n, lam=2 * p)
                cert = certify_hamiltonian_path(_chain(params), tuple(range(n)))
                assert cert.valid
                assert cert.order == tuple(range(n, m))
                full = certify_hamiltonian_path(
                    _chain(params), tuple(range(n)), check_all_restrictions=True
                )
                assert full == cert


def test_certify_first_var_orients_path():
    params = Params(p=3, m=3, n=0, lam=3)
    chain = _chain(params)
    assert certify_hamiltonian_path(chain, ()).order == (0, 1, 2)
    assert certify_hamiltonian_path(chain, (), first_var=2).order == (2, 1, 0)
    cert = certify_hamiltonian_path(chain, (), first_var=1)
    assert not cert.valid
    assert "endpoint" in cert.failure_reason


def test_certify_cubic_in_restricted_variable_only():
    # degree 3 overall, but every restriction of x0 is a uniform chain
    params = Params(p=3, m=3, n=1, lam=3)
    f = Polynomial(params, {(0, 1, 1): 1, (3, 0, 0): 1})
    cert = certify_hamiltonian_path(f, (0,))
    assert cert.valid
    assert cert.order == (1, 2)


def test_certify_cubic_restriction_dependent_weight():
    # (c + 1) * x1 * x2 after x0 = c: weight drifts with c, must be rejected
    params = Params(p=3, m=3, n=1, lam=3)
    f = Polynomial(params, {(1, 1, 1): 1, (0, 1, 1): 1})
    cert = certify_hamiltonian_path(f, (0,))
    assert not cert.valid


def test_polynomial_json_round_trip():
    params = Params(p=3, m=3, n=1, lam=6)
    f = Polynomial(params, {(1, 0, 1): 2, (0, 1, 0): 5, (0, 0, 0): 1})
    doc = f.to_json_dict()
    g = polynomial_from_json_dict(doc, n=1)
    assert g == f
    assert g.to_json_dict() == doc


def test_polynomial_json_validation():
    from qccs.errors import FormatError

    with pytest.raises(FormatError):
        polynomial_from_json_dict({"p": 3, "m": 2, "terms": []})
    with pytest.raises(FormatError):
        polynomial_from_json_dict({"p": 4, "m": 2, "lambda": 4, "terms": []})
    with pytest.raises(FormatError):
        polynomial_from_json_dict(
            {"p": 3, "m": 2, "lambda": 3, "terms": [{"exp": [1], "coeff": 1}]}
        )
    with pytest.raises(FormatError):
        polynomial_from_json_dict(
            {
                "p": 3,
                "m": 1,
                "lambda": 3,
                "terms": [{"exp": [1], "coeff": 1}, {"exp": [1], "coeff": 2}],
            }
        )
