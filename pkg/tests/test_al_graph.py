import math
import random

import pytest

from crystgarside.al_graph import CONSTANTS, PreconditionError, WindowError, graph
from crystgarside.garside_engine import GroupElement


@pytest.fixture(scope="module")
def A():
    return graph("C~2")


def test_constants():
    assert (CONSTANTS.hyperbolicity, CONSTANTS.quasigeodesic_K, CONSTANTS.thinness) == (60, 39, 2)


def test_vertex_of_coset(A):
    E = A.E
    for k in (-2, 0, 3):
        assert A.vertex_of(E.delta(k)) == A.base
    rng = random.Random(0)
    for _ in range(5):
        g = E.from_simple(E.random_simple(rng, 2, range(-2, 3)))
        assert A.vertex_of(g) == A.vertex_of(E.multiply(g, E.delta(1)))
        assert A.vertex_of(g) == A.vertex_of(E.multiply(g, E.delta(-3)))
        assert A.vertex_of(g).rep.inf == 0
    assert A.vertex_of(A.x_power(3)).rep.key() == E.power_nf(A.x, 3).key()


def test_preferred_path_to_x(A):
    path = A.preferred_path(A.base, A.axis_vertex(1))
    assert len(path) == 6
    x = A.x
    for j, v in enumerate(path.vertices):
        assert v == A.vertex_of(GroupElement(0, x.factors[:j]))


def test_preferred_path_symmetry_and_equivariance(A):
    E = A.E
    rng = random.Random(4)
    for _ in range(4):
        v1, v2 = A.random_instance(rng, far=2, steps=2)
        p12 = A.preferred_path(v1, v2).vertices
        p21 = A.preferred_path(v2, v1).vertices
        assert p12[0] == v1 and p12[-1] == v2
        assert list(p12) == list(reversed(p21))
        g = E.from_simple(E.random_simple(rng, 2, range(-2, 3)))
        moved = A.preferred_path(A.act(g, v1), A.act(g, v2)).vertices
        assert list(moved) == [A.act(g, v) for v in p12]


def test_lambda_on_axis(A):
    assert A.lam(A.base) == 0
    for k in range(-5, 6):
        assert A.lam(A.axis_vertex(k)) == k


def test_lambda_window_stability_and_equivariance(A):
    E = A.E
    rng = random.Random(5)
    for _ in range(4):
        g = E.left_normal_form(E.from_simple(E.random_simple(rng, 2, range(-2, 3))))
        v = A.vertex_of(g)
        r = A.lambda_projection(v)
        assert r.window == (-A.default_window(v), A.default_window(v))
        assert A.lam(v, 2 * A.default_window(v)) == r.value
        assert A.lam(A.act(A.x, v)) == r.value + 1


def test_lambda_window_error(A):
    with pytest.raises(WindowError):
        A.lambda_projection(A.axis_vertex(4), window=2)


def test_contraction(A):
    rep = A.check_contraction(A.base, A.axis_vertex(5))
    assert rep.passed and (rep.lambda1, rep.lambda2) == (0, 5)
    assert len(rep.subpath) == 16
    with pytest.raises(PreconditionError):
        A.check_contraction(A.base, A.axis_vertex(2))
    rng = random.Random(7)
    for _ in range(3):
        assert A.check_contraction(*A.random_instance(rng)).passed


def test_lipschitz(A):
    assert A.lipschitz_check(A.base, A.base, 0)
    for k in (1, 3):
        assert A.lipschitz_check(A.base, A.axis_vertex(k), 5 * k)


def test_witness_distance(A):
    x = A.x
    edges = A.simple_edges(list(x.factors))
    assert A.witness_distance_upper(A.base, A.base, edges) == 0
    v1 = A.vertex_of(GroupElement(0, x.factors[:1]))
    assert A.witness_distance_upper(A.base, v1, edges) == 1
    assert A.witness_distance_upper(A.base, A.axis_vertex(1), edges) <= 5
    assert A.witness_distance_upper(A.base, A.axis_vertex(1), edges[:2], max_depth=3) == math.inf
    assert A.lipschitz_check(A.base, A.axis_vertex(1), A.witness_distance_upper(A.base, A.axis_vertex(1), edges))


def test_dot_output(A):
    edges = A.simple_edges([A.E.G.vertical_atom(0, 0).as_simple()])
    dot = A.to_dot(A.base, 1, edges)
    assert dot.startswith("graph AL {") and dot.endswith("}")
    assert "kind=simple" in dot
    assert dot == A.to_dot(A.base, 1, edges)
