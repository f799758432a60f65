from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from crystgarside import exact_linalg as la

small = st.fractions(min_value=-3, max_value=3, max_denominator=3)


def matrices(rows, cols):
    return st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


@st.composite
def matrix_and_rhs(draw):
    r = draw(st.integers(1, 4))
    c = draw(st.integers(1, 4))
    a = draw(matrices(r, c))
    b = draw(st.lists(small, min_size=r, max_size=r))
    return a, b, c


@given(matrix_and_rhs())
def test_rank_matches_sympy(data):
    a, _, _ = data
    assert la.rank(a) == sympy.Matrix(a).rank()


@given(matrix_and_rhs())
def test_solve_linear_against_sympy(data):
    a, b, n = data
    sol = la.solve_linear(a, b, n)
    M = sympy.Matrix(a)
    consistent = M.rank() == M.row_join(sympy.Matrix(b)).rank()
    assert (sol is not None) == consistent
    if sol is None:
        return
    x, ker = sol
    assert la.matvec(la.as_qmatrix(a), x) == la.as_qvec(b)
    assert len(ker) == n - M.rank()
    for k in ker:
        assert la.is_zero(la.matvec(la.as_qmatrix(a), k))


@given(matrix_and_rhs())
def test_min_norm_point_matches_least_squares(data):
    a, b, n = data
    sub = la.solve_affine(la.as_qmatrix(a), la.as_qvec(b))
    if sub is la.Inconsistent:
        return
    # minimum-norm solution of a consistent system is pinv(a) b
    M = sympy.Matrix(a)
    expected = M.pinv() * sympy.Matrix(b)
    assert [sympy.Rational(x.numerator, x.denominator) for x in sub.theta0] == list(expected)


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=1, max_size=3),
       st.lists(small, min_size=3, max_size=3))
def test_theta0_orthogonal_to_directions(dirs, base):
    s = la.AffineSubspace(la.as_qvec(base), tuple(la.as_qvec(d) for d in dirs))
    assert s.contains_point(s.theta0)
    assert all(la.dot(s.theta0, d) == 0 for d in s.direction_basis)


def test_intersection_of_lines():
    l1 = la.AffineSubspace(la.qvec(0, 0), (la.qvec(1, 0),))
    l2 = la.AffineSubspace(la.qvec(2, 5), (la.qvec(0, 1),))
    p = la.intersect(l1, l2)
    assert p.dim == 0 and p.theta0 == la.qvec(2, 0)
    parallel = la.AffineSubspace(la.qvec(0, 1), (la.qvec(1, 0),))
    assert la.intersect(l1, parallel) is la.Empty


def test_containment_and_equality():
    plane = la.AffineSubspace(la.qvec(0, 0, 1), (la.qvec(1, 0, 0), la.qvec(0, 1, 0)))
    line = la.AffineSubspace(la.qvec(3, 3, 1), (la.qvec(1, 1, 0),))
    assert la.contains(plane, line) and not la.contains(line, plane)
    same = la.AffineSubspace(la.qvec(5, -2, 1), (la.qvec(1, 1, 0), la.qvec(1, -1, 0)))
    assert plane == same and hash(plane) == hash(same)


def test_orth_complement():
    u = la.linear_span([la.qvec(1, 1, 0)], 3)
    c = la.orth_complement(u)
    assert c.dim == 2 and all(la.dot(d, la.qvec(1, 1, 0)) == 0 for d in c.direction_basis)
    with pytest.raises(ValueError):
        la.orth_complement(la.AffineSubspace(la.qvec(1, 0, 0)))


def test_dimension_mismatch():
    with pytest.raises(la.DimensionError):
        la.AffineSubspace(la.qvec(0, 0)).contains_point(la.qvec(0, 0, 0))
