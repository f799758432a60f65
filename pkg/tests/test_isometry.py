import pytest
from hypothesis import given, strategies as st

from crystgarside import exact_linalg as la
from crystgarside.coxeter_data import build
from crystgarside.isometry import (ZeroRootError, basic_invariants, identity, isom_leq,
                                   order, reflection, translation)

q = la.qvec


def test_reflection_formulas():
    assert reflection(q(1, 0), 0)(q(3, 5)) == q(-3, 5)
    assert reflection(q(1, 0), 1)(q(3, 5)) == q(-1, 5)
    r = reflection(q(1, 1), 0)
    assert r(q(3, 5)) == q(-5, -3)
    assert (r * r).is_identity()
    with pytest.raises(ZeroRootError):
        reflection(q(0, 0))


def test_translation_from_parallel_reflections():
    t = reflection(q(1, 0), 1) * reflection(q(1, 0), 0)
    assert t == translation(q(2, 0))
    assert translation(q(1, 2)).inverse() == translation(q(-1, -2))


def test_basic_invariant_examples():
    r = basic_invariants(reflection(q(1, 0, 0), 2))
    assert r.elliptic and r.isom_length == 1
    # hyperplane <x, a> = c with a = e1, c = 2
    assert r.min == la.AffineSubspace(q(2, 0, 0), (q(0, 1, 0), q(0, 0, 1)))
    assert r.mov == la.linear_span([q(1, 0, 0)], 3)

    t = basic_invariants(translation(q(0, 3, 0)))
    assert not t.elliptic and t.isom_length == 2 and t.min.dim == 3
    assert t.mov.dim == 0 and t.mov.theta0 == q(0, 3, 0)

    glide = basic_invariants(translation(q(0, 1, 0)) * reflection(q(1, 0, 0), 0))
    assert not glide.elliptic and glide.isom_length == 3
    assert glide.min == la.AffineSubspace(q(0, 0, 0), (q(0, 1, 0), q(0, 0, 1)))


def test_isom_leq_examples():
    r = reflection(q(1, 0), 0)
    assert isom_leq(identity(2), r)
    assert not isom_leq(translation(q(0, 1)), r)


vec = st.lists(st.integers(-2, 2), min_size=3, max_size=3).filter(any)


@given(st.lists(st.tuples(vec, st.integers(-2, 2)), min_size=1, max_size=4))
def test_mov_and_min_are_orthogonal(refls):
    u = identity(3)
    for a, c in refls:
        u = u * reflection(a, c)
    inv = basic_invariants(u)
    assert inv.mov.dim + inv.min.dim == 3
    assert all(la.dot(x, y) == 0 for x in inv.mov.direction_basis for y in inv.min.direction_basis)
    assert u.is_orthogonal()
    assert (u * u.inverse()).is_identity()


@pytest.mark.parametrize("t", ["C~3", "B~3"])
def test_order_below_coxeter_element_matches_min_sets(t):
    # for elliptic u1, u2 below w: u1 <= u2 iff Min(u2) is inside Min(u1)
    d = build(t)
    refl = [reflection(a, k) for a in d.rs.positive for k in (-1, 0, 1, 2)]
    below = [r for r in refl if isom_leq(r, d.w)]
    pairs = [r1 * r2 for r1 in below[:8] for r2 in below[:8]
             if isom_leq(r1 * r2, d.w) and basic_invariants(r1 * r2).elliptic]
    for u2 in pairs:
        m2 = basic_invariants(u2).min
        for u1 in below[:8]:
            m1 = basic_invariants(u1).min
            assert isom_leq(u1, u2) == la.contains(m1, m2)


@given(st.lists(st.tuples(vec, st.integers(-2, 2)), min_size=1, max_size=3),
       st.tuples(vec, st.integers(-2, 2)))
def test_length_is_conjugation_invariant(refls, conj):
    u = identity(3)
    for a, c in refls:
        u = u * reflection(a, c)
    g = reflection(*conj) * translation(q(1, -1, 2))
    assert basic_invariants(g * u * g.inverse()).isom_length == basic_invariants(u).isom_length


def test_order_of_rotation():
    rot = reflection(q(1, 0), 0) * reflection(q(1, 1), 0)
    assert order(rot) == 4
    assert order(translation(q(1, 0)), cap=10) is None
