from fractions import Fraction

import pytest

from crystgarside import exact_linalg as la
from crystgarside.coxeter_data import (TypeParseError, UnsupportedTypeError, build, coroot,
                                       parse_type, reflection_closure, root_table, simple_roots)
from crystgarside.isometry import basic_invariants, reflection, translation

from conftest import DESK_TYPES


@pytest.mark.parametrize("s,expected", [("C~3", "C~3"), ("c3", "C~3"), (" G ~ 2 ", "G~2"), ("F~4", "F~4")])
def test_parse_type(s, expected):
    assert str(parse_type(s)) == expected


@pytest.mark.parametrize("s,err", [("Q7", TypeParseError), ("", TypeParseError), ("C~", TypeParseError),
                                   ("A~3", UnsupportedTypeError), ("D~3", UnsupportedTypeError),
                                   ("G~3", UnsupportedTypeError), ("E~9", UnsupportedTypeError)])
def test_parse_type_errors(s, err):
    with pytest.raises(err):
        parse_type(s)


@pytest.mark.parametrize("t,count", [("C~2", 8), ("C~3", 18), ("G~2", 12), ("B~3", 18),
                                     ("D~4", 24), ("F~4", 48), ("E~6", 72), ("E~7", 126), ("E~8", 240)])
def test_root_counts_and_closure(t, count):
    tp = parse_type(t)
    roots = root_table(tp)
    _, simple = simple_roots(tp)
    assert len(roots) == count
    assert set(roots) == reflection_closure(simple)
    assert all(la.scale(-1, a) in set(roots) for a in roots)


@pytest.mark.parametrize("t", DESK_TYPES)
def test_highest_root(t):
    d = build(t)
    rs = d.rs
    assert all(m >= 1 for m in d.m)
    assert max(rs.roots, key=rs.height) == d.mu
    assert all(la.dot(d.mu, d.mu) >= la.dot(a, a) for a in rs.roots)
    total = la.zeros(d.ambient)
    for m, a in zip(d.m, rs.simple):
        total = la.add(total, la.scale(m, a))
    assert total == d.mu


@pytest.mark.parametrize("t", DESK_TYPES)
def test_bipartition(t):
    d = build(t)
    assert (d.iota_b * d.iota_b).is_identity() and (d.iota_g * d.iota_g).is_identity()
    for part in (d.S_b, d.S_g):
        for g in part:
            for h in part:
                assert g.isometry * h.isometry == h.isometry * g.isometry
    assert d.S_b[0].label == "r_mu,1"
    assert d.w == d.iota_b * d.iota_g


@pytest.mark.parametrize("t", DESK_TYPES)
def test_coxeter_axis(t):
    d = build(t)
    inv = d.invariants(d.w)
    assert not inv.elliptic and inv.min.dim == 1
    p0 = d.axis.theta0
    u = d.axis.direction_basis[0]
    disp = {d.displacement(la.add(p0, la.scale(j, u))) for j in (0, 1, Fraction(-7, 3))}
    assert disp == {d.gamma0}
    assert d.gamma == d.gamma_blue_form
    # pairing of generators with gamma
    for i, a in enumerate(d.rs.simple):
        sign = 1 if i in d.simple_green else -1
        assert la.dot(a, d.gamma) == sign * d.m[i] * la.dot(a, a)
    assert la.dot(d.mu, d.gamma) == la.dot(d.mu, d.mu)
    assert all(d.is_vertical(a) for a in d.phi)


@pytest.mark.parametrize("t", DESK_TYPES)
def test_horizontal_structure(t):
    d = build(t)
    assert d.w == translation(coroot(d.mu)) * d.w_h
    assert d.w ** d.e0 == translation(la.scale(d.e0, d.gamma0))
    for r in d.horizontal_reflection_isometries:
        assert d.t_w_conjugate(r) == r
    assert len(d.horizontal_interval_reflections) == 2 * len(d.positive_horizontal)
    w0 = basic_invariants(d.w0, d.space)
    assert w0.elliptic and d.w0(la.zeros(d.ambient)) == la.zeros(d.ambient) and w0.mov.dim == d.n


@pytest.mark.parametrize("t,k0", [("C~2", 1), ("C~3", 1), ("G~2", 1), ("B~3", 2), ("D~4", 3), ("F~4", 2)])
def test_k0(t, k0):
    assert build(t).k0 == k0


@pytest.mark.parametrize("t", ["B~3", "D~4", "F~4"])
def test_factored_translations(t):
    d = build(t)
    shift = la.scale(Fraction(1, d.k0), d.gamma0)
    assert d.interval_translations
    for lam in d.interval_translations:
        vs = d.factored_translations(lam)
        assert len(vs) == d.k0
        prod = translation(la.zeros(d.ambient))
        for v in vs:
            assert d.vertical_projection(v) == shift
            prod = prod * translation(v)
        assert prod == translation(lam)


@pytest.mark.parametrize("t", ["C~2", "G~2"])
def test_factored_translations_rejected_for_k0_one(t):
    d = build(t)
    with pytest.raises(ValueError):
        d.factored_translations(d.gamma0)


def test_summary_is_plain_data():
    s = build("B~3").summary()
    assert s["type"] == "B~3" and s["k0"] == 2 and s["num_roots"] == 18
    assert all(isinstance(x, str) for x in s["mu"])
