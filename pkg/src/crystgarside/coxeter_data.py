"""Root systems and the bipartite Coxeter element of an extended Dynkin type."""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Dict, List, Sequence, Tuple

from . import exact_linalg as la
from .exact_linalg import QVector
from .isometry import (EuclideanIsometry, basic_invariants, identity, order,
                       product, reflection, translation)

E0_CAP = 64
HALF = Fraction(1, 2)


class TypeParseError(ValueError):
    pass


class UnsupportedTypeError(ValueError):
    pass


class ConstructionError(RuntimeError):
    """An internal consistency check failed while building the data."""


@dataclass(frozen=True)
class DynkinType:
    family: str
    rank: int

    def __str__(self):
        return f"{self.family}~{self.rank}"


_TYPE_RE = re.compile(r"^\s*([A-Ga-g])\s*~?\s*(\d+)\s*$")


def parse_type(s: str) -> DynkinType:
    m = _TYPE_RE.match(s)
    if not m:
        raise TypeParseError(f"cannot parse type {s!r}; expected e.g. C~3")
    fam, n = m.group(1).upper(), int(m.group(2))
    t = DynkinType(fam, n)
    validate_type(t)
    return t


def validate_type(t: DynkinType) -> None:
    f, n = t.family, t.rank
    ok = {
        "B": n >= 2, "C": n >= 2, "D": n >= 4,
        "E": n in (6, 7, 8), "F": n == 4, "G": n == 2,
    }
    if f == "A":
        raise UnsupportedTypeError("family A is not supported")
    if f not in ok or not ok[f]:
        raise UnsupportedTypeError(f"unsupported type {t}")


# --- root tables ------------------------------------------------------------

def _e(i, n):
    return la.unit(i, n)


def _signed_pairs(n, idx):
    out = []
    for a in range(len(idx)):
        for b in range(a + 1, len(idx)):
            i, j = idx[a], idx[b]
            for si in (1, -1):
                for sj in (1, -1):
                    out.append(la.add(la.scale(si, _e(i, n)), la.scale(sj, _e(j, n))))
    return out


def _half_vectors(n, parity=None):
    out = []
    for mask in range(1 << n):
        v = tuple(HALF if not (mask >> i) & 1 else -HALF for i in range(n))
        neg = bin(mask).count("1")
        if parity is None or neg % 2 == parity:
            out.append(v)
    return out


def simple_roots(t: DynkinType) -> Tuple[int, List[QVector]]:
    """(ambient dimension, Bourbaki simple roots)."""
    f, n = t.family, t.rank
    if f in "BCD":
        base = [la.sub(_e(i, n), _e(i + 1, n)) for i in range(n - 1)]
        last = {"B": _e(n - 1, n), "C": la.scale(2, _e(n - 1, n)),
                "D": la.add(_e(n - 2, n), _e(n - 1, n))}[f]
        return n, base + [last]
    if f == "G":
        return 3, [la.qvec(1, -1, 0), la.qvec(-2, 1, 1)]
    if f == "F":
        return 4, [la.qvec(0, 1, -1, 0), la.qvec(0, 0, 1, -1), la.qvec(0, 0, 0, 1),
                   la.qvec(HALF, -HALF, -HALF, -HALF)]
    if f == "E":
        e8 = [la.as_qvec([HALF, -HALF, -HALF, -HALF, -HALF, -HALF, -HALF, HALF]),
              la.add(_e(0, 8), _e(1, 8))]
        e8 += [la.sub(_e(i, 8), _e(i - 1, 8)) for i in range(1, 7)]
        return 8, e8[:n]
    raise UnsupportedTypeError(str(t))


def root_table(t: DynkinType) -> List[QVector]:
    """All roots, written down by closed formula."""
    f, n = t.family, t.rank
    if f == "B":
        return _signed_pairs(n, range(n)) + [la.scale(s, _e(i, n)) for i in range(n) for s in (1, -1)]
    if f == "C":
        return _signed_pairs(n, range(n)) + [la.scale(2 * s, _e(i, n)) for i in range(n) for s in (1, -1)]
    if f == "D":
        return _signed_pairs(n, range(n))
    if f == "G":
        out = []
        for i in range(3):
            for j in range(3):
                if i != j:
                    out.append(la.sub(_e(i, 3), _e(j, 3)))
                    k = 3 - i - j
                    long = la.sub(la.scale(2, _e(i, 3)), la.add(_e(j, 3), _e(k, 3)))
                    out += [long, la.scale(-1, long)]
        return sorted(set(out))
    if f == "F":
        return (_signed_pairs(4, range(4)) + [la.scale(s, _e(i, 4)) for i in range(4) for s in (1, -1)]
                + _half_vectors(4))
    if f == "E":
        e8 = _signed_pairs(8, range(8)) + _half_vectors(8, parity=0)
        if n == 8:
            return e8
        _, simple = simple_roots(t)
        span = la.span_basis(simple, 8)
        perp = la.orth_basis_complement(span, 8)
        return [r for r in e8 if all(la.dot(r, p) == 0 for p in perp)]
    raise UnsupportedTypeError(str(t))


# Highest roots in the same realisations.
def stored_highest_root(t: DynkinType) -> QVector:
    f, n = t.family, t.rank
    if f in "BD":
        return la.add(_e(0, n), _e(1, n))
    if f == "C":
        return la.scale(2, _e(0, n))
    if f == "G":
        return la.qvec(-1, -1, 2)
    if f == "F":
        return la.qvec(1, 1, 0, 0)
    if f == "E":
        return {8: la.add(_e(6, 8), _e(7, 8)),
                7: la.sub(_e(7, 8), _e(6, 8)),
                6: la.as_qvec([HALF] * 5 + [-HALF, -HALF, HALF])}[n]
    raise UnsupportedTypeError(str(t))


def reflection_closure(simple: Sequence[QVector]) -> frozenset:
    """Closure of the simple roots under the linear reflections they define."""
    roots = set(simple) | {la.scale(-1, a) for a in simple}
    frontier = deque(roots)
    while frontier:
        a = frontier.popleft()
        for s in simple:
            b = la.sub(a, la.scale(2 * la.dot(a, s) / la.dot(s, s), s))
            if b not in roots:
                roots.add(b)
                frontier.append(b)
    return frozenset(roots)


def coroot(alpha: QVector) -> QVector:
    return la.scale(Fraction(2) / la.dot(alpha, alpha), alpha)


@dataclass(frozen=True)
class RootSystem:
    roots: Tuple[QVector, ...]
    simple: Tuple[QVector, ...]
    highest_root: QVector
    highest_coeffs: Tuple[int, ...]
    coeffs: Dict[QVector, Tuple[int, ...]]

    def coroot(self, alpha: QVector) -> QVector:
        return coroot(alpha)

    def height(self, alpha: QVector) -> int:
        return sum(self.coeffs[alpha])

    def is_positive(self, alpha: QVector) -> bool:
        return all(c >= 0 for c in self.coeffs[alpha])

    @property
    def positive(self) -> Tuple[QVector, ...]:
        return tuple(a for a in self.roots if self.is_positive(a))


def simple_coefficients(simple: Sequence[QVector], v: QVector) -> Tuple[Fraction, ...]:
    n = len(v)
    rows = [tuple(s[i] for s in simple) for i in range(n)]
    sol = la.solve_linear(rows, v, len(simple))
    if sol is None:
        raise ConstructionError("vector outside the root span")
    return sol[0]


def highest_root(roots: Sequence[QVector], simple: Sequence[QVector]):
    """(mu, m_alpha) by exhaustive height maximisation."""
    best = None
    for r in roots:
        c = simple_coefficients(simple, r)
        h = sum(c)
        if best is None or h > best[0]:
            best = (h, r, c)
    _, mu, c = best
    return mu, tuple(int(x) for x in c)


def build_root_system(t: DynkinType) -> RootSystem:
    _, simple = simple_roots(t)
    roots = root_table(t)
    coeffs = {}
    for r in roots:
        c = simple_coefficients(simple, r)
        if any(x.denominator != 1 for x in c) or not (all(x >= 0 for x in c) or all(x <= 0 for x in c)):
            raise ConstructionError(f"root {r} is not a one-signed integer combination")
        coeffs[r] = tuple(int(x) for x in c)
    order_key = lambda r: (abs(sum(coeffs[r])), sum(coeffs[r]) < 0, tuple(-x for x in coeffs[r]))
    roots = tuple(sorted(roots, key=order_key))
    mu = stored_highest_root(t)
    if mu not in coeffs:
        raise ConstructionError("stored highest root is not a root")
    return RootSystem(roots, tuple(simple), mu, coeffs[mu], coeffs)


# --- euclidean data ---------------------------------------------------------

def two_colouring(vectors: Sequence[QVector], start: int) -> List[int]:
    """Colour 0/1 of each vector in the non-orthogonality graph (a tree)."""
    col = [None] * len(vectors)
    col[start] = 0
    q = deque([start])
    while q:
        i = q.popleft()
        for j, v in enumerate(vectors):
            if j != i and la.dot(vectors[i], v) != 0:
                if col[j] is None:
                    col[j] = 1 - col[i]
                    q.append(j)
                elif col[j] == col[i]:
                    raise ConstructionError("extended diagram is not bipartite")
    if any(c is None for c in col):
        raise ConstructionError("extended diagram is disconnected")
    return col


@dataclass(frozen=True)
class Generator:
    label: str
    root: QVector
    offset: int
    isometry: EuclideanIsometry


class EuclideanData:
    """All derived data for one type. Immutable after construction; the lazily
    computed attributes are deterministic caches."""

    def __init__(self, t: DynkinType):
        validate_type(t)
        self.type = t
        self.n = t.rank
        self.ambient, _ = simple_roots(t)
        self.rs = build_root_system(t)
        self.space = la.span_basis(list(self.rs.simple), self.ambient)
        self.mu = self.rs.highest_root
        self.m = self.rs.highest_coeffs
        self._build_generators()
        self._build_axis()
        self._build_horizontal()

    # generators and bipartition
    def _build_generators(self):
        rs = self.rs
        phi = [self.mu] + list(rs.simple)
        self.phi = tuple(phi)
        col = two_colouring(phi, 0)
        gens = [Generator("r_mu,1", self.mu, 1, reflection(self.mu, 1))]
        gens += [Generator(f"r_{i + 1},0", a, 0, reflection(a, 0)) for i, a in enumerate(rs.simple)]
        self.S = tuple(gens)
        self.S_b = tuple(g for g, c in zip(gens, col) if c == 0)
        self.S_g = tuple(g for g, c in zip(gens, col) if c == 1)
        self.simple_blue = tuple(i for i in range(self.n) if col[i + 1] == 0)
        self.simple_green = tuple(i for i in range(self.n) if col[i + 1] == 1)
        d = self.ambient
        self.iota_b = product([g.isometry for g in self.S_b], d)
        self.iota_g = product([g.isometry for g in self.S_g], d)
        self.w = self.iota_b * self.iota_g
        self.r_mu1 = gens[0].isometry
        self.w0 = self.r_mu1 * self.w
        self.identity = identity(d)

    def invariants(self, u: EuclideanIsometry):
        return basic_invariants(u, self.space)

    def _build_axis(self):
        inv = self.invariants(self.w)
        if inv.elliptic or inv.min.dim != 1:
            raise ConstructionError("w is not hyperbolic with a line as min-set")
        self.axis = inv.min
        gamma_g = la.zeros(self.ambient)
        for i in self.simple_green:
            gamma_g = la.add(gamma_g, la.scale(self.m[i], self.rs.simple[i]))
        gamma_b = self.mu
        for i in self.simple_blue:
            gamma_b = la.sub(gamma_b, la.scale(self.m[i], self.rs.simple[i]))
        self.gamma_blue_form = gamma_b
        self.gamma = gamma_g
        if gamma_b != gamma_g:
            raise ConstructionError("the two expressions for gamma disagree")
        d = self.axis.direction_basis[0]
        if la.rank([d, self.gamma]) != 1:
            raise ConstructionError("gamma does not span the axis direction")
        self.gamma0 = inv.mov.theta0

    def displacement(self, eta: QVector) -> QVector:
        return la.sub(self.w(eta), eta)

    def _build_horizontal(self):
        rs = self.rs
        g = self.gamma
        self.horizontal_roots = tuple(a for a in rs.roots if la.dot(a, g) == 0)
        self.vertical_roots = tuple(a for a in rs.roots if la.dot(a, g) != 0)
        pos_h = [a for a in self.horizontal_roots if rs.is_positive(a)]
        comps = []
        seen = set()
        for a in pos_h:
            if a in seen:
                continue
            comp, stack = {a}, [a]
            while stack:
                x = stack.pop()
                for y in pos_h:
                    if y not in comp and la.dot(x, y) != 0:
                        comp.add(y)
                        stack.append(y)
            seen |= comp
            comps.append(tuple(sorted(comp, key=rs.roots.index)))
        self.component_roots = tuple(comps)
        self.components = tuple(la.linear_span(list(c), self.ambient) for c in comps)
        self.k0 = len(comps)
        self.w_h = reflection(self.mu, 0) * self.r_mu1 * self.w
        e0 = order(self.w_h, E0_CAP)
        if e0 is None:
            raise ConstructionError(f"order of w_h exceeds {E0_CAP}")
        self.e0 = e0
        self.w_e0 = self.w ** e0
        self.w_e0_inv = self.w_e0.inverse()

    # --- positive roots, indexing --------------------------------------------
    @cached_property
    def positive_roots(self) -> Tuple[QVector, ...]:
        return self.rs.positive

    @cached_property
    def positive_vertical(self) -> Tuple[QVector, ...]:
        return tuple(a for a in self.positive_roots if la.dot(a, self.gamma) != 0)

    @cached_property
    def positive_horizontal(self) -> Tuple[QVector, ...]:
        return tuple(a for a in self.positive_roots if la.dot(a, self.gamma) == 0)

    def is_vertical(self, alpha: QVector) -> bool:
        return la.dot(alpha, self.gamma) != 0

    def t_w_conjugate(self, u: EuclideanIsometry) -> EuclideanIsometry:
        return self.w_e0 * u * self.w_e0_inv

    def t_w_power(self, u: EuclideanIsometry, j: int) -> EuclideanIsometry:
        p = self.w ** (self.e0 * j)
        return p * u * p.inverse()

    @cached_property
    def axis_point(self) -> QVector:
        return self.axis.theta0

    # --- horizontal interval data ---------------------------------------------
    @cached_property
    def horizontal_interval_reflections(self) -> Tuple[Tuple[QVector, int], ...]:
        """(alpha, c) for the two reflections r_{alpha,c} per positive horizontal root."""
        out = []
        p = self.axis_point
        for a in self.positive_horizontal:
            c = la.dot(a, p)
            if c.denominator == 1:
                raise ConstructionError("horizontal hyperplane contains the axis")
            lo = c.numerator // c.denominator
            out.append((a, lo))
            out.append((a, lo + 1))
        return tuple(out)

    @cached_property
    def horizontal_reflection_isometries(self) -> Tuple[EuclideanIsometry, ...]:
        return tuple(reflection(a, c) for a, c in self.horizontal_interval_reflections)

    def is_coroot_multiple(self, lam: QVector) -> bool:
        for a in self.positive_roots:
            av = coroot(a)
            num = la.dot(lam, av)
            den = la.dot(av, av)
            j = num / den
            if j.denominator == 1 and la.scale(j, av) == lam:
                return True
        return False

    @cached_property
    def horizontal_factorizations(self) -> Dict[QVector, EuclideanIsometry]:
        """Map lambda -> horizontal part h for every factorisation w = t_lambda h
        with h a product of n-1 horizontal interval reflections."""
        d = self.ambient
        hrefl = self.horizontal_reflection_isometries
        level = {identity(d)}
        for step in range(1, self.n):
            nxt = set()
            for u in level:
                for r in hrefl:
                    v = u * r
                    if v not in nxt and self.invariants(v).isom_length == step:
                        nxt.add(v)
            level = nxt
        out = {}
        for h in level:
            if h.A == self.w.A:
                lam = la.sub(self.w.b, h.b)
                out[lam] = h
        return dict(sorted(out.items()))

    @cached_property
    def interval_translations(self) -> Tuple[QVector, ...]:
        """Translation vectors lambda with t_lambda in [1,w]^W."""
        return tuple(l for l in self.horizontal_factorizations if self.is_coroot_multiple(l))

    def factored_translations(self, lam: QVector) -> Tuple[QVector, ...]:
        if self.k0 == 1:
            raise ValueError("factored translations need k0 >= 2")
        shift = la.scale(Fraction(1, self.k0), self.gamma0)
        return tuple(la.add(la.project(U.direction_basis, lam), shift) for U in self.components)

    @cached_property
    def factored_translation_vectors(self) -> Tuple[Tuple[int, QVector], ...]:
        """(component index, vector), deduplicated, deterministic order."""
        if self.k0 == 1:
            return ()
        out = set()
        for lam in self.interval_translations:
            for j, v in enumerate(self.factored_translations(lam)):
                out.add((j, v))
        return tuple(sorted(out))

    def vertical_projection(self, v: QVector) -> QVector:
        return la.project([self.gamma], v)

    def summary(self) -> dict:
        fmt = lambda v: [str(x) for x in v]
        return {
            "type": str(self.type),
            "rank": self.n,
            "ambient_dim": self.ambient,
            "num_roots": len(self.rs.roots),
            "mu": fmt(self.mu),
            "m_alpha": list(self.m),
            "gamma": fmt(self.gamma),
            "gamma0": fmt(self.gamma0),
            "k0": self.k0,
            "e0": self.e0,
            "blue": [g.label for g in self.S_b],
            "green": [g.label for g in self.S_g],
            "horizontal_component_ranks": [U.dim for U in self.components],
        }


@lru_cache(maxsize=None)
def build(t) -> EuclideanData:
    if isinstance(t, str):
        t = parse_type(t)
    return EuclideanData(t)


def dynkin_height_max(rs: RootSystem) -> Tuple[QVector, Tuple[int, ...]]:
    return highest_root(rs.roots, rs.simple)
