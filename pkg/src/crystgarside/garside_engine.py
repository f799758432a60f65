"""Elements of the crystallographic Garside group and their normal forms.

An element is Delta^p s_1 ... s_q with simple factors s_i. Products, inverses
and Delta-conjugation are carried out on this representation; normal forms
are obtained by local sliding of atoms between adjacent factors.
"""
from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .interval import Atom, GarsideInterval, Simple, UnknownVerdict, structure
from .isometry import EuclideanIsometry


@dataclass(frozen=True)
class GroupElement:
    p: int
    factors: Tuple[Simple, ...] = ()
    normal: str = "none"      # none | left | right | both

    @property
    def inf(self) -> int:
        return self.p

    @property
    def canonical_length(self) -> int:
        return len(self.factors)

    @property
    def sup(self) -> int:
        return self.p + len(self.factors)

    def key(self):
        return (self.p, tuple(s.iso for s in self.factors))


@dataclass(frozen=True)
class RightForm:
    """s'_q ... s'_1 Delta^p."""
    factors: Tuple[Simple, ...]
    p: int


@dataclass(frozen=True)
class NPForm:
    neg: GroupElement
    pos: GroupElement


class WordParseError(ValueError):
    pass


class Engine:
    def __init__(self, G: GarsideInterval):
        self.G = G
        self.n = G.n
        self._x: Optional[GroupElement] = None
        self._r0 = None

    # --- construction ---------------------------------------------------
    def element(self, p: int = 0, factors: Sequence[Simple] = ()) -> GroupElement:
        return GroupElement(p, tuple(factors))

    def identity(self) -> GroupElement:
        return GroupElement(0, (), "both")

    def delta(self, k: int = 1) -> GroupElement:
        return GroupElement(k, (), "both")

    def from_simple(self, s: Simple) -> GroupElement:
        return GroupElement(0, (s,))

    def from_atoms(self, atoms: Sequence[Atom]) -> GroupElement:
        return GroupElement(0, tuple(a.as_simple() for a in atoms))

    # --- group operations ----------------------------------------------
    def tau_factors(self, factors, j):
        if j == 0:
            return tuple(factors)
        return tuple(self.G.tau_power(s, j) for s in factors)

    def multiply(self, g: GroupElement, h: GroupElement) -> GroupElement:
        # Delta^p S Delta^p' S' = Delta^(p+p') tau^p'(S) S'
        return GroupElement(g.p + h.p, self.tau_factors(g.factors, h.p) + h.factors)

    def product(self, items: Sequence[GroupElement]) -> GroupElement:
        out = self.identity()
        for g in items:
            out = self.multiply(out, g)
        return out

    def inverse(self, g: GroupElement) -> GroupElement:
        # s^-1 = d(s) Delta^-1
        G = self.G
        parts = []
        for s in reversed(g.factors):
            parts.append(GroupElement(0, (G.complement(s),)))
            parts.append(self.delta(-1))
        parts.append(self.delta(-g.p))
        return self.product(parts)

    def power(self, g: GroupElement, m: int) -> GroupElement:
        base = g if m >= 0 else self.inverse(g)
        return self.product([base] * abs(m))

    def tau_element(self, g: GroupElement, j: int) -> GroupElement:
        return GroupElement(g.p, self.tau_factors(g.factors, j), g.normal)

    def isometry(self, g: GroupElement) -> EuclideanIsometry:
        u = self.G.w_power(g.p)
        for s in g.factors:
            u = u * s.iso
        return u

    def weight(self, g: GroupElement) -> Fraction:
        return g.p * self.G.rho_delta + sum((s.rho for s in g.factors), Fraction(0))

    # --- left normal form ----------------------------------------------
    def _slide_left(self, s: Simple, t: Simple) -> Tuple[Simple, Simple, bool]:
        G = self.G
        moved = False
        while True:
            common = G.atom_set(G.complement(s)) & G.atom_set(t)
            a = G.pick_atom(common)
            if a is None:
                return s, t, moved
            s = Simple(s.iso * a.iso, s.rho + a.weight)
            t = Simple(a.iso.inverse() * t.iso, t.rho - a.weight)
            moved = True

    def _extract_left(self, p, fac):
        """Drop trivial factors and move Delta factors to the front."""
        rho_d = self.G.rho_delta
        out = []
        for s in fac:
            if s.rho == 0:
                continue
            if s.rho == rho_d:
                out = list(self.tau_factors(out, 1))
                p += 1
            else:
                out.append(s)
        return p, out

    def left_normal_form(self, g: GroupElement, strategy: str = "leftmost") -> GroupElement:
        if g.normal in ("left", "both"):
            return g
        p, fac = self._extract_left(g.p, g.factors)
        return self._slide_to_normal(p, fac, set(range(len(fac) - 1)), strategy)

    def multiply_normal(self, g: GroupElement, h: GroupElement) -> GroupElement:
        """Left normal form of g h; only the junction of the two normal forms is slid."""
        g, h = self.left_normal_form(g), self.left_normal_form(h)
        fac = list(self.tau_factors(g.factors, h.p)) + list(h.factors)
        j = len(g.factors) - 1
        dirty = {j} if 0 <= j < len(fac) - 1 else set()
        return self._slide_to_normal(g.p + h.p, fac, dirty, "leftmost")

    def _slide_to_normal(self, p, fac, dirty, strategy):
        pick = min if strategy == "leftmost" else max
        rho_d = self.G.rho_delta
        while dirty:
            i = pick(dirty)
            dirty.discard(i)
            s, t, moved = self._slide_left(fac[i], fac[i + 1])
            if not moved:
                continue
            fac[i], fac[i + 1] = s, t
            dirty.update((i - 1, i + 1))
            if t.rho == 0:
                del fac[i + 1]
                dirty = {j - 1 if j > i else j for j in dirty}
                dirty.add(i)
            if s.rho == rho_d:
                # Delta s' = s' ... moved to the front: tau on the prefix
                fac[:i] = self.tau_factors(fac[:i], 1)
                del fac[i]
                p += 1
                dirty = {j - 1 if j > i else j for j in dirty if j != i}
                dirty.update((i - 1, i))
            dirty = {j for j in dirty if 0 <= j < len(fac) - 1}
        return GroupElement(p, tuple(fac), "left")

    def is_left_normal(self, g: GroupElement) -> bool:
        rho_d = self.G.rho_delta
        if any(s.rho in (0, rho_d) for s in g.factors):
            return False
        return all(self.G.is_left_weighted(a, b) for a, b in zip(g.factors, g.factors[1:]))

    # --- right normal form ---------------------------------------------
    def _slide_right(self, s: Simple, t: Simple):
        G = self.G
        moved = False
        while True:
            common = G.right_atom_set(G.co_complement(t)) & G.right_atom_set(s)
            a = G.pick_atom(common)
            if a is None:
                return s, t, moved
            s = Simple(s.iso * a.iso.inverse(), s.rho - a.weight)
            t = Simple(a.iso * t.iso, t.rho + a.weight)
            moved = True

    def _extract_right(self, fac, p):
        rho_d = self.G.rho_delta
        out = []
        for s in reversed(fac):
            if s.rho == 0:
                continue
            if s.rho == rho_d:
                out = list(self.tau_factors(out, -1))
                p += 1
            else:
                out.append(s)
        return list(reversed(out)), p

    def right_normal_form(self, g: GroupElement) -> RightForm:
        # Delta^p S = tau^-p(S) Delta^p
        fac, p = self._extract_right(list(self.tau_factors(g.factors, -g.p)), g.p)
        dirty = set(range(len(fac) - 1))
        rho_d = self.G.rho_delta
        while dirty:
            i = max(dirty)
            dirty.discard(i)
            s, t, moved = self._slide_right(fac[i], fac[i + 1])
            if not moved:
                continue
            fac[i], fac[i + 1] = s, t
            dirty.update((i - 1, i + 1))
            if t.rho == rho_d:
                fac[i + 2:] = self.tau_factors(fac[i + 2:], -1)
                del fac[i + 1]
                p += 1
                dirty = {j - 1 if j > i else j for j in dirty}
                dirty.add(i)
            if s.rho == 0:
                del fac[i]
                dirty = {j - 1 if j > i else j for j in dirty if j != i}
                dirty.update((i - 1, i))
            dirty = {j for j in dirty if 0 <= j < len(fac) - 1}
        return RightForm(tuple(fac), p)

    def right_form_element(self, r: RightForm) -> GroupElement:
        return GroupElement(r.p, self.tau_factors(r.factors, r.p))

    def is_right_normal(self, r: RightForm) -> bool:
        f = r.factors
        return all(self.G.is_right_weighted(a, b) for a, b in zip(f, f[1:]))

    # --- invariants -----------------------------------------------------
    def equal(self, g: GroupElement, h: GroupElement) -> bool:
        return self.left_normal_form(g).key() == self.left_normal_form(h).key()

    def inf(self, g):
        return self.left_normal_form(g).inf

    def sup(self, g):
        return self.left_normal_form(g).sup

    def canonical_length(self, g):
        return self.left_normal_form(g).canonical_length

    def np_form(self, g: GroupElement) -> NPForm:
        g = self.left_normal_form(g)
        if g.p >= 0:
            return NPForm(self.identity(), g)
        m = -g.p
        k = min(m, len(g.factors))
        head = GroupElement(-m, g.factors[:k])
        a = self.left_normal_form(self.inverse(head))
        b = GroupElement(0, g.factors[k:], "left")
        if a.factors and b.factors:
            first_a = a.factors[0] if a.p == 0 else self.G.delta
            if not (self.G.atom_set(first_a) & self.G.atom_set(b.factors[0])).is_empty():
                raise UnknownVerdict("negative and positive parts share a divisor")
        return NPForm(a, b)

    def positive_prefix_test(self, u: GroupElement, g: GroupElement) -> bool:
        return self.inf(self.multiply(self.inverse(u), g)) >= 0

    def right_complement(self, g: GroupElement) -> GroupElement:
        """d(g) = g^-1 Delta^sup(g)."""
        g = self.left_normal_form(g)
        return self.left_normal_form(self.multiply(self.inverse(g), self.delta(g.sup)))

    # --- rigidity and powers ---------------------------------------------
    def is_rigid(self, g: GroupElement) -> bool:
        g = self.left_normal_form(g)
        if g.p != 0 or not g.factors:
            return False
        return self.G.is_left_weighted(g.factors[-1], g.factors[0])

    def power_nf(self, g: GroupElement, m: int, check: bool = True) -> GroupElement:
        g = self.left_normal_form(g)
        if self.is_rigid(g):
            out = GroupElement(0, g.factors * m, "left")
            if check:
                slid = self.left_normal_form(self.power(g, m))
                if slid.key() != out.key():
                    raise UnknownVerdict("rigid power disagrees with sliding")
            return out
        return self.left_normal_form(self.power(g, m))

    # --- absorbability tools -------------------------------------------
    def rho_refute_absorbable(self, g: GroupElement) -> bool:
        """True when weight accounting rules out absorbability of g."""
        g = self.left_normal_form(g)
        if g.p != 0:
            if g.sup == 0:
                g = self.left_normal_form(self.inverse(g))
            else:
                return False
        bound = self.G.rho_delta - 2 * self.G.omega
        return any(s.rho > bound for s in g.factors)

    def verify_absorption_certificate(self, g: GroupElement, h: GroupElement) -> bool:
        hg = self.left_normal_form(self.multiply(h, g))
        hn = self.left_normal_form(h)
        return hg.inf == hn.inf and hg.sup == hn.sup

    def bounded_absorber_search(self, g: GroupElement, radius: int,
                                candidates: Sequence[Simple]) -> Optional[GroupElement]:
        for r in range(1, radius + 1):
            for combo in itertools.product(candidates, repeat=r):
                h = GroupElement(0, tuple(combo))
                if self.verify_absorption_certificate(g, h):
                    return self.left_normal_form(h)
        return None

    def delta_commutation_window(self, g: GroupElement, bound: int) -> List[int]:
        g = self.left_normal_form(g)
        out = []
        for l in range(-bound, bound + 1):
            t = self.tau_element(g, l)
            if t.key() == g.key():
                out.append(l)
        return out

    # --- x -----------------------------------------------------------------
    def r0(self):
        if self._r0 is None:
            self._r0 = self.G.find_r0()
        return self._r0

    def x_word(self) -> Tuple[Simple, ...]:
        G = self.G
        r0 = self.r0().atom.as_simple()
        return (r0, G.iota_b_prime, G.w0, G.iota_g_prime, r0)

    def construct_x(self) -> GroupElement:
        if self._x is not None:
            return self._x
        word = self.x_word()
        G = self.G
        ok_left = all(G.is_left_weighted(a, b) for a, b in zip(word, word[1:]))
        ok_right = all(G.is_right_weighted(a, b) for a, b in zip(word, word[1:]))
        if not (ok_left and ok_right):
            raise UnknownVerdict("defining word of x is not weighted")
        self._x = GroupElement(0, word, "both")
        return self._x

    # --- words ---------------------------------------------------------------
    def parse_word(self, text: str) -> GroupElement:
        parts = []
        for tok in text.split():
            parts.append(self._token(tok))
        return self.product(parts)

    _R = re.compile(r"^r\[(-?\d+),(-?\d+)\]$")
    _I = re.compile(r"^(hr|ft)\[(\d+)\]$")

    def _token(self, tok: str) -> GroupElement:
        G = self.G
        if tok == "D":
            return self.delta(1)
        if tok in ("D^-1", "D-1"):
            return self.delta(-1)
        named = {"ib'": lambda: G.iota_b_prime, "ig'": lambda: G.iota_g_prime,
                 "ib": lambda: G.iota_b, "ig": lambda: G.iota_g,
                 "w0": lambda: G.w0, "r0": lambda: self.r0().atom.as_simple()}
        if tok in named:
            return self.from_simple(named[tok]())
        if tok == "x":
            return self.construct_x()
        if tok in ("x^-1", "X"):
            return self.inverse(self.construct_x())
        m = self._R.match(tok)
        if m:
            i, k = int(m.group(1)), int(m.group(2))
            if not 0 <= i < len(G.vertical_roots):
                raise WordParseError(f"vertical root index out of range in {tok}")
            return self.from_simple(G.vertical_atom(i, k).as_simple())
        m = self._I.match(tok)
        if m:
            kind, i = m.group(1), int(m.group(2))
            for a in G.finite_atoms:
                if a.label == tok:
                    return self.from_simple(a.as_simple())
            raise WordParseError(f"no atom {tok}")
        raise WordParseError(f"unknown token {tok!r}")

    # --- labels --------------------------------------------------------------
    def simple_label(self, s: Simple) -> str:
        G = self.G
        names = {G.delta.iso: "D", G.one.iso: "1"}
        for nm, attr in (("ib'", "iota_b_prime"), ("ig'", "iota_g_prime"), ("w0", "w0"),
                         ("ib", "iota_b"), ("ig", "iota_g")):
            names.setdefault(getattr(G, attr).iso, nm)
        if s.iso in names:
            return names[s.iso]
        return ".".join(a.label for a in G.witness(s))

    def describe(self, g: GroupElement) -> str:
        parts = [f"D^{g.p}"] if g.p else []
        parts += [f"({self.simple_label(s)})" for s in g.factors]
        return " ".join(parts) if parts else "1"

    # --- sampling ---------------------------------------------------------
    def random_simple(self, rng: random.Random, steps: int, window: range) -> Simple:
        """Random walk down the interval: multiply by random atoms of the complement."""
        G = self.G
        s = G.one
        for _ in range(steps):
            aset = G.atom_set(G.complement(s))
            atoms = G.atom_list(aset, window)
            if not atoms:
                break
            a = rng.choice(atoms)
            ns = Simple(s.iso * a.iso, s.rho + a.weight)
            if ns.rho >= G.rho_delta:
                break
            s = ns
        return s


_ENGINES: Dict[str, Engine] = {}


def engine(t) -> Engine:
    G = structure(t)
    key = str(G.data.type)
    if key not in _ENGINES:
        _ENGINES[key] = Engine(G)
    return _ENGINES[key]
