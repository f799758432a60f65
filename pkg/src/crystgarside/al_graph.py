"""Vertices of the additional length graph, preferred paths and the projection to the axis of x.

Vertices are cosets g Delta^Z, each stored through its representative of
infimum 0. Distances in the graph are not computable; only explicit edge
paths (upper bounds) and projection-based diagnostics are offered.
"""
from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .garside_engine import Engine, GroupElement
from .interval import Simple


@dataclass(frozen=True)
class GraphConstants:
    hyperbolicity: int = 60
    quasigeodesic_K: int = 39
    thinness: int = 2


CONSTANTS = GraphConstants()


class PreconditionError(ValueError):
    pass


class WindowError(RuntimeError):
    """Projection boundary not inside the scanned window."""


class MonotonicityError(RuntimeError):
    pass


@dataclass(frozen=True)
class ALVertex:
    rep: GroupElement

    def key(self):
        return self.rep.key()

    def __eq__(self, other):
        return isinstance(other, ALVertex) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


@dataclass(frozen=True)
class PreferredPath:
    vertices: Tuple[ALVertex, ...]

    def __len__(self):
        return len(self.vertices)

    @property
    def length(self) -> int:
        return len(self.vertices) - 1


@dataclass(frozen=True)
class LambdaResult:
    value: int
    window: Tuple[int, int]


@dataclass
class ContractionReport:
    lambda1: int
    lambda2: int
    path: List[ALVertex]
    subpath: List[ALVertex]
    start: Optional[int]
    passed: bool


@dataclass(frozen=True)
class Edge:
    src: ALVertex
    dst: ALVertex
    kind: str = "simple"     # simple | absorbable


class ALGraph:
    def __init__(self, engine: Engine):
        self.E = engine
        self.x = engine.construct_x()
        self._x_inv = engine.left_normal_form(engine.inverse(self.x))

    # --- vertices -------------------------------------------------------
    def vertex_of(self, g: GroupElement) -> ALVertex:
        E = self.E
        g = E.left_normal_form(g)
        # Delta^p S Delta^-p = tau^-p(S)
        rep = GroupElement(0, E.tau_factors(g.factors, -g.p), "left")
        return ALVertex(rep)

    @property
    def base(self) -> ALVertex:
        return ALVertex(self.E.identity())

    def axis_vertex(self, k: int) -> ALVertex:
        """X^k."""
        if k >= 0:
            return ALVertex(self.E.power_nf(self.x, k, check=False))
        return self.vertex_of(self.x_power(k))

    def x_power(self, k: int) -> GroupElement:
        """x^k in left normal form."""
        if k >= 0:
            return self.E.power_nf(self.x, k, check=False)
        out = self.E.identity()
        for _ in range(-k):
            out = self.E.multiply_normal(out, self._x_inv)
        return out

    def act(self, g: GroupElement, v: ALVertex) -> ALVertex:
        return self.vertex_of(self.E.multiply_normal(g, v.rep))

    def x_divides(self, g: GroupElement) -> bool:
        """x is a prefix of g."""
        return self.E.multiply_normal(self._x_inv, g).inf >= 0

    # --- preferred paths ----------------------------------------------
    def preferred_path(self, v1: ALVertex, v2: ALVertex) -> PreferredPath:
        E = self.E
        h = self.vertex_of(E.multiply_normal(E.inverse(v1.rep), v2.rep)).rep
        out = [v1]
        for j in range(1, len(h.factors) + 1):
            out.append(self.vertex_of(E.multiply(v1.rep, GroupElement(0, h.factors[:j]))))
        return PreferredPath(tuple(out))

    # --- projection ----------------------------------------------------
    def default_window(self, v: ALVertex) -> int:
        return 5 * v.rep.sup + 10

    def prefix_pattern(self, v: ALVertex, half: int) -> List[Tuple[int, bool]]:
        """(k, x divides the representative of x^k V) for |k| <= half."""
        E = self.E

        def test(g):
            # rep = tau^-p(S), and x <= tau^-p(S) iff tau^p(x) <= S
            t = E.multiply_normal(E.tau_element(self._x_inv, g.p), GroupElement(0, g.factors, "left"))
            return t.inf >= 0

        # walk outwards from k = 0 so that every step only prepends factors
        up, down = [], []
        cur = v.rep
        for k in range(0, half + 1):
            up.append((k, test(cur)))
            cur = E.multiply_normal(self.x, cur)
        cur = v.rep
        for k in range(-1, -half - 1, -1):
            cur = E.multiply_normal(self._x_inv, cur)
            down.append((k, test(cur)))
        return down[::-1] + up

    def lambda_projection(self, v: ALVertex, window: Optional[int] = None) -> LambdaResult:
        half = self.default_window(v) if window is None else window
        pattern = self.prefix_pattern(v, half)
        flags = [b for _, b in pattern]
        if not flags[-1] or flags[0]:
            raise WindowError(f"boundary outside window +-{half}")
        first_true = flags.index(True)
        if not all(flags[first_true:]):
            raise MonotonicityError(f"prefix pattern is not a half-line: {pattern}")
        k_star = pattern[first_true - 1][0]
        return LambdaResult(-k_star, (-half, half))

    def lam(self, v: ALVertex, window: Optional[int] = None) -> int:
        return self.lambda_projection(v, window).value

    # --- contraction and Lipschitz -------------------------------------
    def check_contraction(self, v1: ALVertex, v2: ALVertex) -> ContractionReport:
        l1, l2 = self.lam(v1), self.lam(v2)
        if l2 - l1 < 3:
            raise PreconditionError(f"projection gap {l2 - l1} < 3")
        path = list(self.preferred_path(v1, v2).vertices)
        sub = list(self.preferred_path(self.axis_vertex(l1 + 1), self.axis_vertex(l2 - 1)).vertices)
        start = _find_run(path, sub)
        return ContractionReport(l1, l2, path, sub, start, start is not None)

    def lipschitz_check(self, v1: ALVertex, v2: ALVertex, d_upper: int) -> bool:
        K = CONSTANTS.quasigeodesic_K
        return abs(self.lam(v2) - self.lam(v1)) <= 2 * (d_upper + 2 * K + 1)

    # --- edge-restricted distance ----------------------------------------
    def neighbours(self, v: ALVertex, edges: Sequence[Tuple[GroupElement, str]]):
        for g, kind in edges:
            u = self.vertex_of(self.E.multiply(v.rep, g))
            if u != v:
                yield u, kind

    def witness_distance_upper(self, v1: ALVertex, v2: ALVertex,
                               edge_window: Sequence[Tuple[GroupElement, str]],
                               max_depth: int = 6) -> float:
        """BFS over the edge-restricted graph; math.inf if not reached."""
        if v1 == v2:
            return 0
        seen = {v1}
        frontier = deque([(v1, 0)])
        while frontier:
            v, d = frontier.popleft()
            if d >= max_depth:
                continue
            for u, _ in self.neighbours(v, edge_window):
                if u == v2:
                    return d + 1
                if u not in seen:
                    seen.add(u)
                    frontier.append((u, d + 1))
        return math.inf

    def simple_edges(self, simples: Iterable[Simple]) -> List[Tuple[GroupElement, str]]:
        rho_d = self.E.G.rho_delta
        out = []
        for s in simples:
            if 0 < s.rho < rho_d:
                out.append((GroupElement(0, (s,)), "simple"))
                # undirected: also V s^-1
                out.append((self.E.inverse(GroupElement(0, (s,))), "simple"))
        return out

    def neighbourhood(self, center: ALVertex, radius: int,
                      edge_window: Sequence[Tuple[GroupElement, str]]):
        seen = {center: 0}
        edges = set()
        frontier = deque([center])
        while frontier:
            v = frontier.popleft()
            if seen[v] >= radius:
                continue
            for u, kind in self.neighbours(v, edge_window):
                a, b = sorted((v, u), key=lambda z: repr(z.key()))
                edges.add(Edge(a, b, kind))
                if u not in seen:
                    seen[u] = seen[v] + 1
                    frontier.append(u)
        return seen, edges

    def to_dot(self, center: ALVertex, radius: int,
               edge_window: Sequence[Tuple[GroupElement, str]]) -> str:
        seen, edges = self.neighbourhood(center, radius, edge_window)
        names = {v: f"v{i}" for i, v in enumerate(sorted(seen, key=lambda z: (seen[z], repr(z.key()))))}
        lines = ["graph AL {"]
        for v, nm in names.items():
            label = self.E.describe(v.rep).replace('"', "'")
            lines.append(f'  {nm} [label="{label}"];')
        for e in sorted(edges, key=lambda e: (names[e.src], names[e.dst])):
            lines.append(f"  {names[e.src]} -- {names[e.dst]} [kind={e.kind}];")
        lines.append("}")
        return "\n".join(lines)

    # --- sampling -----------------------------------------------------
    def random_instance(self, rng: random.Random, far: int = 6,
                        steps: int = 3) -> Tuple[ALVertex, ALVertex]:
        """(s Delta^Z, x^far s' Delta^Z): each one simple away from the axis of x."""
        G = self.E.G
        win = range(-(G.n + 1), G.n + 2)
        s = self.E.random_simple(rng, steps, win)
        t = self.E.random_simple(rng, steps, win)
        v1 = self.vertex_of(GroupElement(0, (s,)))
        v2 = self.vertex_of(self.E.multiply_normal(self.x_power(far), GroupElement(0, (t,))))
        return v1, v2


def _find_run(seq: List, sub: List) -> Optional[int]:
    n, m = len(seq), len(sub)
    for i in range(n - m + 1):
        if seq[i:i + m] == sub:
            return i
    return None


_GRAPHS: Dict[str, ALGraph] = {}


def graph(t) -> ALGraph:
    from .garside_engine import engine
    E = engine(t)
    key = str(E.G.data.type)
    if key not in _GRAPHS:
        _GRAPHS[key] = ALGraph(E)
    return _GRAPHS[key]
