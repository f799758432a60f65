"""Registry of finite checks, one entry per verifiable statement.

Every verifier takes a type string and a ``VerifyConfig`` and returns a list of
``Check`` records. An ``UnknownVerdict`` raised anywhere inside a verifier is
turned into an ``unknown`` record and never into a pass.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional

from . import exact_linalg as la
from .al_graph import CONSTANTS, PreconditionError, graph
from .coxeter_data import build, dynkin_height_max, reflection_closure
from .garside_engine import GroupElement, engine
from .interval import Simple, UnknownVerdict, structure
from .isometry import basic_invariants, reflection, translation

PASS, FAIL, UNKNOWN = "pass", "fail", "unknown"
DESK_TYPES = ("C~2", "C~3", "G~2", "B~3", "D~4", "F~4")


@dataclass(frozen=True)
class VerifyConfig:
    seed: int = 7
    power: int = 6
    instances: int = 20
    samples: int = 300
    products: int = 500
    window: Optional[int] = None
    radius: int = 2


@dataclass
class Check:
    id: str
    verdict: str
    witness: dict = field(default_factory=dict)

    def as_dict(self):
        return {"id": self.id, "verdict": self.verdict, "witness": self.witness}


def _v(ok: bool) -> str:
    return PASS if ok else FAIL


def _s(v) -> List[str]:
    return [str(x) for x in v]


REGISTRY: Dict[str, Callable[[str, VerifyConfig], List[Check]]] = {}


def verifier(name):
    def deco(fn):
        REGISTRY[name] = fn
        return fn
    return deco


def run(name: str, t: str, cfg: VerifyConfig = VerifyConfig()) -> List[Check]:
    if name not in REGISTRY:
        raise KeyError(name)
    try:
        checks = REGISTRY[name](t, cfg)
    except UnknownVerdict as e:
        checks = [Check(name, UNKNOWN, {"reason": str(e)})]
    G = structure(t)
    if G.anomalies:
        checks.append(Check(f"{name}/anomalies", UNKNOWN, {"anomalies": list(G.anomalies)}))
    return sorted(checks, key=lambda c: c.id)


# --- root data ---------------------------------------------------------------

@verifier("root-integrity")
def root_integrity(t, cfg):
    d = build(t)
    rs = d.rs
    closure = reflection_closure(rs.simple)
    mu, m = dynkin_height_max(rs)
    longest = max(la.norm2(a) for a in rs.roots)
    return [
        Check("closure", _v(closure == frozenset(rs.roots)),
              {"table": len(rs.roots), "closure": len(closure)}),
        Check("highest-root", _v(mu == d.mu and m == d.m), {"mu": _s(mu), "m": list(m)}),
        Check("highest-coeffs-positive", _v(all(c >= 1 for c in d.m)), {"m": list(d.m)}),
        Check("highest-root-long", _v(la.norm2(d.mu) == longest), {}),
        Check("gamma-formula", _v(d.gamma == d.gamma_blue_form),
              {"green": _s(d.gamma), "blue": _s(d.gamma_blue_form)}),
    ]


@verifier("isometry-invariants")
def isometry_invariants(t, cfg):
    d = build(t)
    rng = random.Random(cfg.seed)
    gens = [g.isometry for g in d.S]
    bad = []
    for i in range(cfg.products):
        u = d.identity
        for _ in range(rng.randint(1, 4)):
            u = u * rng.choice(gens)
        inv = d.invariants(u)
        dm, dn = inv.mov.direction_basis, inv.min.direction_basis
        perp = all(la.dot(a, b) == 0 for a in dm for b in dn)
        if not perp or len(dm) + len(dn) != d.n:
            bad.append(i)
    alpha = d.rs.simple[0]
    beta = next(b for b in d.rs.roots if la.dot(alpha, b) == 0 and la.rank([alpha, b]) == 2) \
        if d.n > 1 else alpha
    r = reflection(alpha, 1)
    tr = translation(d.rs.coroot(alpha))
    glide = translation(d.rs.coroot(beta)) * r
    lengths = [d.invariants(u).isom_length for u in (r, tr, glide)]
    return [
        Check("mov-perp-min", _v(not bad), {"samples": cfg.products, "failures": bad[:10]}),
        Check("length-examples", _v(lengths == [1, 2, 3]), {"lengths": lengths}),
    ]


# --- axis, verticality and the shift ------------------------------------------

@verifier("vertical-generators")
def vertical_generators(t, cfg):
    d = build(t)
    out = []
    for i, a in enumerate(d.rs.simple):
        mi = d.m[i]
        want = (-1 if i in d.simple_blue else 1) * mi * la.norm2(a)
        got = la.dot(a, d.gamma)
        out.append(Check(f"simple[{i}]", _v(got == want and got != 0), {"<a,gamma>": str(got)}))
    got = la.dot(d.mu, d.gamma)
    out.append(Check("mu", _v(got == la.norm2(d.mu) and got != 0), {"<mu,gamma>": str(got)}))
    return out


@verifier("translation-shift")
def translation_shift(t, cfg):
    d = build(t)
    out = []
    for i in range(-2, 3):
        got = d.t_w_conjugate(reflection(d.mu, i))
        shift = next((j for j in range(i - 8, i + 9) if reflection(d.mu, j) == got), None)
        out.append(Check(f"T_w(r_mu,{i})", _v(got == reflection(d.mu, i + 1)),
                         {"observed_offset": shift}))
    out.append(Check("w^e0-translation", _v(d.w ** d.e0 == translation(la.scale(d.e0, d.gamma0))),
                     {"e0": d.e0, "gamma0": _s(d.gamma0)}))
    fixed = all(d.t_w_conjugate(r) == r for r in d.horizontal_reflection_isometries)
    out.append(Check("T_w-fixes-horizontal", _v(fixed), {}))
    t_mu = translation(d.rs.coroot(d.mu))
    out.append(Check("w=t_mu*w_h", _v(t_mu * d.w_h == d.w), {}))
    return out


# --- weightedness and r0 ----------------------------------------------------

@verifier("weightedness")
def weightedness(t, cfg):
    G = structure(t)
    d = G.data
    ib, ig, w0 = G.iota_b_prime, G.iota_g_prime, G.w0
    out = [
        Check("(ib',w0) left", _v(G.is_left_weighted(ib, w0))),
        Check("(ib',w0) right", _v(G.is_right_weighted(ib, w0))),
        Check("(w0,ig') left", _v(G.is_left_weighted(w0, ig))),
        Check("(w0,ig') right", _v(G.is_right_weighted(w0, ig))),
        Check("ib'*ig'=w", _v(ib.iso * ig.iso == G.w)),
        Check("co-complement(w0)=r_mu1", _v(G.co_complement(w0).iso == d.r_mu1)),
    ]
    dw0 = G.complement(w0)
    inv = d.invariants(dw0.iso)
    is_refl = inv.elliptic and inv.isom_length == 1
    root = inv.mov.direction_basis[0] if is_refl else None
    phi = set(d.phi) | {la.scale(-1, a) for a in d.phi}
    outside = is_refl and not any(la.rank([root, a]) == 1 for a in phi)
    out.append(Check("complement(w0)-reflection-outside-phi", _v(is_refl and outside),
                     {"rho": str(dw0.rho), "root": _s(root) if root else None}))
    green = [d.rs.simple[i] for i in d.simple_green]
    off_green = is_refl and not any(la.rank([root, a]) == 1 for a in green)
    out.append(Check("complement(w0)-root-outside-green", _v(off_green), {}))
    return out


@verifier("find-r0")
def find_r0(t, cfg):
    G = structure(t)
    res = G.find_r0()
    bound = 3 * (G.n + 1)
    out = [Check(f"r0 {k}", _v(v), {}) for k, v in res.checks.items()]
    out.append(Check("r0-within-bound", _v(abs(res.m0) <= bound),
                     {"r0": res.atom.label, "m0": res.m0,
                      "k_offsets": _s(res.k_offsets), "l_offsets": _s(res.l_offsets)}))
    return out


# --- x ------------------------------------------------------------------------

@verifier("x-normal-form")
def x_normal_form(t, cfg):
    E = engine(t)
    x = E.construct_x()
    word = E.x_word()
    lnf = E.left_normal_form(GroupElement(0, word))
    rnf = E.right_normal_form(GroupElement(0, word))
    same = lambda a, b: [s.iso for s in a] == [s.iso for s in b]
    return [
        Check("left-nf", _v(lnf.p == 0 and same(lnf.factors, word)), {"nf": E.describe(lnf)}),
        Check("right-nf", _v(rnf.p == 0 and same(rnf.factors, word)), {}),
        Check("inf-len-sup", _v((E.inf(x), E.canonical_length(x), E.sup(x)) == (0, 5, 5)), {}),
        Check("first=last", _v(x.factors[0].iso == x.factors[-1].iso), {}),
    ]


@verifier("x-rigid")
def x_rigid(t, cfg):
    E = engine(t)
    x = E.construct_x()
    out = [Check("is-rigid", _v(E.is_rigid(x)))]
    for m in range(1, cfg.power + 1):
        slid = E.left_normal_form(E.power(x, m))
        block = GroupElement(0, x.factors * m)
        ok = slid.key() == block.key()
        out.append(Check(f"power-{m}", _v(ok and slid.canonical_length == 5 * m),
                         {"inf": slid.inf, "len": slid.canonical_length}))
    return out


@verifier("x-complement")
def x_complement(t, cfg):
    E = engine(t)
    G = E.G
    x = E.construct_x()
    dx = E.right_complement(x)
    q = len(x.factors)
    expected = tuple(G.tau_power(G.complement(x.factors[q - 1 - i]), i) for i in range(q))
    rnf = E.right_normal_form(dx)
    out = [Check("complement-x", _v(dx.p == 0 and [s.iso for s in dx.factors] == [s.iso for s in expected]),
                 {"nf": E.describe(dx)}),
           Check("complement-x-right-normal",
                 _v(rnf.p == 0 and [s.iso for s in rnf.factors] == [s.iso for s in expected]), {})]
    for m in range(1, min(cfg.power, 4) + 1):
        dm = E.right_complement(E.power_nf(x, m, check=False))
        want = tuple(s for i in range(m) for s in E.tau_factors(dx.factors, 5 * i))
        out.append(Check(f"complement-x^{m}", _v(dm.p == 0 and [s.iso for s in dm.factors] == [s.iso for s in want]),
                         {"len": dm.canonical_length}))
    return out


@verifier("x-absorb")
def x_absorb(t, cfg):
    E = engine(t)
    G = E.G
    x = E.construct_x()
    r0 = E.r0().atom.as_simple()
    cases = {
        "x": x,
        "complement(x)": E.right_complement(x),
        "w0": E.from_simple(G.w0),
        "complement(r0)": E.from_simple(G.complement(r0)),
    }
    return [Check(f"not-absorbable {k}", _v(E.rho_refute_absorbable(g)), {}) for k, g in cases.items()]


@verifier("x-delta-commute")
def x_delta_commute(t, cfg):
    E = engine(t)
    bound = 3 * E.G.data.e0
    got = E.delta_commutation_window(E.construct_x(), bound)
    return [Check("commuting-powers", _v(got == [0]), {"bound": bound, "found": got})]


# --- normal-form oracle ----------------------------------------------------------

def random_positive_word(E, rng, max_atoms=4):
    G = E.G
    win = range(-(G.n + 1), G.n + 2)
    pool = G.atoms_window(win)
    pool = [a for a in pool if a.kind != "translation"]
    return [rng.choice(pool) for _ in range(rng.randint(1, max_atoms))]


@verifier("nf-oracle")
def nf_oracle(t, cfg):
    E = engine(t)
    G = E.G
    rng = random.Random(cfg.seed)
    fails = {"left-normal": [], "idempotent": [], "strategy": [], "multiply-out": [],
             "right-multiply-out": [], "refactor": []}
    for i in range(cfg.samples):
        atoms = random_positive_word(E, rng)
        g = E.from_atoms(atoms)
        L = E.left_normal_form(g)
        if not E.is_left_normal(L):
            fails["left-normal"].append(i)
        if E.left_normal_form(GroupElement(L.p, L.factors)).key() != L.key():
            fails["idempotent"].append(i)
        if E.left_normal_form(g, strategy="rightmost").key() != L.key():
            fails["strategy"].append(i)
        if E.isometry(L) != E.isometry(g) or E.weight(L) != E.weight(g):
            fails["multiply-out"].append(i)
        R = E.right_form_element(E.right_normal_form(g))
        if E.isometry(R) != E.isometry(g) or E.weight(R) != E.weight(g):
            fails["right-multiply-out"].append(i)
        # regroup each factor's witness atoms into random smaller simples
        re = GroupElement(L.p, tuple(
            Simple(_prod(c, G), sum((a.rho for a in c), Fraction(0)))
            for s in L.factors
            for c in _chunks([a.as_simple() for a in G.witness(s)], rng)))
        Rn = E.left_normal_form(re)
        if (Rn.inf, Rn.sup) != (L.inf, L.sup) or Rn.key() != L.key():
            fails["refactor"].append(i)
    return [Check(k, _v(not v), {"samples": cfg.samples, "failures": v[:10]}) for k, v in fails.items()]


def _chunks(seq, rng):
    out, i = [], 0
    while i < len(seq):
        j = i + rng.randint(1, 2)
        out.append(seq[i:j])
        i = j
    return out


def _prod(simples, G):
    u = G.one.iso
    for s in simples:
        u = u * s.iso
    return u


# --- graph ------------------------------------------------------------------------

@verifier("lambda-axis")
def lambda_axis(t, cfg):
    A = graph(t)
    out = [Check("lambda(*)", _v(A.lam(A.base) == 0), {})]
    for k in range(-5, 6):
        v = A.axis_vertex(k)
        w = cfg.window or A.default_window(v)
        l1 = A.lam(v, w)
        l2 = A.lam(v, 2 * w)
        out.append(Check(f"lambda(X^{k})", _v(l1 == k and l2 == k), {"value": l1, "doubled": l2, "window": w}))
    return out


@verifier("contraction")
def contraction(t, cfg):
    A = graph(t)
    rng = random.Random(cfg.seed)
    K = CONSTANTS.quasigeodesic_K
    out = []
    # fixed instance: * to X^5
    rep = A.check_contraction(A.base, A.axis_vertex(5))
    out.append(Check("contraction(*,X^5)", _v(rep.passed), {"start": rep.start}))
    done, tries = 0, 0
    lip_bad = []
    while done < cfg.instances and tries < 20 * cfg.instances:
        tries += 1
        v1, v2 = A.random_instance(rng)
        try:
            r = A.check_contraction(v1, v2)
        except PreconditionError:
            continue
        done += 1
        d_up = len(r.path) - 1
        if not A.lipschitz_check(v1, v2, d_up):
            lip_bad.append(done)
        out.append(Check(f"instance-{done:02d}", _v(r.passed),
                         {"lambda": [r.lambda1, r.lambda2], "start": r.start,
                          "path": len(r.path), "subpath": len(r.subpath)}))
    out.append(Check("instance-count", _v(done == cfg.instances), {"found": done, "tries": tries}))
    out.append(Check("lipschitz", _v(not lip_bad), {"K": K, "violations": lip_bad}))
    return out


SUITES = {
    1: ["root-integrity"],
    2: ["isometry-invariants"],
    3: ["vertical-generators", "translation-shift"],
    4: ["weightedness", "find-r0"],
    5: ["x-normal-form", "x-rigid", "x-complement", "x-absorb", "x-delta-commute"],
    6: ["nf-oracle"],
    7: ["lambda-axis", "contraction"],
}
