"""Euclidean isometries eta -> A eta + b with exact move-set / min-set data."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence, Tuple

from . import exact_linalg as la
from .exact_linalg import AffineSubspace, QMatrix, QVector


class ZeroRootError(ValueError):
    pass


@dataclass(frozen=True)
class EuclideanIsometry:
    A: QMatrix
    b: QVector

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.A, self.b))
            object.__setattr__(self, "_hash", h)
        return h

    @property
    def dim(self) -> int:
        return len(self.b)

    def _ints(self):
        """(integer A, integer b, common denominator), cached."""
        f = self.__dict__.get("_int_form")
        if f is None:
            d = math.lcm(*(x.denominator for row in self.A for x in row),
                         *(x.denominator for x in self.b))
            ai = tuple(tuple(x.numerator * (d // x.denominator) for x in row) for row in self.A)
            bi = tuple(x.numerator * (d // x.denominator) for x in self.b)
            f = (ai, bi, d)
            object.__setattr__(self, "_int_form", f)
        return f

    def __mul__(self, other: "EuclideanIsometry") -> "EuclideanIsometry":
        # (self * other)(eta) = self(other(eta))
        if self.dim != other.dim:
            raise la.DimensionError("compose: dimension mismatch")
        a1, b1, d1 = self._ints()
        a2, b2, d2 = other._ints()
        cols = tuple(zip(*a2))
        dd = d1 * d2
        A = tuple(tuple(Fraction(sum(x * y for x, y in zip(r, c)), dd) for c in cols) for r in a1)
        b = tuple(Fraction(sum(x * y for x, y in zip(r, b2)) * d1 + bi * dd, dd * d1)
                  for r, bi in zip(a1, b1))
        return EuclideanIsometry(A, b)

    def __call__(self, eta: QVector) -> QVector:
        return apply(self, eta)

    def inverse(self) -> "EuclideanIsometry":
        at = la.transpose(self.A)
        return EuclideanIsometry(at, la.scale(-1, la.matvec(at, self.b)))

    def __pow__(self, k: int) -> "EuclideanIsometry":
        base = self if k >= 0 else self.inverse()
        out = identity(self.dim)
        for _ in range(abs(k)):
            out = out * base
        return out

    def is_identity(self) -> bool:
        return self.A == la.identity(self.dim) and la.is_zero(self.b)

    def is_translation(self) -> bool:
        return self.A == la.identity(self.dim)

    def is_orthogonal(self) -> bool:
        return la.matmul(la.transpose(self.A), self.A) == la.identity(self.dim)

    def __repr__(self):
        fmt = lambda v: "(" + ",".join(str(x) for x in v) + ")"
        return f"Isom(A={[fmt(r) for r in self.A]}, b={fmt(self.b)})"


def identity(n: int) -> EuclideanIsometry:
    return EuclideanIsometry(la.identity(n), la.zeros(n))


def reflection(alpha: QVector, c=0) -> EuclideanIsometry:
    """r_{alpha,c}: eta -> eta - 2(<alpha,eta> - c)/<alpha,alpha> alpha."""
    alpha = la.as_qvec(alpha)
    aa = la.dot(alpha, alpha)
    if aa == 0:
        raise ZeroRootError("reflection needs a nonzero root")
    n = len(alpha)
    A = tuple(tuple((1 if i == j else 0) - 2 * alpha[i] * alpha[j] / aa for j in range(n))
              for i in range(n))
    return EuclideanIsometry(A, la.scale(2 * Fraction(c) / aa, alpha))


def translation(lam: QVector) -> EuclideanIsometry:
    lam = la.as_qvec(lam)
    return EuclideanIsometry(la.identity(len(lam)), lam)


def compose(u: EuclideanIsometry, v: EuclideanIsometry) -> EuclideanIsometry:
    return u * v


def inverse(u: EuclideanIsometry) -> EuclideanIsometry:
    return u.inverse()


def apply(u: EuclideanIsometry, eta: QVector) -> QVector:
    if len(eta) != u.dim:
        raise la.DimensionError("apply: dimension mismatch")
    return la.add(la.matvec(u.A, eta), u.b)


def displacement(u: EuclideanIsometry, eta: QVector) -> QVector:
    return la.sub(apply(u, eta), eta)


@dataclass(frozen=True)
class BasicInvariants:
    mov: AffineSubspace
    min: AffineSubspace
    elliptic: bool
    isom_length: int


def basic_invariants(u: EuclideanIsometry,
                     within: Optional[Tuple[QVector, ...]] = None) -> BasicInvariants:
    """Mov, Min, ellipticity and reflection length of u.

    ``within`` is an optional basis of the invariant linear subspace E in which
    the roots live (used when the ambient Q^m is bigger than E); the min-set is
    then cut down to E.
    """
    return _basic_invariants(u, within)


@lru_cache(maxsize=200_000)
def _basic_invariants(u: EuclideanIsometry, within) -> BasicInvariants:
    n = u.dim
    m = la.mat_sub(u.A, la.identity(n))
    dir_mov = la.span_basis(la.columns(m), n)
    mov = AffineSubspace(u.b, dir_mov)
    theta = mov.theta0
    elliptic = la.is_zero(theta)
    rows = list(m)
    rhs = list(la.sub(theta, u.b))
    if within is not None:
        for nu in la.orth_basis_complement(within, n):
            rows.append(nu)
            rhs.append(la.ZERO)
    mn = la.solve_affine(tuple(rows), tuple(rhs))
    assert mn is not la.Inconsistent
    length = len(dir_mov) + (0 if elliptic else 2)
    return BasicInvariants(mov, mn, elliptic, length)


def isom_length(u: EuclideanIsometry) -> int:
    return basic_invariants(u).isom_length


def is_elliptic(u: EuclideanIsometry) -> bool:
    return basic_invariants(u).elliptic


def isom_leq(u: EuclideanIsometry, v: EuclideanIsometry) -> bool:
    """u below v in Isom(E): |u| + |u^-1 v| = |v|."""
    return isom_length(u) + isom_length(u.inverse() * v) == isom_length(v)


def fixed_point_set(u: EuclideanIsometry, within=None):
    inv = basic_invariants(u, within)
    return inv.min if inv.elliptic else la.Empty


def conjugate(g: EuclideanIsometry, u: EuclideanIsometry) -> EuclideanIsometry:
    """g u g^-1."""
    return g * u * g.inverse()


def order(u: EuclideanIsometry, cap: int = 64) -> Optional[int]:
    p = u
    for k in range(1, cap + 1):
        if p.is_identity():
            return k
        p = p * u
    return None


def product(items: Sequence[EuclideanIsometry], n: int) -> EuclideanIsometry:
    out = identity(n)
    for x in items:
        out = out * x
    return out
