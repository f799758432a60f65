"""Exact rational linear algebra over Q^n.

Vectors are tuples of ``Fraction`` and matrices are tuples of row tuples.
Everything is immutable, so values can be hashed and shared freely.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Tuple, Union

QVector = Tuple[Fraction, ...]
QMatrix = Tuple[QVector, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


class DimensionError(ValueError):
    pass


def qvec(*xs) -> QVector:
    return tuple(Fraction(x) for x in xs)


def as_qvec(xs: Iterable) -> QVector:
    return tuple(Fraction(x) for x in xs)


def zeros(n: int) -> QVector:
    return (ZERO,) * n


def unit(i: int, n: int) -> QVector:
    return tuple(ONE if j == i else ZERO for j in range(n))


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), ZERO)


def add(a: QVector, b: QVector) -> QVector:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: QVector, b: QVector) -> QVector:
    return tuple(x - y for x, y in zip(a, b))


def scale(c, a: QVector) -> QVector:
    return tuple(c * x for x in a)


def is_zero(a: Sequence[Fraction]) -> bool:
    return all(x == 0 for x in a)


def norm2(a: QVector) -> Fraction:
    return dot(a, a)


def identity(n: int) -> QMatrix:
    return tuple(unit(i, n) for i in range(n))


def zero_matrix(n: int, m: Optional[int] = None) -> QMatrix:
    return tuple(zeros(n if m is None else m) for _ in range(n))


def as_qmatrix(rows) -> QMatrix:
    return tuple(as_qvec(r) for r in rows)


def transpose(a: QMatrix) -> QMatrix:
    return tuple(zip(*a))


def matvec(a: QMatrix, v: QVector) -> QVector:
    return tuple(_sparse_dot(r, v) for r in a)


def _sparse_dot(a, b) -> Fraction:
    return sum((x * y for x, y in zip(a, b) if x and y), ZERO)


def matmul(a: QMatrix, b: QMatrix) -> QMatrix:
    bt = transpose(b)
    return tuple(tuple(_sparse_dot(r, c) for c in bt) for r in a)


def mat_sub(a: QMatrix, b: QMatrix) -> QMatrix:
    return tuple(sub(r, s) for r, s in zip(a, b))


def columns(a: QMatrix) -> list:
    return [tuple(col) for col in zip(*a)]


def rref(rows: Sequence[Sequence[Fraction]], ncols: int):
    """Reduced row echelon form. Returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pv = m[r][c]
        if pv != 1:
            m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return [tuple(row) for row in m[:r]], pivots


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    rows = list(rows)
    if not rows:
        return 0
    return len(rref(rows, len(rows[0]))[0])


def span_basis(vectors: Sequence[QVector], n: int) -> Tuple[QVector, ...]:
    """A basis (reduced rows) of the span of ``vectors``."""
    vectors = [v for v in vectors if not is_zero(v)]
    if not vectors:
        return ()
    return tuple(rref(vectors, n)[0])


def null_space(a: Sequence[Sequence[Fraction]], n: int) -> Tuple[QVector, ...]:
    rows, piv = rref(a, n) if a else ([], [])
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        v = [ZERO] * n
        v[f] = ONE
        for row, c in zip(rows, piv):
            v[c] = -row[f]
        basis.append(tuple(v))
    return tuple(basis)


def solve_linear(a: Sequence[Sequence[Fraction]], b: Sequence[Fraction], n: int):
    """Particular solution and null basis of a x = b, or None if inconsistent."""
    aug = [tuple(r) + (bi,) for r, bi in zip(a, b)]
    if not aug:
        return zeros(n), tuple(unit(i, n) for i in range(n))
    rows, piv = rref(aug, n + 1)
    if n in piv:
        return None
    x = [ZERO] * n
    for row, c in zip(rows, piv):
        x[c] = row[n]
    return tuple(x), null_space([r[:n] for r in rows], n)


def gram(basis: Sequence[QVector]) -> QMatrix:
    return tuple(tuple(dot(a, b) for b in basis) for a in basis)


def project(basis: Sequence[QVector], v: QVector) -> QVector:
    """Orthogonal projection of v onto span(basis); basis must be independent."""
    if not basis:
        return zeros(len(v))
    sol = solve_linear(gram(basis), [dot(a, v) for a in basis], len(basis))
    coeffs = sol[0]
    out = zeros(len(v))
    for c, b in zip(coeffs, basis):
        if c:
            out = add(out, scale(c, b))
    return out


def orth_basis_complement(basis: Sequence[QVector], n: int) -> Tuple[QVector, ...]:
    return null_space(list(basis), n) if basis else tuple(unit(i, n) for i in range(n))


class _Inconsistent:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "Inconsistent"

    def __bool__(self):
        return False


Inconsistent = _Inconsistent()
Empty = Inconsistent


@dataclass(frozen=True)
class AffineSubspace:
    """basepoint + span(direction_basis), with cached minimum-norm point theta0."""

    basepoint: QVector
    direction_basis: Tuple[QVector, ...] = ()
    theta0: QVector = field(default=None, compare=False)

    def __post_init__(self):
        n = len(self.basepoint)
        basis = span_basis(list(self.direction_basis), n)
        object.__setattr__(self, "direction_basis", basis)
        if self.theta0 is None:
            t = sub(self.basepoint, project(basis, self.basepoint))
            object.__setattr__(self, "theta0", t)

    @property
    def ambient(self) -> int:
        return len(self.basepoint)

    @property
    def dim(self) -> int:
        return len(self.direction_basis)

    def __contains__(self, p: QVector) -> bool:
        return self.contains_point(p)

    def contains_point(self, p: QVector) -> bool:
        _check_dims(self.ambient, len(p))
        d = sub(p, self.basepoint)
        return is_zero(sub(d, project(self.direction_basis, d)))

    def is_linear(self) -> bool:
        return is_zero(self.theta0)

    def __eq__(self, other):
        if not isinstance(other, AffineSubspace):
            return NotImplemented
        return contains(self, other) and contains(other, self)

    def __hash__(self):
        return hash((self.dim, self.theta0))

    def points(self):
        """basepoint and basepoint + each direction vector."""
        yield self.theta0
        for d in self.direction_basis:
            yield add(self.theta0, d)


def _check_dims(*ds):
    if len(set(ds)) > 1:
        raise DimensionError(f"dimension mismatch: {ds}")


def linear_span(vectors: Sequence[QVector], n: int) -> AffineSubspace:
    return AffineSubspace(zeros(n), tuple(vectors))


def solve_affine(a: QMatrix, b: QVector) -> Union[AffineSubspace, _Inconsistent]:
    n = len(a[0]) if a else len(b)
    _check_dims(len(a), len(b))
    sol = solve_linear(a, b, n)
    if sol is None:
        return Inconsistent
    x, ker = sol
    return AffineSubspace(x, ker)


def standard_form(s: AffineSubspace) -> QVector:
    return s.theta0


def contains(s: AffineSubspace, t: AffineSubspace) -> bool:
    """Whether T is a subset of S."""
    _check_dims(s.ambient, t.ambient)
    if not s.contains_point(t.basepoint):
        return False
    return all(is_zero(sub(d, project(s.direction_basis, d))) for d in t.direction_basis)


def intersect(s: AffineSubspace, t: AffineSubspace):
    """S cap T, or Empty."""
    _check_dims(s.ambient, t.ambient)
    n = s.ambient
    # s.base + S x = t.base + T y
    ds, dt = s.direction_basis, t.direction_basis
    k = len(ds) + len(dt)
    rows = [tuple(ds[j][i] for j in range(len(ds))) + tuple(-dt[j][i] for j in range(len(dt)))
            for i in range(n)]
    rhs = sub(t.basepoint, s.basepoint)
    sol = solve_linear(rows, rhs, k) if k else (() if is_zero(rhs) else None, ())
    if sol is None or sol[0] is None:
        return Empty
    x, ker = sol
    p = s.basepoint
    for c, d in zip(x[: len(ds)], ds):
        p = add(p, scale(c, d))
    dirs = []
    for kv in ker:
        v = zeros(n)
        for c, d in zip(kv[: len(ds)], ds):
            v = add(v, scale(c, d))
        dirs.append(v)
    return AffineSubspace(p, tuple(dirs))


def orth_complement(u: AffineSubspace) -> AffineSubspace:
    if not u.contains_point(zeros(u.ambient)):
        raise ValueError("orth_complement needs a linear subspace")
    n = u.ambient
    return AffineSubspace(zeros(n), orth_basis_complement(u.direction_basis, n))

