"""Points, subspaces, projection, field reduction and cross-ratio.

All objects are plain immutable values; operations take the field as their
first argument. Vectors are tuples of field elements. A point is stored with
its first nonzero coordinate equal to 1, a subspace as the rows of its
reduced row echelon basis.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .field import GF


class GeometryError(ValueError):
    pass


class AmbientMismatch(GeometryError):
    pass


class PointOnAxis(GeometryError):
    pass


class BadFrame(GeometryError):
    pass


class NotDistinct(GeometryError):
    pass


Vector = tuple[int, ...]


def normalize(F: GF, v: Sequence[int]) -> Vector:
    for x in v:
        if x:
            c = F.inv(x)
            return tuple(F.mul(c, y) for y in v)
    raise GeometryError("the zero vector is not a point")


@dataclass(frozen=True, order=True)
class ProjectivePoint:
    coords: Vector

    @classmethod
    def of(cls, F: GF, v: Sequence[int]) -> "ProjectivePoint":
        return cls(normalize(F, v))

    @property
    def dim(self) -> int:
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)


@dataclass(frozen=True)
class Subspace:
    basis: tuple[Vector, ...]
    n: int

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def dimension(self) -> int:
        """Projective dimension; -1 for the empty subspace."""
        return len(self.basis) - 1

    def is_empty(self) -> bool:
        return not self.basis


# -- compact indices of points of PG(n-1, N) ----------------------------------

def point_index(F: GF, v: Sequence[int]) -> int:
    """Index in range((N^n - 1)/(N - 1)) of <v>; points with pivot 0 come first."""
    w = normalize(F, v)
    N, n = F.order, len(w)
    j = next(i for i, x in enumerate(w) if x)
    offset = sum(N ** (n - 1 - i) for i in range(j))
    return offset + sum(x * N ** (i - j - 1) for i, x in enumerate(w) if i > j)


def point_from_index(F: GF, index: int, n: int) -> ProjectivePoint:
    N = F.order
    for j in range(n):
        block = N ** (n - 1 - j)
        if index < block:
            tail = []
            for _ in range(n - 1 - j):
                index, d = divmod(index, N)
                tail.append(d)
            return ProjectivePoint((0,) * j + (1,) + tuple(tail))
        index -= block
    raise GeometryError("point index out of range")


def num_points(N: int, n: int) -> int:
    return (N ** n - 1) // (N - 1)


def iter_points(F: GF, n: int, elements: Sequence[int] | None = None) -> Iterator[ProjectivePoint]:
    """All normalized points of PG(n-1) over ``elements`` (default: the whole field)."""
    elements = tuple(F.elements()) if elements is None else tuple(elements)
    for j in range(n):
        for tail in itertools.product(elements, repeat=n - 1 - j):
            yield ProjectivePoint((0,) * j + (1,) + tail)


# -- linear algebra --------------------------------------------------------------

def rref(F: GF, rows: Iterable[Sequence[int]], n: int | None = None) -> tuple[Vector, ...]:
    M = [list(r) for r in rows]
    if not M:
        return ()
    if n is None:
        n = len(M[0])
    out_rows = 0
    for col in range(n):
        piv = next((r for r in range(out_rows, len(M)) if M[r][col]), None)
        if piv is None:
            continue
        M[out_rows], M[piv] = M[piv], M[out_rows]
        c = F.inv(M[out_rows][col])
        M[out_rows] = [F.mul(c, x) for x in M[out_rows]]
        for r in range(len(M)):
            if r != out_rows and M[r][col]:
                f = M[r][col]
                M[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(M[r], M[out_rows])]
        out_rows += 1
        if out_rows == len(M):
            break
    return tuple(tuple(r) for r in M[:out_rows])


def nullspace(F: GF, rows: Sequence[Sequence[int]], n: int) -> tuple[Vector, ...]:
    """Basis of {x : r . x = 0 for all rows r}."""
    R = rref(F, rows, n)
    pivots = [next(i for i, x in enumerate(r) if x) for r in R]
    free = [c for c in range(n) if c not in pivots]
    out = []
    for fc in free:
        x = [0] * n
        x[fc] = 1
        for r, pc in zip(R, pivots):
            x[pc] = F.neg(r[fc])
        out.append(tuple(x))
    return tuple(out)


def subspace(F: GF, rows: Iterable[Sequence[int]], n: int) -> Subspace:
    rows = list(rows)
    for r in rows:
        if len(r) != n:
            raise AmbientMismatch(f"vector of length {len(r)} in ambient of length {n}")
    return Subspace(rref(F, rows, n), n)


def _rows(obj) -> tuple[int, tuple[Vector, ...]]:
    if isinstance(obj, ProjectivePoint):
        return obj.dim, (obj.coords,)
    if isinstance(obj, Subspace):
        return obj.n, obj.basis
    v = tuple(obj)
    return len(v), (v,)


def span(F: GF, *objs) -> Subspace:
    if not objs:
        raise GeometryError("span of nothing")
    dims = {_rows(o)[0] for o in objs}
    if len(dims) != 1:
        raise AmbientMismatch(f"operands live in ambients {sorted(dims)}")
    n = dims.pop()
    return Subspace(rref(F, [r for o in objs for r in _rows(o)[1]], n), n)


def meet(F: GF, a: Subspace, b: Subspace) -> Subspace:
    """Intersection, via the annihilator of the joined annihilators."""
    if a.n != b.n:
        raise AmbientMismatch(f"ambients {a.n} and {b.n}")
    n = a.n
    dual = nullspace(F, a.basis, n) + nullspace(F, b.basis, n)
    return Subspace(rref(F, nullspace(F, dual, n), n), n)


def contains(F: GF, S: Subspace, v: Sequence[int] | ProjectivePoint) -> bool:
    vec = v.coords if isinstance(v, ProjectivePoint) else tuple(v)
    return len(rref(F, S.basis + (vec,), S.n)) == S.rank


# -- subgeometry and projection ---------------------------------------------------

def in_canonical_subgeometry(F: GF, P: ProjectivePoint | Sequence[int]) -> bool:
    coords = P.coords if isinstance(P, ProjectivePoint) else normalize(F, P)
    return all(F.is_base(x) for x in coords)


def project(F: GF, P: ProjectivePoint, axis: Subspace, target: Subspace) -> ProjectivePoint:
    """The point <P, axis> meet target."""
    if axis.n != P.dim or target.n != P.dim:
        raise AmbientMismatch("point, axis and target must share the ambient space")
    if axis.rank + target.rank != P.dim or not meet(F, axis, target).is_empty():
        raise BadFrame("axis and target must be disjoint and complementary")
    if contains(F, axis, P):
        raise PointOnAxis(f"{P} lies on the axis")
    image = meet(F, span(F, axis, P), target)
    if image.rank != 1:  # pragma: no cover - excluded by the frame checks
        raise BadFrame("projection is not a point")
    return ProjectivePoint.of(F, image.basis[0])


def meets_subgeometry(F: GF, S: Subspace) -> bool:
    """True iff S contains a point with all coordinates in F_q.

    x in F_q^n lies in S iff A x = 0 for an annihilator A of S; expanding each
    entry of A over the F_q-basis turns this into an F_q-linear system.
    """
    n = S.n
    A = nullspace(F, S.basis, n)
    eqs = []
    for row in A:
        expanded = [F.base_coordinates(x) for x in row]
        for b in range(F.h):
            eqs.append(tuple(expanded[c][b] for c in range(n)))
    if not eqs:
        return True
    return len(rref(F, eqs, n)) < n


# -- field reduction ----------------------------------------------------------

def expand_vector(F: GF, v: Sequence[int]) -> Vector:
    """F_q-coordinates of v in F_q^(r h), coordinate blocks in order."""
    out: list[int] = []
    for x in v:
        out.extend(F.base_coordinates(x))
    return tuple(out)


def field_reduce(F: GF, P: ProjectivePoint, basis: Sequence[int] | None = None) -> Subspace:
    """The (h-1)-dimensional subspace of PG(rh-1, q) of all F_q-expansions of lambda*P."""
    basis = F.base_basis if basis is None else tuple(basis)
    rows = [expand_vector(F, [F.mul(w, x) for x in P.coords]) for w in basis]
    n = P.dim * F.h
    S = Subspace(rref(F, rows, n), n)
    if S.rank != F.h:
        raise GeometryError("basis does not span F_{q^h} over F_q")
    return S


def reduced_span(F: GF, vectors: Iterable[Sequence[int]]) -> Subspace:
    """F_q-span of F_{q^h}-vectors, as a subspace of F_q^(r h)."""
    rows = [expand_vector(F, v) for v in vectors]
    n = len(rows[0])
    return Subspace(rref(F, rows, n), n)


# -- cross-ratio -------------------------------------------------------------

def _bracket(F: GF, a: Vector, b: Vector) -> int:
    return F.sub(F.mul(a[0], b[1]), F.mul(a[1], b[0]))


def cross_ratio(F: GF, P1, P2, P3, P4) -> int:
    """[P1 P4][P2 P3] / ([P1 P3][P2 P4]) for four distinct points of PG(1, q^h).

    With this convention <(1,0)>, <(0,1)>, <(1,1)>, <(1,x)> has cross-ratio x.
    Brackets of distinct points never vanish, so the value is a nonzero
    field element and no point at infinity needs special handling.
    """
    pts = [p.coords if isinstance(p, ProjectivePoint) else tuple(p) for p in (P1, P2, P3, P4)]
    if any(len(p) != 2 for p in pts):
        raise AmbientMismatch("cross-ratio needs points of a projective line")
    for a, b in itertools.combinations(pts, 2):
        if _bracket(F, a, b) == 0:
            raise NotDistinct("the four points must be pairwise distinct")
    a, b, c, d = pts
    num = F.mul(_bracket(F, a, d), _bracket(F, b, c))
    den = F.mul(_bracket(F, a, c), _bracket(F, b, d))
    return F.div(num, den)


def cross_ratio_orbit(F: GF, x: int) -> tuple[int, ...]:
    """The six values taken by a cross-ratio x under reordering of the points."""
    one = 1
    omx = F.sub(one, x)
    return (x, F.inv(x), omx, F.inv(omx), F.div(F.sub(x, one), x), F.div(x, F.sub(x, one)))
