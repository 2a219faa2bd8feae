"""Polynomial-evaluation linear sets, their weights, and the closed-form predictions.

For a partition t_1, ..., t_{l+1} of k and an element alpha of degree s over
F_q, the set is

    L = { <(f_1(alpha), ..., f_{l+1}(alpha))> : deg f_i <= t_i - 1 }

in PG(l, q^h). It is the F_q-linear set of the k-dimensional F_q-space U
spanned by the vectors alpha^j e_i, and it is also the projection of the
canonical subgeometry PG(k-1, q) from a suitable axis.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

from . import kernels
from .field import GF
from .poly import count_reduced_closed_form, enumerate_reduced
from .projective import (
    ProjectivePoint,
    Subspace,
    Vector,
    contains,
    field_reduce,
    iter_points,
    meet,
    meets_subgeometry,
    normalize,
    nullspace,
    point_from_index,
    rref,
    reduced_span,
    span,
)


class LinearSetError(ValueError):
    pass


class SpecInvariantViolated(LinearSetError):
    pass


class NonIntegralWeight(LinearSetError):
    pass


class BadShape(LinearSetError):
    pass


class OutOfRange(LinearSetError):
    pass


class DisjointnessFailure(LinearSetError):
    pass


class FrameInvalid(LinearSetError):
    pass


@dataclass(frozen=True)
class ConstructionSpec:
    field: GF
    s: int
    alpha: int
    partition: tuple[int, ...]

    @property
    def l(self) -> int:
        return len(self.partition) - 1

    @property
    def k(self) -> int:
        return sum(self.partition)

    @property
    def q(self) -> int:
        return self.field.q

    def violations(self) -> list[str]:
        F, t = self.field, self.partition
        out = []
        if len(t) < 2:
            out.append("need at least two parts (l >= 1)")
        if any(x < 1 for x in t):
            out.append("every part must be >= 1")
        if self.s < 2 or F.h % self.s:
            out.append(f"s={self.s} must satisfy s >= 2 and s | h={F.h}")
        elif F.degree_over_base(self.alpha) != self.s:
            out.append(f"alpha has degree {F.degree_over_base(self.alpha)} over F_q, not s={self.s}")
        for i in range(len(t)):
            for j in range(i + 1, len(t)):
                if t[i] + t[j] > self.s + 1:
                    out.append(f"t_{i + 1}+t_{j + 1} = {t[i] + t[j]} > s+1 = {self.s + 1}")
        return out

    def validate(self) -> "ConstructionSpec":
        bad = self.violations()
        if bad:
            raise SpecInvariantViolated("; ".join(bad))
        return self

    def source_basis(self) -> tuple[Vector, ...]:
        """The k vectors alpha^(t_i - j) e_i, j = 1..t_i, part by part."""
        F, n = self.field, len(self.partition)
        out = []
        for i, t in enumerate(self.partition):
            for j in range(1, t + 1):
                v = [0] * n
                v[i] = F.pow(self.alpha, t - j)
                out.append(tuple(v))
        return tuple(out)

    def to_json(self) -> dict:
        F = self.field
        return {
            "field": F.to_json(),
            "s": self.s,
            "alpha": list(F.coeffs(self.alpha)),
            "partition": list(self.partition),
            "l": self.l,
            "k": self.k,
        }


def make_spec(F: GF, s: int, partition: Sequence[int], alpha: int | None = None,
              validate: bool = True) -> ConstructionSpec:
    if alpha is None:
        alpha = F.select_alpha(s)
    spec = ConstructionSpec(F, s, alpha, tuple(int(t) for t in partition))
    return spec.validate() if validate else spec


@dataclass(frozen=True, eq=False)
class LinearSetReport:
    field: GF
    points: dict[ProjectivePoint, int]
    spectrum: tuple[int, ...]
    source_basis: tuple[Vector, ...]
    spec: ConstructionSpec | None = dc_field(default=None)

    @property
    def rank(self) -> int:
        return len(self.source_basis)

    @property
    def size(self) -> int:
        return len(self.points)

    @property
    def max_weight(self) -> int:
        return max(self.points.values())

    def weight(self, P: ProjectivePoint) -> int:
        return self.points[P]

    def identities_hold(self) -> bool:
        q, k = self.field.q, self.rank
        theta = lambda i: (q ** i - 1) // (q - 1)
        return (sum(self.spectrum) == self.size
                and sum(x * theta(i + 1) for i, x in enumerate(self.spectrum)) == theta(k))

    def predictions(self) -> dict:
        """Closed-form size and spectrum next to the observed ones."""
        if self.spec is None:
            raise LinearSetError("report has no construction spec")
        q, t = self.field.q, self.spec.partition
        size = count_reduced_closed_form(t, q)
        spectrum = predicted_spectrum(t, q)
        return {
            "size": {"predicted": size, "observed": self.size, "match": size == self.size},
            "spectrum": {"predicted": list(spectrum), "observed": list(self.spectrum),
                         "match": tuple(spectrum) == tuple(self.spectrum)},
        }

    def same_points(self, other: "LinearSetReport") -> bool:
        return self.points == other.points


def _weight_from_vectors(q: int, count: int) -> int:
    w, total = 0, 1
    while total < count + 1:
        total *= q
        w += 1
    if total != count + 1:
        raise NonIntegralWeight(f"{count} vectors on one point is not q^w - 1")
    return w


def _spectrum(weights, k: int) -> tuple[int, ...]:
    out = [0] * k
    for w in weights:
        out[w - 1] += 1
    return tuple(out)


def linear_set_from_vectors(F: GF, vectors: Sequence[Sequence[int]],
                            spec: ConstructionSpec | None = None) -> LinearSetReport:
    """Group the q^k F_q-combinations of ``vectors`` by point and read off weights."""
    basis = np.array(vectors, dtype=np.int64)
    k, n = basis.shape
    N = F.order
    if (N ** n - 1) // (N - 1) >= 2 ** 62:
        raise LinearSetError("ambient space too large for 64-bit point indices")
    keys = kernels.combination_keys(basis, np.array(F.base, dtype=np.int64), F.tables)
    if (keys < 0).any():
        raise LinearSetError("the vectors are linearly dependent over F_q")
    idx, counts = np.unique(keys, return_counts=True)
    points = {}
    for i, c in zip(idx.tolist(), counts.tolist()):
        points[point_from_index(F, i, n)] = _weight_from_vectors(F.q, c)
    return LinearSetReport(F, points, _spectrum(points.values(), k),
                           tuple(tuple(int(x) for x in v) for v in vectors), spec)


def build_evaluation_set(spec: ConstructionSpec) -> LinearSetReport:
    spec.validate()
    return linear_set_from_vectors(spec.field, spec.source_basis(), spec)


def points_from_reduced_forms(spec: ConstructionSpec) -> list[ProjectivePoint]:
    """Evaluate every reduced tuple at alpha, in enumeration order."""
    F = spec.field
    return [ProjectivePoint.of(F, t.evaluate(F, spec.alpha))
            for t in enumerate_reduced(spec.partition, F)]


# -- closed-form predictions ---------------------------------------------------

def predicted_spectrum_line(partition: Sequence[int], q: int) -> tuple[int, ...]:
    """Weight spectrum of the l = 1 construction, indexed by weight - 1."""
    if len(partition) != 2:
        raise BadShape("the line formula needs exactly two parts")
    t1, t2 = sorted(partition)
    k = t1 + t2
    x = [0] * k
    for i in range(1, t1):
        x[i - 1] = q ** (k - 2 * i + 1) - q ** (k - 2 * i - 1)
    x[t1 - 1] += q ** (t2 - t1 + 1)
    x[t2 - 1] += 1
    return tuple(x)


def _qpow(q: int, e: int) -> int:
    if e < 0:
        raise OutOfRange(f"negative exponent {e} in stratum formula")
    return q ** e


def predicted_stratum_counts(partition: Sequence[int], q: int, w: int) -> int:
    """Points of weight w with f_1 != 0 (f_1 the entry with the smallest bound)."""
    t = sorted(partition)
    t1, k, l = t[0], sum(t), len(t) - 1
    if not 1 <= w <= t1:
        raise OutOfRange(f"weight {w} outside 1..{t1}")
    if w == t1:
        return _qpow(q, k - (t1 - 1) * l - t1)
    total = sum(_qpow(q, k - (w - 1) * l - i) - _qpow(q, k - w * l - i)
                for i in range(w, t1 + 1))
    if w <= t1 - 2:
        total -= sum(_qpow(q, k - w * l - i) - _qpow(q, k - (w + 1) * l - i)
                     for i in range(w + 1, t1))
    return total


def predicted_spectrum(partition: Sequence[int], q: int) -> tuple[int, ...]:
    """Full spectrum: the f_1 != 0 stratum plus the recursion on the remaining parts."""
    t = sorted(partition)
    k = sum(t)
    x = [0] * k
    while t:
        for w in range(1, t[0] + 1):
            x[w - 1] += predicted_stratum_counts(t, q, w)
        t = t[1:]
    return tuple(x)


# -- projection model ----------------------------------------------------------

@dataclass(frozen=True)
class ProjectionFrame:
    spec: ConstructionSpec
    pis: tuple[Subspace, ...]
    axis: Subspace
    target: Subspace

    @property
    def k(self) -> int:
        return self.spec.k


def _unit(n: int, i: int, value: int = 1) -> list[int]:
    v = [0] * n
    v[i] = value
    return v


def build_projection_frame(spec: ConstructionSpec, exhaustive: bool | None = None) -> ProjectionFrame:
    """Axis spanned by the e_{i,j} - alpha e_{i,j+1}, target spanned by the e_{i,t_i}.

    Disjointness of the axis from the subgeometry is checked by linear algebra
    over F_q and, when ``exhaustive`` (default: at most 2^12 subgeometry
    points), also point by point.
    """
    F, t, k = spec.field, spec.partition, spec.k
    neg_alpha = F.neg(spec.alpha)
    pis, ends = [], []
    start = 0
    for ti in t:
        rows = []
        for j in range(ti - 1):
            v = _unit(k, start + j)
            v[start + j + 1] = neg_alpha
            rows.append(v)
        pis.append(Subspace(rref(F, rows, k), k))
        ends.append(_unit(k, start + ti - 1))
        start += ti
    axis = span(F, *pis) if any(not p.is_empty() for p in pis) else Subspace((), k)
    target = Subspace(rref(F, ends, k), k)
    if axis.rank != k - spec.l - 1:
        raise DisjointnessFailure(f"axis has rank {axis.rank}, expected {k - spec.l - 1}")
    if not meet(F, axis, target).is_empty():
        raise DisjointnessFailure("axis meets the target space")
    if meets_subgeometry(F, axis):
        raise DisjointnessFailure("axis meets the canonical subgeometry")
    n_sigma = (spec.q ** k - 1) // (spec.q - 1)
    if exhaustive is None:
        exhaustive = n_sigma <= 4096
    if exhaustive and not axis.is_empty():
        ann = nullspace(F, axis.basis, k)
        for P in iter_points(F, k, F.base):
            if all(_dot(F, a, P.coords) == 0 for a in ann):
                raise DisjointnessFailure(f"axis contains the subgeometry point {P.coords}")
    return ProjectionFrame(spec, tuple(pis), axis, target)


def _dot(F: GF, a: Sequence[int], b: Sequence[int]) -> int:
    acc = 0
    for x, y in zip(a, b):
        if x and y:
            acc = F.add(acc, F.mul(x, y))
    return acc


def _inverse(F: GF, M: list[list[int]]) -> list[list[int]]:
    n = len(M)
    aug = [list(r) + _unit(n, i) for i, r in enumerate(M)]
    R = rref(F, aug, 2 * n)
    if len(R) != n or any(R[i][i] != 1 for i in range(n)):
        raise FrameInvalid("axis and target do not span the ambient space")
    return [list(r[n:]) for r in R]


def project_subgeometry(frame: ProjectionFrame) -> LinearSetReport:
    """Project every point of PG(k-1, q) from the axis onto the target.

    Points of the target are written in the coordinates of its basis
    e_{1,t_1}, ..., e_{l+1,t_{l+1}}. A point receiving (q^w - 1)/(q - 1)
    subgeometry points gets weight w.
    """
    spec = frame.spec
    F, k, q = spec.field, spec.k, spec.q
    if frame.axis.rank + frame.target.rank != k:
        raise FrameInvalid("axis and target are not complementary")
    # x = c M with M = [axis; target]; the target part of c is x Minv[:, r:]
    M = [list(r) for r in frame.axis.basis + frame.target.basis]
    Minv = _inverse(F, M)
    r = frame.axis.rank
    cols = [[Minv[i][j] for i in range(k)] for j in range(r, k)]
    hits: dict[ProjectivePoint, int] = {}
    for P in iter_points(F, k, F.base):
        img = [_dot(F, P.coords, c) for c in cols]
        if not any(img):
            raise FrameInvalid(f"subgeometry point {P.coords} lies on the axis")
        Q = ProjectivePoint.of(F, img)
        hits[Q] = hits.get(Q, 0) + 1
    points = {}
    for Q in sorted(hits):
        points[Q] = _weight_from_vectors(q, hits[Q] * (q - 1))
    images = tuple(tuple(_dot(F, e, c) for c in cols) for e in (_unit(k, i) for i in range(k)))
    return LinearSetReport(F, points, _spectrum(points.values(), k), images, spec)


# -- weight spectra of rank-k sets of size q^(k-1)+1 on a line ----------------

def feasible_spectra(k: int, size: int, q: int, max_weight: int | None = None) -> list[tuple[int, ...]]:
    """Non-negative (x_1..x_k) with sum x_i = size and sum x_i theta_i = theta_k.

    theta_i = (q^i - 1)/(q - 1). Two distinct points of a rank-k set have
    weights summing to at most k, so that is enforced too. Solutions are
    listed with the heaviest weights decided first, larger counts first.
    """
    if k < 2:
        raise OutOfRange("k must be >= 2")
    max_weight = k if max_weight is None else min(max_weight, k)
    theta = [0] + [(q ** i - 1) // (q - 1) for i in range(1, k + 1)]
    out: list[tuple[int, ...]] = []
    x = [0] * (k + 1)

    def rec(w: int, pts: int, mass: int, heaviest: int) -> None:
        if w == 1:
            if mass == pts and (pts == 0 or heaviest < k):
                out.append((pts,) + tuple(x[2:]))
            return
        for c in range(min(pts, mass // theta[w]), -1, -1):
            if c and (heaviest + w > k if heaviest else c >= 2 and 2 * w > k):
                continue
            x[w] = c
            rec(w - 1, pts - c, mass - c * theta[w], heaviest or (w if c else 0))
        x[w] = 0

    rec(max(max_weight, 1), size, theta[k], 0)
    return out


def detect_club(report: LinearSetReport) -> bool:
    """One point of weight k-1, q^(k-1) of weight 1. Rank 2 (a subline) is not a club."""
    k, q = report.rank, report.field.q
    if k < 3:
        return False
    expected = [0] * k
    expected[0] = q ** (k - 1)
    expected[k - 2] += 1
    return tuple(report.spectrum) == tuple(expected)


def is_degenerate(report: LinearSetReport) -> bool:
    return report.rank < 3


# -- independent weight oracle ---------------------------------------------------

def field_reduction_weight(F: GF, report: LinearSetReport, P: ProjectivePoint) -> int:
    """dim(phi(P) meet pi_U) as F_q-vector spaces, phi the field reduction map."""
    piU = reduced_span(F, report.source_basis)
    return meet(F, field_reduce(F, P), piU).rank


def points_of(report: LinearSetReport) -> list[ProjectivePoint]:
    return list(report.points)


__all__ = [
    "ConstructionSpec", "LinearSetReport", "ProjectionFrame", "make_spec",
    "build_evaluation_set", "linear_set_from_vectors", "points_from_reduced_forms",
    "predicted_spectrum_line", "predicted_stratum_counts", "predicted_spectrum",
    "build_projection_frame", "project_subgeometry", "feasible_spectra",
    "detect_club", "is_degenerate", "field_reduction_weight", "normalize", "contains",
]
