"""Blocking-set certification in PG(2, q^h).

Lines are indexed like points (a line is the dual point of its coefficient
vector). Incidence data is accumulated point by point: each point of the set
contributes to the N + 1 lines through it, so a scan costs |B| (N + 1)
rather than the number of lines times |B|.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

import numpy as np

from . import kernels
from .field import GF
from .linear_sets import LinearSetReport
from .projective import ProjectivePoint, expand_vector, point_from_index, point_index, rref


class BlockingError(ValueError):
    pass


class NotAPlane(BlockingError):
    pass


class NotBlocking(BlockingError):
    pass


class MissingSource(BlockingError):
    pass


def _as_points(points) -> tuple[ProjectivePoint, ...]:
    if isinstance(points, LinearSetReport):
        points = points.points
    pts = tuple(points)
    if any(P.dim != 3 for P in pts):
        raise NotAPlane("blocking sets are checked in PG(2, q^h) only")
    return pts


@dataclass(frozen=True, eq=False)
class LineIncidenceProfile:
    field: GF
    points: tuple[ProjectivePoint, ...]
    incidence: np.ndarray  # (|B|, N + 1) line indices through each point
    counts: np.ndarray  # |line meet B| for every line index

    @property
    def num_lines(self) -> int:
        N = self.field.order
        return N * N + N + 1

    @cached_property
    def histogram(self) -> dict[int, int]:
        sizes, freq = np.unique(self.counts, return_counts=True)
        return {int(s): int(f) for s, f in zip(sizes, freq)}

    @cached_property
    def tangent_counts(self) -> np.ndarray:
        return (self.counts[self.incidence] == 1).sum(axis=1)

    def line(self, index: int) -> ProjectivePoint:
        return point_from_index(self.field, index, 3)

    def line_mass(self, weights: Mapping[ProjectivePoint, int]) -> np.ndarray:
        """sum(q^w - 1) over the points of each line: nonzero vectors of U on it."""
        q = self.field.q
        per_point = np.array([q ** weights[P] - 1 for P in self.points], dtype=np.int64)
        mass = np.zeros(self.num_lines, dtype=np.int64)
        np.add.at(mass, self.incidence, per_point[:, None])
        return mass


def incidence_profile(F: GF, points) -> LineIncidenceProfile:
    pts = _as_points(points)
    if len(set(pts)) != len(pts):
        raise BlockingError("repeated points")
    N = F.order
    if pts:
        arr = np.array([P.coords for P in pts], dtype=np.int64)
        inc = kernels.lines_through(arr, F.tables)
    else:
        inc = np.zeros((0, N + 1), dtype=np.int64)
    counts = np.bincount(inc.ravel(), minlength=N * N + N + 1).astype(np.int64)
    return LineIncidenceProfile(F, pts, inc, counts)


@dataclass(frozen=True)
class BlockingResult:
    size: int
    blocking: bool
    small: bool
    missed_lines: int
    histogram: dict[int, int]
    example_missed_line: ProjectivePoint | None


def verify_blocking(F: GF, points, profile: LineIncidenceProfile | None = None) -> BlockingResult:
    """Does every line meet the set; is |B| < 3(q^h + 1)/2."""
    prof = profile or incidence_profile(F, points)
    missed = np.flatnonzero(prof.counts == 0)
    size = len(prof.points)
    return BlockingResult(
        size=size,
        blocking=missed.size == 0,
        small=2 * size < 3 * (F.order + 1),
        missed_lines=int(missed.size),
        histogram=prof.histogram,
        example_missed_line=prof.line(int(missed[0])) if missed.size else None,
    )


@dataclass(frozen=True)
class MinimalResult:
    minimal: bool
    tangent_counts: dict[ProjectivePoint, int]


def verify_minimal(F: GF, points, profile: LineIncidenceProfile | None = None) -> MinimalResult:
    """Every point of a blocking set lies on a tangent line."""
    prof = profile or incidence_profile(F, points)
    if (prof.counts == 0).any():
        raise NotBlocking("the set misses a line")
    tc = prof.tangent_counts
    return MinimalResult(bool((tc > 0).all()),
                         {P: int(c) for P, c in zip(prof.points, tc)})


def _log_q(q: int, m: int) -> int | None:
    r, v = 0, 1
    while v < m:
        v *= q
        r += 1
    return r if v == m else None


def redei_lines(F: GF, report: LinearSetReport,
                profile: LineIncidenceProfile | None = None) -> list[tuple[ProjectivePoint, int]]:
    """Lines meeting the set in a linear set of rank k - 1."""
    if not report.source_basis:
        raise MissingSource("report carries no source basis")
    prof = profile or incidence_profile(F, report)
    mass = prof.line_mass(report.points)
    k, q = report.rank, F.q
    target = q ** (k - 1) - 1
    bad = [i for i in np.unique(prof.incidence).tolist() if _log_q(q, int(mass[i]) + 1) is None]
    if bad:
        raise BlockingError(f"line {prof.line(bad[0]).coords} carries a non-power-of-q vector count")
    return [(prof.line(int(i)), k - 1) for i in np.flatnonzero(mass == target)]


def line_rank(F: GF, report: LinearSetReport, line: ProjectivePoint) -> int:
    """dim_{F_q}(U meet line), from the F_q-rank of u -> <line, u>."""
    images = []
    for b in report.source_basis:
        dot = 0
        for x, y in zip(line.coords, b):
            dot = F.add(dot, F.mul(x, y))
        images.append(expand_vector(F, (dot,)))
    return report.rank - len(rref(F, images, F.h))


@dataclass(frozen=True)
class SecantSpectrum:
    histogram: dict[int, int]
    has_q_plus_1_secant: bool
    incidences: int


def secant_spectrum(F: GF, points, profile: LineIncidenceProfile | None = None) -> SecantSpectrum:
    prof = profile or incidence_profile(F, points)
    hist = prof.histogram
    return SecantSpectrum(hist, hist.get(F.q + 1, 0) > 0, int(prof.counts.sum()))


def line_through(F: GF, P: ProjectivePoint, Q: ProjectivePoint) -> ProjectivePoint:
    """Dual coordinates of the line PQ (the cross product)."""
    a, b = P.coords, Q.coords
    c = (
        F.sub(F.mul(a[1], b[2]), F.mul(a[2], b[1])),
        F.sub(F.mul(a[2], b[0]), F.mul(a[0], b[2])),
        F.sub(F.mul(a[0], b[1]), F.mul(a[1], b[0])),
    )
    if not any(c):
        raise BlockingError("points coincide")
    return ProjectivePoint.of(F, c)


def points_on_line(F: GF, points: Iterable[ProjectivePoint], line: ProjectivePoint) -> list[ProjectivePoint]:
    out = []
    for P in points:
        acc = 0
        for x, y in zip(line.coords, P.coords):
            acc = F.add(acc, F.mul(x, y))
        if acc == 0:
            out.append(P)
    return out


def all_lines(F: GF) -> list[ProjectivePoint]:
    N = F.order
    return [point_from_index(F, i, 3) for i in range(N * N + N + 1)]


def certify(F: GF, report: LinearSetReport) -> dict:
    """Blocking-set certificate for a linear set in PG(2, q^h)."""
    prof = incidence_profile(F, report)
    b = verify_blocking(F, report, prof)
    minimal = verify_minimal(F, report, prof).minimal if b.blocking else False
    redei = redei_lines(F, report, prof)
    sec = secant_spectrum(F, report, prof)
    return {
        "size": b.size,
        "blocking": b.blocking,
        "minimal": minimal,
        "small": b.small,
        "missed_lines": b.missed_lines,
        "redei_lines": [{"line": [list(F.coeffs(x)) for x in L.coords], "rank": r}
                        for L, r in redei],
        "secant_histogram": {str(s): n for s, n in sorted(sec.histogram.items())},
        "has_q_plus_1_secant": sec.has_q_plus_1_secant,
    }


__all__ = [
    "LineIncidenceProfile", "incidence_profile", "verify_blocking", "verify_minimal",
    "redei_lines", "line_rank", "secant_spectrum", "line_through", "points_on_line",
    "all_lines", "certify", "point_index",
]
