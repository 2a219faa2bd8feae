"""JSON and CSV encodings.

Field elements are written as coefficient lists over F_p, lowest degree
first. Polynomials over F_q store each coefficient as its position in
``F.base`` (which is the integer itself when q is prime). Big counts are
decimal strings. Every top-level document carries ``"schema": 1``.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Any, Sequence

from .field import GF
from .linear_sets import LinearSetReport, _spectrum
from .poly import Poly, PolyTuple
from .projective import ProjectivePoint, Subspace, rref

SCHEMA = 1


class SerializationError(ValueError):
    pass


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2) + "\n"


# -- elements, points, subspaces ----------------------------------------------

def element_to_json(F: GF, x: int) -> list[int]:
    return list(F.coeffs(x))


def element_from_json(F: GF, data: Sequence[int]) -> int:
    if len(data) != F.n or any(not 0 <= c < F.p for c in data):
        raise SerializationError(f"not an element of {F!r}: {data}")
    return F.from_coeffs(data)


def vector_to_json(F: GF, v: Sequence[int]) -> list[list[int]]:
    return [element_to_json(F, x) for x in v]


def vector_from_json(F: GF, data) -> tuple[int, ...]:
    return tuple(element_from_json(F, x) for x in data)


def point_to_json(F: GF, P: ProjectivePoint) -> list[list[int]]:
    return vector_to_json(F, P.coords)


def point_from_json(F: GF, data) -> ProjectivePoint:
    return ProjectivePoint.of(F, vector_from_json(F, data))


def subspace_to_json(F: GF, S: Subspace) -> dict:
    return {"n": S.n, "basis": [vector_to_json(F, r) for r in S.basis]}


def subspace_from_json(F: GF, data: dict) -> Subspace:
    n = int(data["n"])
    rows = [vector_from_json(F, r) for r in data["basis"]]
    if any(len(r) != n for r in rows):
        raise SerializationError("basis row length does not match n")
    return Subspace(rref(F, rows, n), n)


# -- polynomials and counts -----------------------------------------------------

def poly_to_json(F: GF, f: Poly) -> list[int]:
    return [F.base_index[c] for c in f.coeffs]


def poly_from_json(F: GF, data: Sequence[int]) -> Poly:
    try:
        return Poly(tuple(F.base[i] for i in data))
    except IndexError:
        raise SerializationError(f"coefficient index out of range in {data}") from None


def tuple_to_json(F: GF, t: PolyTuple) -> dict:
    return {"bounds": list(t.bounds), "entries": [poly_to_json(F, f) for f in t.entries]}


def tuple_from_json(F: GF, data: dict) -> PolyTuple:
    return PolyTuple(tuple(poly_from_json(F, f) for f in data["entries"]),
                     tuple(int(b) for b in data["bounds"]))


def count_to_json(n: int) -> str:
    return str(int(n))


def count_from_json(s: str) -> int:
    if not isinstance(s, str) or not s.isdigit():
        raise SerializationError(f"count must be a decimal string, got {s!r}")
    return int(s)


# -- reports --------------------------------------------------------------------

def report_to_json(report: LinearSetReport, config: dict | None = None,
                   include_points: bool = False, checks: dict | None = None) -> dict:
    F = report.field
    doc: dict[str, Any] = {"schema": SCHEMA}
    if config is not None:
        doc["config"] = config
    doc["field"] = F.to_json()
    if report.spec is not None:
        doc["s"] = report.spec.s
        doc["alpha"] = element_to_json(F, report.spec.alpha)
        doc["partition"] = list(report.spec.partition)
    doc["rank"] = report.rank
    doc["size"] = report.size
    doc["spectrum"] = list(report.spectrum)
    doc["source_basis"] = [vector_to_json(F, v) for v in report.source_basis]
    if checks is not None:
        doc["checks"] = checks
    if include_points:
        doc["points"] = [{"point": point_to_json(F, P), "weight": w}
                         for P, w in report.points.items()]
    return doc


def report_from_json(data: dict | str) -> LinearSetReport:
    """Rebuild a report; needs the point list (``include_points=True``)."""
    if isinstance(data, str):
        data = json.loads(data)
    if data.get("schema") != SCHEMA:
        raise SerializationError(f"unsupported schema {data.get('schema')!r}")
    if "points" not in data:
        raise SerializationError("document has no point list")
    F = GF.from_json(data["field"])
    points = {point_from_json(F, e["point"]): int(e["weight"]) for e in data["points"]}
    basis = tuple(vector_from_json(F, v) for v in data["source_basis"])
    spectrum = _spectrum(points.values(), len(basis))
    if list(spectrum) != list(data["spectrum"]):
        raise SerializationError("spectrum does not match the point list")
    return LinearSetReport(F, points, spectrum, basis)


def _element_cell(F: GF, x: int) -> str:
    return " ".join(str(c) for c in F.coeffs(x))


def report_to_csv(report: LinearSetReport) -> str:
    """One row per point: coordinates (coefficients space separated) and weight."""
    F = report.field
    n = next(iter(report.points)).dim if report.points else 0
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([f"x{i}" for i in range(n)] + ["weight"])
    for P, wt in report.points.items():
        w.writerow([_element_cell(F, x) for x in P.coords] + [wt])
    return buf.getvalue()


def points_from_csv(F: GF, text: str) -> dict[ProjectivePoint, int]:
    rows = list(csv.reader(io.StringIO(text)))
    out = {}
    for row in rows[1:]:
        coords = [F.from_coeffs(int(c) for c in cell.split()) for cell in row[:-1]]
        out[ProjectivePoint.of(F, coords)] = int(row[-1])
    return out


def rows_to_csv(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()
