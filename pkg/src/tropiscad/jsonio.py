"""JSON serialization of complexes, polynomials and box polytopes.

Rationals travel as strings ("-1/4") so files stay exact; plain JSON
integers are accepted on input.  Points carry the homogeneous leading
coordinate exactly like the library's in-memory convention, which makes
complex files copy-paste compatible with vertex/edge listings.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .complexes import PolyhedralComplex, from_points_and_cells
from .errors import SchemaError
from .geometry import Polyhedron
from .polynomial import TropicalPolynomial, tropical_polynomial


def _as_fraction(value: Any, path: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise SchemaError(f"expected a rational as string or integer, got {value!r}", path)
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"not a rational number: {value!r} ({exc})", path) from None


def _as_vector(value: Any, path: str) -> list[Fraction]:
    if not isinstance(value, list) or not value:
        raise SchemaError("expected a non-empty array of rationals", path)
    return [_as_fraction(x, f"{path}[{i}]") for i, x in enumerate(value)]


def _require(obj: dict, key: str, path: str) -> Any:
    if key not in obj:
        raise SchemaError(f"missing required key {key!r}", path or ".")
    return obj[key]


def complex_to_obj(complex_: PolyhedralComplex) -> dict:
    obj: dict[str, Any] = {
        "points": [[str(c) for c in p.coords] for p in complex_.points],
        "maximal_cells": [list(cell) for cell in complex_.maximal_cells],
    }
    if complex_.lineality:
        obj["lineality"] = [["0"] + [str(c) for c in row] for row in complex_.lineality]
    if complex_.weights is not None:
        obj["weights"] = list(complex_.weights)
    if not complex_.points:
        obj["ambient_dim"] = complex_.ambient_dim
    return obj


def complex_from_obj(obj: Any, path: str = "") -> PolyhedralComplex:
    if not isinstance(obj, dict):
        raise SchemaError("expected a JSON object", path or ".")
    raw_points = _require(obj, "points", path)
    if not isinstance(raw_points, list):
        raise SchemaError("expected an array of points", f"{path}points")
    points = [_as_vector(p, f"{path}points[{i}]") for i, p in enumerate(raw_points)]
    widths = {len(p) for p in points}
    if len(widths) > 1:
        raise SchemaError("points have inconsistent lengths", f"{path}points")

    raw_cells = _require(obj, "maximal_cells", path)
    if not isinstance(raw_cells, list):
        raise SchemaError("expected an array of index lists", f"{path}maximal_cells")
    cells = []
    for ci, cell in enumerate(raw_cells):
        if not isinstance(cell, list) or not cell:
            raise SchemaError("expected a non-empty array of point indices",
                              f"{path}maximal_cells[{ci}]")
        for ji, j in enumerate(cell):
            if isinstance(j, bool) or not isinstance(j, int):
                raise SchemaError(f"expected an integer index, got {j!r}",
                                  f"{path}maximal_cells[{ci}][{ji}]")
        cells.append(cell)

    lineality = []
    if "lineality" in obj:
        raw_lin = obj["lineality"]
        if not isinstance(raw_lin, list):
            raise SchemaError("expected an array of directions", f"{path}lineality")
        ambient = (len(points[0]) - 1) if points else None
        for li, row in enumerate(raw_lin):
            vec = _as_vector(row, f"{path}lineality[{li}]")
            # accept directions with or without the leading 0
            if ambient is not None and len(vec) == ambient + 1:
                if vec[0] != 0:
                    raise SchemaError("lineality rows must have leading coordinate 0",
                                      f"{path}lineality[{li}][0]")
                vec = vec[1:]
            lineality.append(vec)

    weights = None
    if "weights" in obj:
        raw_w = obj["weights"]
        if not isinstance(raw_w, list):
            raise SchemaError("expected an array of positive integers", f"{path}weights")
        weights = []
        for wi, w in enumerate(raw_w):
            if isinstance(w, bool) or not isinstance(w, int) or w < 1:
                raise SchemaError(f"expected a positive integer weight, got {w!r}",
                                  f"{path}weights[{wi}]")
            weights.append(w)
    try:
        return from_points_and_cells(points, cells, lineality, weights)
    except ValueError as exc:
        raise SchemaError(str(exc), path or ".") from exc


def polynomial_to_obj(poly: TropicalPolynomial) -> dict:
    return {
        "convention": poly.convention,
        "variables": list(poly.variables),
        "monomials": [list(row) for row in poly.exponents],
        "coefficients": [str(c) for c in poly.coefficients],
    }


def polynomial_from_obj(obj: Any, path: str = "") -> TropicalPolynomial:
    if not isinstance(obj, dict):
        raise SchemaError("expected a JSON object", path or ".")
    convention = _require(obj, "convention", path)
    if convention not in ("min", "max"):
        raise SchemaError(f"convention must be 'min' or 'max', got {convention!r}",
                          f"{path}convention")
    variables = _require(obj, "variables", path)
    if not isinstance(variables, list) or not all(isinstance(v, str) for v in variables):
        raise SchemaError("expected an array of variable names", f"{path}variables")
    raw_rows = _require(obj, "monomials", path)
    if not isinstance(raw_rows, list):
        raise SchemaError("expected an array of exponent rows", f"{path}monomials")
    rows = []
    for ri, row in enumerate(raw_rows):
        if not isinstance(row, list) or len(row) != len(variables):
            raise SchemaError(f"expected {len(variables)} exponents",
                              f"{path}monomials[{ri}]")
        for ei, e in enumerate(row):
            if isinstance(e, bool) or not isinstance(e, int) or e < 0:
                raise SchemaError(f"expected a nonnegative integer exponent, got {e!r}",
                                  f"{path}monomials[{ri}][{ei}]")
        rows.append(row)
    raw_coeffs = _require(obj, "coefficients", path)
    if not isinstance(raw_coeffs, list) or len(raw_coeffs) != len(rows):
        raise SchemaError("coefficients must match the monomial count",
                          f"{path}coefficients")
    coeffs = [_as_fraction(c, f"{path}coefficients[{i}]") for i, c in enumerate(raw_coeffs)]
    try:
        return tropical_polynomial(convention, variables, rows, coeffs)
    except ValueError as exc:
        raise SchemaError(str(exc), path or ".") from exc


def box_polytope_from_obj(obj: Any) -> Polyhedron:
    """A bounded polytope from either generators or constraints.

    ``{"points": [[...], ...]}`` takes homogeneous points (leading 1);
    ``{"inequalities": [[b, a1, ...], ...], "equations": [...]}`` takes
    constraint rows meaning b + a.x >= 0 (resp. = 0).
    """
    if not isinstance(obj, dict):
        raise SchemaError("expected a JSON object", ".")
    if "points" in obj:
        raw = obj["points"]
        if not isinstance(raw, list) or not raw:
            raise SchemaError("expected a non-empty array of points", "points")
        pts = [_as_vector(p, f"points[{i}]") for i, p in enumerate(raw)]
        verts = []
        for i, p in enumerate(pts):
            if p[0] != 1:
                raise SchemaError("box points must be vertices (leading 1)",
                                  f"points[{i}][0]")
            verts.append(p[1:])
        return Polyhedron.from_generators(verts)
    if "inequalities" in obj:
        ineqs = [_as_vector(r, f"inequalities[{i}]")
                 for i, r in enumerate(obj["inequalities"])]
        eqs = [_as_vector(r, f"equations[{i}]")
               for i, r in enumerate(obj.get("equations", []))]
        return Polyhedron.from_hrep(ineqs, eqs)
    raise SchemaError("expected either 'points' or 'inequalities'", ".")


def load_json(path: str) -> Any:
    with open(path, "r", encoding="utf-8") as handle:
        try:
            return json.load(handle)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc}", path) from None


def dump_json(obj: Any, path: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(obj, handle, indent=2, sort_keys=True)
        handle.write("\n")
