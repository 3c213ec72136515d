"""Bounding boxes, clipping to bounded complexes, and curve frames.

The automatic box is axis-aligned around the *vertices* of a complex
(rays are deliberately ignored, so a small margin may clip ray geometry
close to a vertex).  Clipping intersects every maximal cell with the box
and keeps the nonempty pieces; cells that touch the box only in a lower-
dimensional face survive as lower-dimensional cells unless another cell
absorbs them.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .complexes import PolyhedralComplex, from_cell_polyhedra, skeleton
from .errors import InputError
from .geometry import Polyhedron, intersect_polyhedra
from .linalg import frac_vec


@dataclass(frozen=True)
class BoundingBox:
    """A bounded full-dimensional polytope used to truncate complexes."""
    polytope: Polyhedron
    is_cuboid: bool
    margins: tuple[tuple[Fraction, Fraction], ...] | None = None

    def __post_init__(self):
        if self.polytope.is_empty:
            raise InputError("bounding box polytope is empty")
        if not self.polytope.is_bounded:
            raise InputError("bounding box polytope must be bounded")
        if self.polytope.dim != self.polytope.ambient_dim:
            raise InputError("bounding box polytope must be full-dimensional")

    @property
    def ambient_dim(self) -> int:
        return self.polytope.ambient_dim

    def axis_ranges(self) -> list[tuple[Fraction, Fraction]]:
        """Per-axis (min, max) over the polytope's vertices."""
        n = self.ambient_dim
        return [(min(v[i] for v in self.polytope.vertices),
                 max(v[i] for v in self.polytope.vertices)) for i in range(n)]

    @classmethod
    def from_polytope(cls, polytope: Polyhedron) -> "BoundingBox":
        ranges = [(min(v[i] for v in polytope.vertices),
                   max(v[i] for v in polytope.vertices))
                  for i in range(polytope.ambient_dim)]
        cuboid = len(polytope.vertices) == 2 ** polytope.ambient_dim and all(
            all(v[i] in (lo, hi) for i, (lo, hi) in enumerate(ranges))
            for v in polytope.vertices)
        return cls(polytope, cuboid)


def generate_bounding_box(complex_: PolyhedralComplex,
                          margins: Sequence | Fraction | int | str = 1) -> BoundingBox:
    """Axis-aligned cuboid around all vertices of the complex plus margins.

    `margins` is a single positive rational (applied to every axis) or a
    per-axis sequence; rays are ignored when sizing the box.
    """
    verts = complex_.vertex_positions()
    if not verts:
        raise InputError("complex has no vertices to bound")
    n = complex_.ambient_dim
    if isinstance(margins, (list, tuple)):
        margin_list = [Fraction(m) for m in margins]
        if len(margin_list) != n:
            raise InputError(f"{len(margin_list)} margins given for {n} axes")
    else:
        margin_list = [Fraction(margins)] * n
    for m in margin_list:
        if m <= 0:
            raise InputError(f"margins must be positive, got {m}")
    inequalities = []
    for i in range(n):
        lo = min(v[i] for v in verts) - margin_list[i]
        hi = max(v[i] for v in verts) + margin_list[i]
        row_lo = [-lo] + [0] * n
        row_lo[1 + i] = 1          # x_i >= lo
        row_hi = [hi] + [0] * n
        row_hi[1 + i] = -1         # x_i <= hi
        inequalities += [row_lo, row_hi]
    poly = Polyhedron.from_hrep(inequalities, ambient_dim=n)
    return BoundingBox(poly, True, tuple((m, m) for m in margin_list))


def intersect_with_bounding_box(complex_: PolyhedralComplex,
                                box: BoundingBox) -> PolyhedralComplex:
    """Clip every maximal cell to the box; the result is bounded.

    Weights are inherited by the surviving pieces; cells clipped away
    entirely are dropped.
    """
    if complex_.ambient_dim != box.ambient_dim:
        raise InputError(f"ambient dimension mismatch: complex in dimension "
                         f"{complex_.ambient_dim}, box in {box.ambient_dim}")
    pieces = []
    weights = []
    for i in range(complex_.num_cells):
        clipped = intersect_polyhedra(complex_.cell_polyhedron(i), box.polytope)
        if clipped.is_empty:
            continue
        assert clipped.is_bounded
        pieces.append(clipped)
        weights.append(complex_.cell_weight(i))
    return from_cell_polyhedra(complex_.ambient_dim, pieces,
                               weights=weights if complex_.weights is not None else None)


def frame_for_curve(surface: PolyhedralComplex, box: BoundingBox) -> PolyhedralComplex:
    """The 1-skeleton of the surface clipped to the box.

    This is the printable frame recommended for supporting a curve: the
    edge graph of the bounded surface, including edges on the box
    boundary.  The box's own edges are not added, and weights are dropped.
    """
    if surface.dim != 2:
        raise InputError(f"frame construction needs a 2-dimensional surface, "
                         f"got dimension {surface.dim}")
    bounded = intersect_with_bounding_box(surface, box)
    return skeleton(bounded, 1)
