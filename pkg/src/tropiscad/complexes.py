"""Polyhedral complexes: homogeneous points, maximal cells, lineality, weights.

Points use the homogeneous convention: a leading 1 marks a vertex, a
leading 0 marks a ray direction.  Cells are index sets into the point
list; a global lineality space applies to every cell.  When a complex
has lineality, vertices and rays are stored reduced modulo the lineality
space so that shared faces of different cells use shared point indices.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InputError, ValidationError
from .geometry import Polyhedron, faces_of_dim, intersect_polyhedra
from .linalg import FracVec, IntVec, frac_vec, hnf, is_zero_vec, primitive, to_integer


@dataclass(frozen=True)
class HPoint:
    """A point in homogeneous coordinates: (lead, x1, ..., xn), lead in {0, 1}."""
    coords: FracVec

    def __post_init__(self):
        if len(self.coords) < 2:
            raise InputError("homogeneous point needs a leading coordinate and data")
        lead = self.coords[0]
        if lead not in (0, 1):
            raise InputError(f"leading coordinate must be 0 or 1, got {lead}")
        if lead == 0 and is_zero_vec(self.coords[1:]):
            raise InputError("ray direction must be nonzero")

    @classmethod
    def make(cls, raw: Sequence) -> "HPoint":
        """Build from raw coordinates, normalizing a positive leading entry to 1."""
        coords = frac_vec(raw)
        lead = coords[0]
        if lead < 0:
            raise InputError(f"leading coordinate must be nonnegative, got {lead}")
        if lead > 0:
            coords = tuple(c / lead for c in coords)
        else:
            coords = (Fraction(0),) + tuple(Fraction(x) for x in to_integer(coords[1:]))
        return cls(coords)

    @classmethod
    def vertex(cls, position: Sequence) -> "HPoint":
        return cls((Fraction(1),) + frac_vec(position))

    @classmethod
    def ray(cls, direction: Sequence) -> "HPoint":
        return cls((Fraction(0),) + tuple(Fraction(x) for x in to_integer(direction)))

    @property
    def is_vertex(self) -> bool:
        return self.coords[0] == 1

    @property
    def value(self) -> FracVec:
        """The position (vertices) or direction (rays) without the lead."""
        return self.coords[1:]

    def sort_key(self):
        return (0 if self.is_vertex else 1, self.coords)


@dataclass(frozen=True)
class PolyhedralComplex:
    ambient_dim: int
    points: tuple[HPoint, ...]
    lineality: tuple[IntVec, ...]
    maximal_cells: tuple[tuple[int, ...], ...]
    weights: tuple[int, ...] | None = None
    _cell_cache: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def is_empty(self) -> bool:
        return not self.maximal_cells

    @property
    def is_bounded(self) -> bool:
        return all(p.is_vertex for p in self.points) and not self.lineality

    @property
    def num_cells(self) -> int:
        return len(self.maximal_cells)

    def cell_polyhedron(self, i: int) -> Polyhedron:
        if i not in self._cell_cache:
            cell = self.maximal_cells[i]
            verts = [self.points[j].value for j in cell if self.points[j].is_vertex]
            rays = [to_integer(self.points[j].value) for j in cell
                    if not self.points[j].is_vertex]
            self._cell_cache[i] = Polyhedron.from_generators(
                verts, rays, self.lineality, self.ambient_dim)
        return self._cell_cache[i]

    def cell_weight(self, i: int) -> int:
        return 1 if self.weights is None else self.weights[i]

    @property
    def dim(self) -> int:
        """Maximum cell dimension; -1 for the empty complex."""
        if self.is_empty:
            return -1
        return max(self.cell_polyhedron(i).dim for i in range(self.num_cells))

    def is_pure(self) -> bool:
        if self.is_empty:
            return True
        dims = {self.cell_polyhedron(i).dim for i in range(self.num_cells)}
        return len(dims) == 1

    def vertex_positions(self) -> list[FracVec]:
        return [p.value for p in self.points if p.is_vertex]

    def validate(self) -> None:
        """Check the face-to-face property of all cell pairs.

        Raises :class:`ValidationError` naming the first offending pair.
        O(cells^2) polyhedral intersections in exact arithmetic.
        """
        for i in range(self.num_cells):
            for j in range(i + 1, self.num_cells):
                a = self.cell_polyhedron(i)
                b = self.cell_polyhedron(j)
                cap = intersect_polyhedra(a, b)
                if cap.is_empty:
                    continue
                if not (_is_face_of(cap, a) and _is_face_of(cap, b)):
                    raise ValidationError(
                        f"cells {i} and {j} do not intersect in a common face")

    def components(self) -> int:
        """Connected components, linking cells through shared vertex indices."""
        n = len(self.points)
        parent = list(range(n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb

        for cell in self.maximal_cells:
            verts = [j for j in cell if self.points[j].is_vertex]
            for a, b in zip(verts, verts[1:]):
                union(a, b)
        roots = {find(j) for j in range(n) if self.points[j].is_vertex}
        return len(roots)


def _is_face_of(face: Polyhedron, cell: Polyhedron) -> bool:
    """True when `face` (nonempty, face <= cell) is a face of `cell`."""
    gens = [tuple(v) for v in face.vertices]
    dirs = [tuple(Fraction(x) for x in r) for r in face.rays + face.lineality]
    tight = list(cell.equations)
    for row in cell.inequalities:
        if all(row[0] + sum(a * x for a, x in zip(row[1:], v)) == 0 for v in gens) \
                and all(sum(a * x for a, x in zip(row[1:], d)) == 0 for d in dirs):
            tight.append(row)
    hull = Polyhedron.from_hrep(cell.inequalities, tight, cell.ambient_dim)
    return hull == face


def _normalize_mod_lineality(points: list[HPoint], lin: list[IntVec]) -> list[HPoint]:
    """Reduce vertex/ray coordinates modulo the lineality space.

    Uses the HNF pivot structure of the lineality basis so that equal
    points modulo lineality get equal representatives.
    """
    if not lin:
        return points
    pivots = [next(j for j in range(len(row)) if row[j]) for row in lin]
    out = []
    for p in points:
        coords = list(p.value)
        for row, pc in zip(lin, pivots):
            f = Fraction(coords[pc], row[pc])
            if f != 0:
                coords = [c - f * l for c, l in zip(coords, row)]
        if p.is_vertex:
            out.append(HPoint.vertex(coords))
        else:
            if is_zero_vec(coords):
                out.append(None)  # ray inside the lineality space: drop
            else:
                out.append(HPoint.ray(coords))
    return out


def _assemble(ambient_dim: int, points: list[HPoint], cells: list[Sequence[int]],
              lineality: Iterable[Sequence], weights: Sequence[int] | None,
              check_faces: bool) -> PolyhedralComplex:
    lin = hnf([to_integer(l) for l in lineality if not is_zero_vec(tuple(l))], ambient_dim)
    reduced = _normalize_mod_lineality(points, lin)

    index_map: dict[HPoint, int] = {}
    old_to_new: list[int | None] = []
    unique: list[HPoint] = []
    for p in reduced:
        if p is None:
            old_to_new.append(None)
            continue
        if p not in index_map:
            index_map[p] = len(unique)
            unique.append(p)
        old_to_new.append(index_map[p])

    mapped: list[tuple[int, ...]] = []
    for ci, cell in enumerate(cells):
        new_cell = sorted({old_to_new[j] for j in cell if old_to_new[j] is not None})
        if not new_cell:
            raise InputError(f"cell {ci} is empty after normalization")
        if not any(unique[j].is_vertex for j in new_cell):
            raise InputError(f"cell {ci} has rays only and spans no polyhedron")
        mapped.append(tuple(new_cell))

    # absorb cells whose point set is contained in another's
    keep: list[int] = []
    for i, cell in enumerate(mapped):
        ci = set(cell)
        absorbed = False
        for j, other in enumerate(mapped):
            if i == j:
                continue
            oj = set(other)
            if ci < oj or (ci == oj and j < i):
                absorbed = True
                break
        if not absorbed:
            keep.append(i)

    kept_cells = [mapped[i] for i in keep]
    kept_weights = None if weights is None else [weights[i] for i in keep]

    # drop unreferenced points, re-sort canonically, remap cells
    used = sorted({j for cell in kept_cells for j in cell},
                  key=lambda j: unique[j].sort_key())
    remap = {old: new for new, old in enumerate(used)}
    final_points = tuple(unique[j] for j in used)
    remapped = [tuple(sorted(remap[j] for j in cell)) for cell in kept_cells]
    order = sorted(range(len(remapped)), key=lambda i: remapped[i])
    final_cells = tuple(remapped[i] for i in order)
    final_weights = None if kept_weights is None else tuple(kept_weights[i] for i in order)

    out = PolyhedralComplex(ambient_dim, final_points, tuple(lin),
                            final_cells, final_weights)
    if check_faces:
        out.validate()
    return out


def from_points_and_cells(points: Iterable[Sequence], cells: Iterable[Sequence[int]],
                          lineality: Iterable[Sequence] = (),
                          weights: Sequence[int] | None = None,
                          ambient_dim: int | None = None) -> PolyhedralComplex:
    """Build a validated complex from homogeneous points and index cells.

    Redundant (non-maximal) cells are absorbed, points are deduplicated
    and canonically ordered, and the face-to-face property is checked.
    """
    raw_points = [HPoint.make(p) for p in points]
    if ambient_dim is None:
        if not raw_points:
            raise InputError("cannot infer ambient dimension from an empty point list")
        ambient_dim = len(raw_points[0].coords) - 1
    for p in raw_points:
        if len(p.coords) != ambient_dim + 1:
            raise InputError(
                f"point has {len(p.coords) - 1} coordinates, expected {ambient_dim}")
    cells = [tuple(c) for c in cells]
    for ci, cell in enumerate(cells):
        for j in cell:
            if not 0 <= j < len(raw_points):
                raise InputError(f"cell {ci} references point index {j}, "
                                 f"but only {len(raw_points)} points are given")
        if not cell:
            raise InputError(f"cell {ci} is empty")
    if weights is not None:
        weights = list(weights)
        if len(weights) != len(cells):
            raise InputError(
                f"{len(weights)} weights given for {len(cells)} maximal cells")
        for w in weights:
            if not isinstance(w, int) or w < 1:
                raise InputError(f"weights must be positive integers, got {w!r}")
    return _assemble(ambient_dim, raw_points, cells, lineality, weights,
                     check_faces=True)


def from_cell_polyhedra(ambient_dim: int, cells: Sequence[Polyhedron],
                        weights: Sequence[int] | None = None,
                        lineality: Iterable[Sequence] = (),
                        check_faces: bool = False) -> PolyhedralComplex:
    """Assemble a complex from ready-made cell polyhedra (internal path).

    Used by constructions that are face-to-face by design; validation is
    opt-in there because it costs O(cells^2) exact intersections.
    """
    points: list[HPoint] = []
    index_cells: list[list[int]] = []
    for poly in cells:
        idx = []
        for v in poly.vertices:
            points.append(HPoint.vertex(v))
            idx.append(len(points) - 1)
        for r in poly.rays:
            points.append(HPoint.ray(r))
            idx.append(len(points) - 1)
        index_cells.append(idx)
    if not index_cells:
        return PolyhedralComplex(ambient_dim, (), tuple(hnf([to_integer(l) for l in lineality],
                                                            ambient_dim)), (), None)
    return _assemble(ambient_dim, points, index_cells, lineality, weights,
                     check_faces=check_faces)


def skeleton(complex_: PolyhedralComplex, k: int) -> PolyhedralComplex:
    """The k-skeleton: all k-faces of maximal cells, deduplicated."""
    if k < 0 or k > complex_.dim:
        raise InputError(f"skeleton dimension {k} out of range [0, {complex_.dim}]")
    faces: dict[tuple, Polyhedron] = {}
    for i in range(complex_.num_cells):
        poly = complex_.cell_polyhedron(i)
        if poly.dim < k:
            continue
        for face in faces_of_dim(poly, k):
            faces.setdefault(face.generator_key(), face)
    ordered = [faces[key] for key in sorted(faces)]
    return from_cell_polyhedra(complex_.ambient_dim, ordered,
                               lineality=complex_.lineality)


def graph_stats(complex_: PolyhedralComplex) -> tuple[int, int, int, int, int]:
    """(vertices, bounded edges, unbounded edges, components, first Betti number)
    of a complex of dimension at most 1.

    The Betti number is computed on the bounded subgraph:
    b1 = bounded_edges - vertices + components.
    """
    if complex_.dim >= 2:
        raise InputError(f"graph statistics need dim <= 1, got {complex_.dim}")
    if complex_.lineality:
        raise InputError("graph statistics need a lineality-free complex")
    num_vertices = sum(1 for p in complex_.points if p.is_vertex)
    bounded_edges = 0
    unbounded_edges = 0
    adjacency: list[tuple[int, int]] = []
    for cell in complex_.maximal_cells:
        verts = [j for j in cell if complex_.points[j].is_vertex]
        rays = [j for j in cell if not complex_.points[j].is_vertex]
        if len(verts) == 2 and not rays:
            bounded_edges += 1
            adjacency.append((verts[0], verts[1]))
        elif len(verts) == 1 and len(rays) == 1:
            unbounded_edges += 1
        elif len(verts) == 1 and not rays:
            pass  # isolated vertex cell
        else:
            raise InputError(f"cell {cell} is not a vertex, segment or ray")

    parent = {j: j for j in range(len(complex_.points))
              if complex_.points[j].is_vertex}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in adjacency:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    components = len({find(j) for j in parent})
    betti = bounded_edges - num_vertices + components
    return (num_vertices, bounded_edges, unbounded_edges, components, betti)
