"""Exact convex geometry kernel: representation conversion, faces, intersection.

Polyhedra are carried with both descriptions:

* generators: vertices (rational points), rays and lineality directions
  (primitive integer vectors),
* constraints: inequalities ``b + a.x >= 0`` and equations ``b + a.x = 0``
  as primitive integer rows ``(b, a1, ..., an)``.

Conversion in both directions runs the double description method on a
homogenizing cone in dimension n+1, entirely in integer arithmetic.
All outputs are minimal and canonically sorted, so equal polyhedra
compare equal structurally.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .errors import InputError
from .linalg import (FracVec, IntVec, dot, frac_vec, hnf, integer_kernel,
                     is_zero_vec, primitive, rank, solve_exact, to_integer, vsub)

MAX_AMBIENT_DIM = 8


# ---------------------------------------------------------------------------
# double description on pointed cones

def _initial_basis(rows: list[IntVec], dim: int) -> list[int]:
    """Indices of the first `dim` linearly independent rows."""
    chosen: list[int] = []
    mat: list[list[Fraction]] = []
    for idx, row in enumerate(rows):
        cand = mat + [[Fraction(x) for x in row]]
        if rank(cand) == len(cand):
            mat = cand
            chosen.append(idx)
            if len(chosen) == dim:
                return chosen
    raise AssertionError("cone is not pointed: row rank below dimension")


def _simplicial_rays(rows: list[IntVec], basis: list[int], dim: int) -> list[IntVec]:
    """Extreme rays of {x : a_i.x >= 0} for dim independent rows a_i."""
    a = [rows[i] for i in basis]
    out = []
    for j in range(dim):
        e_j = [Fraction(1 if t == j else 0) for t in range(dim)]
        status, sol = solve_exact(a, e_j)
        assert status == "unique" and sol is not None
        out.append(to_integer(sol))
    return out


def _dd_extreme_rays(ineq_rows: list[IntVec], eq_rows: list[IntVec], dim: int) -> list[IntVec]:
    """Extreme rays of the pointed cone {x : I.x >= 0, E.x = 0}.

    Precondition: the stacked rows have full column rank (the cone is
    pointed).  Equations are handled as opposite inequality pairs.
    Incremental insertion with the combinatorial adjacency test.
    """
    if dim == 0:
        return []
    rows: list[IntVec] = []
    seen = set()
    for row in list(eq_rows) + [tuple(-x for x in r) for r in eq_rows] + list(ineq_rows):
        row = primitive(row)
        if is_zero_vec(row) or row in seen:
            continue
        seen.add(row)
        rows.append(row)
    basis = _initial_basis(rows, dim)
    order = basis + [i for i in range(len(rows)) if i not in basis]

    rays = _simplicial_rays(rows, basis, dim)
    # tight-set bitmask per ray, bit k = processed row order[k]
    masks = []
    for r in rays:
        m = 0
        for k in range(dim):
            if dot(rows[order[k]], r) == 0:
                m |= 1 << k
        masks.append(m)

    for pos in range(dim, len(order)):
        row = rows[order[pos]]
        vals = [dot(row, r) for r in rays]
        if all(v >= 0 for v in vals):
            for i, v in enumerate(vals):
                if v == 0:
                    masks[i] |= 1 << pos
            continue
        plus = [i for i, v in enumerate(vals) if v > 0]
        zero = [i for i, v in enumerate(vals) if v == 0]
        minus = [i for i, v in enumerate(vals) if v < 0]
        new_rays: list[IntVec] = []
        for ip in plus:
            for im in minus:
                common = masks[ip] & masks[im]
                if common.bit_count() < dim - 2:
                    continue
                adjacent = True
                for k in range(len(rays)):
                    if k != ip and k != im and masks[k] & common == common:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                comb = tuple(vals[ip] * x - vals[im] * y
                             for x, y in zip(rays[im], rays[ip]))
                new_rays.append(primitive(comb))
        kept = [(rays[i], masks[i] | (1 << pos) if vals[i] == 0 else masks[i])
                for i in plus + zero]
        rays = [r for r, _ in kept]
        masks = [m for _, m in kept]
        for r in new_rays:
            m = 0
            for k in range(pos + 1):
                if dot(rows[order[k]], r) == 0:
                    m |= 1 << k
            rays.append(r)
            masks.append(m)
        if not rays:
            break
    return rays


def _cone_generators(ineq_rows: list[IntVec], eq_rows: list[IntVec],
                     dim: int) -> tuple[list[IntVec], list[IntVec]]:
    """V-description (extreme rays modulo lineality, lineality basis) of
    the cone {x : I.x >= 0, E.x = 0}."""
    lin = integer_kernel(ineq_rows + eq_rows, dim)
    if not lin:
        return _dd_extreme_rays(ineq_rows, eq_rows, dim), []
    pivot_cols = {next(j for j in range(dim) if row[j]) for row in lin}
    keep = [c for c in range(dim) if c not in pivot_cols]
    if not keep:
        return [], lin

    def restrict(rows: list[IntVec]) -> list[IntVec]:
        out = []
        for row in rows:
            red = tuple(row[c] for c in keep)
            if not is_zero_vec(red):
                out.append(red)
        return out

    reduced = _dd_extreme_rays(restrict(ineq_rows), restrict(eq_rows), len(keep))
    lifted = []
    for r in reduced:
        full = [0] * dim
        for val, c in zip(r, keep):
            full[c] = val
        lifted.append(tuple(full))
    return lifted, lin


# ---------------------------------------------------------------------------
# public conversions (rows are (b, a1..an) with b + a.x >= 0 resp. = 0)

def _prepare_rows(rows: Iterable[Sequence], ambient_dim: int, what: str) -> list[IntVec]:
    out = []
    for row in rows:
        row = tuple(Fraction(x) for x in row)
        if len(row) != ambient_dim + 1:
            raise InputError(
                f"{what} row has {len(row) - 1} coordinates, expected {ambient_dim}")
        out.append(to_integer(row))
    return out


def vertex_enumeration(inequalities: Iterable[Sequence], equations: Iterable[Sequence],
                       ambient_dim: int) -> tuple[list[FracVec], list[IntVec], list[IntVec]]:
    """Minimal (vertices, rays, lineality) of an H-description.

    An infeasible system yields three empty lists.  Output is canonically
    sorted: vertices and rays lexicographically, lineality as an HNF basis.
    """
    if ambient_dim > MAX_AMBIENT_DIM:
        raise InputError(f"ambient dimension {ambient_dim} exceeds the cap {MAX_AMBIENT_DIM}")
    ineq = _prepare_rows(inequalities, ambient_dim, "inequality")
    eq = _prepare_rows(equations, ambient_dim, "equation")
    for row in eq:
        if is_zero_vec(row[1:]) and row[0] != 0:
            return [], [], []
    for row in ineq:
        if is_zero_vec(row[1:]) and row[0] < 0:
            return [], [], []
    ineq = [r for r in ineq if not is_zero_vec(r[1:])]
    eq = [r for r in eq if not is_zero_vec(r[1:])]
    hom_dim = ambient_dim + 1
    x0_row = tuple([1] + [0] * ambient_dim)
    rays, lin = _cone_generators(ineq + [x0_row], eq, hom_dim)

    vertices: list[FracVec] = []
    ray_dirs: list[IntVec] = []
    for r in rays:
        lead = r[0]
        assert lead >= 0
        if lead > 0:
            vertices.append(tuple(Fraction(x, lead) for x in r[1:]))
        else:
            ray_dirs.append(primitive(r[1:]))
    if not vertices:
        return [], [], []
    lineality = []
    for l in lin:
        assert l[0] == 0
        lineality.append(l[1:])
    return (sorted(vertices), sorted(ray_dirs), hnf(lineality, ambient_dim))


def facet_enumeration(vertices: Iterable[Sequence], rays: Iterable[Sequence],
                      lineality: Iterable[Sequence],
                      ambient_dim: int) -> tuple[list[IntVec], list[IntVec]]:
    """Minimal (inequalities, equations) of conv(V) + cone(R) + span(L).

    Works through the polar of the homogenization cone; requires at least
    one vertex.
    """
    if ambient_dim > MAX_AMBIENT_DIM:
        raise InputError(f"ambient dimension {ambient_dim} exceeds the cap {MAX_AMBIENT_DIM}")
    gen_rows: list[IntVec] = []
    nverts = 0
    for v in vertices:
        v = frac_vec(v)
        if len(v) != ambient_dim:
            raise InputError(f"vertex has {len(v)} coordinates, expected {ambient_dim}")
        gen_rows.append(to_integer((Fraction(1),) + v))
        nverts += 1
    if nverts == 0:
        raise InputError("generator description has no vertex")
    for r in rays:
        r = to_integer(r)
        if len(r) != ambient_dim:
            raise InputError(f"ray has {len(r)} coordinates, expected {ambient_dim}")
        if is_zero_vec(r):
            raise InputError("zero vector is not a valid ray")
        gen_rows.append((0,) + r)
    eq_rows: list[IntVec] = []
    for l in lineality:
        l = to_integer(l)
        if len(l) != ambient_dim:
            raise InputError(f"lineality row has {len(l)} coordinates, expected {ambient_dim}")
        if is_zero_vec(l):
            continue
        eq_rows.append((0,) + l)

    polar_rays, polar_lin = _cone_generators(gen_rows, eq_rows, ambient_dim + 1)
    inequalities = sorted(r for r in polar_rays if not is_zero_vec(r[1:]))
    equations = [l for l in polar_lin if not is_zero_vec(l[1:])]
    return inequalities, hnf(equations, ambient_dim + 1)


# ---------------------------------------------------------------------------
# Polyhedron

@dataclass(frozen=True)
class Polyhedron:
    """A convex polyhedron with canonical generator and constraint data.

    Instances should be built through :meth:`from_hrep`,
    :meth:`from_generators` or :func:`intersect_polyhedra`, which
    compute both minimal descriptions.
    """
    ambient_dim: int
    vertices: tuple[FracVec, ...]
    rays: tuple[IntVec, ...]
    lineality: tuple[IntVec, ...]
    inequalities: tuple[IntVec, ...]
    equations: tuple[IntVec, ...]

    @classmethod
    def empty(cls, ambient_dim: int) -> "Polyhedron":
        return cls(ambient_dim, (), (), (), ((-1,) + (0,) * ambient_dim,), ())

    @classmethod
    def from_hrep(cls, inequalities: Iterable[Sequence], equations: Iterable[Sequence] = (),
                  ambient_dim: int | None = None) -> "Polyhedron":
        ineq = [tuple(Fraction(x) for x in r) for r in inequalities]
        eq = [tuple(Fraction(x) for x in r) for r in equations]
        if ambient_dim is None:
            if not ineq and not eq:
                raise InputError("cannot infer ambient dimension from empty constraints")
            ambient_dim = len((ineq + eq)[0]) - 1
        verts, rays, lin = vertex_enumeration(ineq, eq, ambient_dim)
        if not verts:
            return cls.empty(ambient_dim)
        facets, eqs = facet_enumeration(verts, rays, lin, ambient_dim)
        return cls(ambient_dim, tuple(verts), tuple(rays), tuple(lin),
                   tuple(facets), tuple(eqs))

    @classmethod
    def from_generators(cls, vertices: Iterable[Sequence], rays: Iterable[Sequence] = (),
                        lineality: Iterable[Sequence] = (),
                        ambient_dim: int | None = None) -> "Polyhedron":
        verts = [frac_vec(v) for v in vertices]
        rays = [tuple(r) for r in rays]
        lin = [tuple(l) for l in lineality]
        if ambient_dim is None:
            if not verts:
                raise InputError("generator description has no vertex")
            ambient_dim = len(verts[0])
        facets, eqs = facet_enumeration(verts, rays, lin, ambient_dim)
        out_verts, out_rays, out_lin = vertex_enumeration(facets, eqs, ambient_dim)
        assert out_verts, "generator input produced an empty polyhedron"
        return cls(ambient_dim, tuple(out_verts), tuple(out_rays), tuple(out_lin),
                   tuple(facets), tuple(eqs))

    # -- basic queries ------------------------------------------------------

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    @property
    def is_bounded(self) -> bool:
        return not self.is_empty and not self.rays and not self.lineality

    @property
    def dim(self) -> int:
        """Affine dimension; -1 for the empty polyhedron."""
        if self.is_empty:
            return -1
        return self.ambient_dim - len(self.equations)

    def generator_key(self) -> tuple:
        return (self.vertices, self.rays, self.lineality)

    def contains(self, point: Sequence) -> bool:
        x = frac_vec(point)
        if len(x) != self.ambient_dim:
            raise InputError(f"point has {len(x)} coordinates, expected {self.ambient_dim}")
        mult = 1
        for c in x:
            mult = lcm(mult, c.denominator)
        xi = [int(c * mult) for c in x]
        for row in self.equations:
            if row[0] * mult + dot(row[1:], xi) != 0:
                return False
        for row in self.inequalities:
            if row[0] * mult + dot(row[1:], xi) < 0:
                return False
        return not self.is_empty

    def translate(self, offset: Sequence) -> "Polyhedron":
        """The polyhedron shifted by a rational offset vector."""
        if self.is_empty:
            return self
        t = frac_vec(offset)
        verts = sorted(tuple(a + b for a, b in zip(v, t)) for v in self.vertices)

        def shift_rows(rows):
            out = []
            for row in rows:
                b_new = Fraction(row[0]) - dot(row[1:], t)
                out.append(to_integer((b_new,) + row[1:]))
            return out

        return Polyhedron(self.ambient_dim, tuple(verts), self.rays, self.lineality,
                          tuple(sorted(shift_rows(self.inequalities))),
                          tuple(hnf(shift_rows(self.equations), self.ambient_dim + 1)))

    def minkowski_difference_with(self, other: "Polyhedron") -> "Polyhedron":
        """The difference body {p - q : p in self, q in other}."""
        verts = [vsub(v, w) for v in self.vertices for w in other.vertices]
        rays = list(self.rays) + [tuple(-x for x in r) for r in other.rays]
        lin = list(self.lineality) + list(other.lineality)
        return Polyhedron.from_generators(verts, rays, lin, self.ambient_dim)


def intersect_polyhedra(p: Polyhedron, q: Polyhedron) -> Polyhedron:
    """Intersection of two polyhedra in the same ambient space."""
    if p.ambient_dim != q.ambient_dim:
        raise InputError(
            f"ambient dimension mismatch: {p.ambient_dim} vs {q.ambient_dim}")
    if p.is_empty or q.is_empty:
        return Polyhedron.empty(p.ambient_dim)
    return Polyhedron.from_hrep(p.inequalities + q.inequalities,
                                p.equations + q.equations, p.ambient_dim)


def faces_of_dim(p: Polyhedron, k: int) -> list[Polyhedron]:
    """All k-dimensional faces of a nonempty polyhedron, canonically ordered.

    Walks the face lattice downward: the facets of a face are obtained by
    turning one of its minimal-description inequalities into an equation.
    """
    if p.is_empty:
        raise InputError("empty polyhedron has no faces")
    if k < 0 or k > p.dim:
        raise InputError(f"face dimension {k} out of range [0, {p.dim}]")
    current = {p.generator_key(): p}
    level = p.dim
    while level > k:
        nxt: dict[tuple, Polyhedron] = {}
        for face in current.values():
            for i in range(len(face.inequalities)):
                eqs = face.equations + (face.inequalities[i],)
                sub = Polyhedron.from_hrep(face.inequalities, eqs, p.ambient_dim)
                if not sub.is_empty and sub.dim == level - 1:
                    nxt.setdefault(sub.generator_key(), sub)
        current = nxt
        level -= 1
        if not current:
            break
    return [current[key] for key in sorted(current)]
