"""Tropical hypersurfaces, regular subdivisions, stable intersection, balancing.

The hypersurface of a tropical polynomial is built through the dual
regular subdivision of its Newton polytope: lift each exponent row by its
coefficient, take the lower (min) or upper (max) hull, and dualize.  Each
edge of the subdivision corresponds to a maximal cell of the hypersurface,
weighted by the lattice length of the edge.

Stable intersection follows the fan displacement recipe: a pair of cells
contributes exactly when one still meets the other after an infinitesimal
shift along a fixed generic direction.  That test is exact: the feasible
shift directions form the tangent cone of the Minkowski difference body
at the origin, so a pair survives iff the direction lies strictly inside
that cone.  The direction is validated against every tight facet normal
of every difference body and replaced by the next power sequence if it
hits one.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .complexes import PolyhedralComplex, from_cell_polyhedra
from .errors import InputError
from .geometry import Polyhedron, faces_of_dim, intersect_polyhedra
from .linalg import (IntVec, dot, hnf, integer_kernel, lattice_index,
                     lattice_intersection, primitive, rank, saturate, to_integer,
                     vsub)
from .polynomial import MIN, TropicalPolynomial

_PERTURBATION_PRIME = 7919


@dataclass(frozen=True)
class DualSubdivision:
    """Regular subdivision of the Newton polytope induced by the lifted
    coefficients; cells are index sets into the polynomial's terms."""
    lifted_points: tuple[tuple[Fraction, ...], ...]
    cells: tuple[tuple[int, ...], ...]


def regular_subdivision(poly: TropicalPolynomial) -> DualSubdivision:
    """Maximal cells of the regular subdivision selected by the convention.

    Lower-hull facets for min, upper-hull facets for max; a term whose
    lift is not on the relevant hull appears in no cell.
    """
    if poly.num_terms < 1:
        raise InputError("polynomial has no terms")
    n = poly.num_variables
    lifted = [tuple(Fraction(e) for e in row) + (coeff,)
              for row, coeff in zip(poly.exponents, poly.coefficients)]
    lift_ray = tuple([0] * n + [1 if poly.convention == MIN else -1])
    hull = Polyhedron.from_generators(lifted, rays=[lift_ray], ambient_dim=n + 1)

    cells = []
    for row in hull.inequalities:
        last = row[n + 1]
        relevant = last > 0 if poly.convention == MIN else last < 0
        if not relevant:
            continue
        tight = tuple(i for i, pt in enumerate(lifted)
                      if row[0] + dot(row[1:], pt) == 0)
        cells.append(tight)
    if not cells:
        # zero-dimensional Newton polytope: a single cell with every term
        cells = [tuple(range(poly.num_terms))]
    return DualSubdivision(tuple(lifted), tuple(sorted(cells)))


def _subdivision_edges(poly: TropicalPolynomial,
                       sub: DualSubdivision) -> list[tuple[tuple[IntVec, IntVec], tuple[int, ...]]]:
    """Edges of the subdivision as (endpoint pair, tight term indices)."""
    edges: dict[tuple[IntVec, IntVec], tuple[int, ...]] = {}
    for cell in sub.cells:
        pts = [poly.exponents[i] for i in cell]
        hull = Polyhedron.from_generators(pts, ambient_dim=poly.num_variables)
        if hull.dim < 1:
            continue
        for edge in faces_of_dim(hull, 1):
            a, b = edge.vertices
            key = (tuple(a), tuple(b))
            if key not in edges:
                tight = tuple(i for i in cell if edge.contains(poly.exponents[i]))
                edges[key] = tight
    return sorted(edges.items())


def _dual_cell(poly: TropicalPolynomial, tight: Sequence[int]) -> Polyhedron:
    """Region where exactly the given terms attain the optimum (closure)."""
    ref = tight[0]
    c = poly.coefficients
    a = poly.exponents
    equations = []
    for i in tight[1:]:
        equations.append((c[ref] - c[i],) + vsub(a[ref], a[i]))
    inequalities = []
    sign = 1 if poly.convention == MIN else -1
    for k in range(poly.num_terms):
        if k in tight:
            continue
        row = (sign * (c[k] - c[ref]),) + tuple(sign * d for d in vsub(a[k], a[ref]))
        inequalities.append(row)
    return Polyhedron.from_hrep(inequalities, equations, poly.num_variables)


def hypersurface(poly: TropicalPolynomial) -> PolyhedralComplex:
    """The weighted tropical hypersurface of a polynomial.

    The codimension-1 locus where the optimum is attained at least twice,
    with one maximal cell per subdivision edge and weight equal to the
    lattice length of that edge.  A single-term polynomial yields the
    empty complex.
    """
    n = poly.num_variables
    sub = regular_subdivision(poly)
    edges = _subdivision_edges(poly, sub)
    if not edges:
        return PolyhedralComplex(n, (), (), (), None)
    cells = []
    weights = []
    for (a, b), tight in edges:
        dual = _dual_cell(poly, tight)
        assert not dual.is_empty, "dual cell of a subdivision edge cannot be empty"
        assert dual.dim == n - 1, "hypersurface cells must have codimension 1"
        cells.append(dual)
        g = 0
        for d in vsub(b, a):
            g = gcd(g, int(d))
        weights.append(g)
    lineality = cells[0].lineality
    assert all(c.lineality == lineality for c in cells)
    return from_cell_polyhedra(n, cells, weights=weights, lineality=lineality)


# ---------------------------------------------------------------------------
# balancing

def _tangent_lattice(poly: Polyhedron) -> list[IntVec]:
    """Saturated integer lattice of the linear space parallel to aff(poly)."""
    gens = [to_integer(vsub(v, poly.vertices[0])) for v in poly.vertices[1:]]
    gens += [tuple(r) for r in poly.rays] + [tuple(l) for l in poly.lineality]
    return saturate(gens, poly.ambient_dim)


def _primitive_normal(cell: Polyhedron, ridge: Polyhedron,
                      cell_lattice: list[IntVec], ridge_lattice: list[IntVec]) -> IntVec:
    """Primitive generator of N_cell / N_ridge, oriented from ridge into cell."""
    n = cell.ambient_dim
    # coordinates of N_ridge vectors in the basis of N_cell
    coords = []
    for r in ridge_lattice:
        status, sol = __solve_in_basis(cell_lattice, r)
        assert status
        coords.append(sol)
    d = len(cell_lattice)
    kernel = integer_kernel(coords, d)
    assert len(kernel) == 1
    w = kernel[0]
    # find integer t with t.w = 1 (extended gcd across entries)
    t = _solve_unimodular(w)
    u = tuple(sum(t[i] * cell_lattice[i][j] for i in range(d)) for j in range(n))
    # orient outward from the ridge into the cell
    for row in cell.inequalities:
        if _tight_on(row, ridge):
            s = dot(row[1:], u)
            assert s != 0, "normal candidate lies in the ridge span"
            return u if s > 0 else tuple(-x for x in u)
    raise AssertionError("ridge is not cut out by any cell inequality")


def __solve_in_basis(basis: list[IntVec], target: IntVec) -> tuple[bool, IntVec]:
    from .linalg import solve_exact
    status, sol = solve_exact([list(col) for col in zip(*basis)], target)
    if status != "unique" or sol is None:
        return False, ()
    assert all(f.denominator == 1 for f in sol)
    return True, tuple(int(f) for f in sol)


def _solve_unimodular(w: IntVec) -> IntVec:
    """An integer vector t with t.w == 1 for primitive w (extended gcd)."""
    t = [0] * len(w)
    g = 0
    for i, x in enumerate(w):
        if x == 0:
            continue
        if g == 0:
            g = abs(x)
            t[i] = 1 if x > 0 else -1
            continue
        # extended gcd of g and x
        old_r, r = g, x
        old_s, s = 1, 0
        old_u, u = 0, 1
        while r:
            q = old_r // r
            old_r, r = r, old_r - q * r
            old_s, s = s, old_s - q * s
            old_u, u = u, old_u - q * u
        if old_r < 0:
            old_r, old_s, old_u = -old_r, -old_s, -old_u
        # old_s * g + old_u * x == old_r == gcd(g, x)
        t = [old_s * v for v in t]
        t[i] = old_u
        g = old_r
    assert g == 1, f"vector {w} is not primitive"
    return tuple(t)


def _tight_on(row: IntVec, poly: Polyhedron) -> bool:
    for v in poly.vertices:
        if row[0] + dot(row[1:], v) != 0:
            return False
    for r in poly.rays + poly.lineality:
        if dot(row[1:], r) != 0:
            return False
    return True


@dataclass(frozen=True)
class BalancingReport:
    balanced: bool
    violations: tuple[tuple, ...]  # generator keys of violating ridges


def check_balancing(complex_: PolyhedralComplex) -> BalancingReport:
    """Check the balancing condition at every ridge of a weighted complex.

    At each codimension-1 face of the maximal cells, the weighted sum of
    primitive normal vectors of the adjacent cells must lie in the linear
    span of the ridge.
    """
    if complex_.is_empty:
        return BalancingReport(True, ())
    if not complex_.is_pure():
        raise InputError("balancing is defined for pure-dimensional complexes only")
    d = complex_.dim
    if d == 0:
        return BalancingReport(True, ())
    n = complex_.ambient_dim

    ridges: dict[tuple, tuple[Polyhedron, list[int]]] = {}
    cell_lattices = {}
    for i in range(complex_.num_cells):
        cell = complex_.cell_polyhedron(i)
        cell_lattices[i] = _tangent_lattice(cell)
        for ridge in faces_of_dim(cell, d - 1):
            key = ridge.generator_key()
            if key not in ridges:
                ridges[key] = (ridge, [])
            ridges[key][1].append(i)

    violations = []
    for key in sorted(ridges):
        ridge, adjacent = ridges[key]
        ridge_lattice = _tangent_lattice(ridge)
        total = (0,) * n
        for i in adjacent:
            cell = complex_.cell_polyhedron(i)
            u = _primitive_normal(cell, ridge, cell_lattices[i], ridge_lattice)
            total = tuple(t + complex_.cell_weight(i) * x for t, x in zip(total, u))
        # balanced iff the residual lies in the span of the ridge
        if rank(ridge_lattice + [total]) > len(ridge_lattice):
            violations.append(key)
    return BalancingReport(not violations, tuple(violations))


# ---------------------------------------------------------------------------
# stable intersection

def _power_direction(n: int, k: int) -> IntVec:
    return tuple(_PERTURBATION_PRIME ** (k * (n - 1 - i)) for i in range(n))


def _pair_data(sigma: Polyhedron, tau: Polyhedron):
    """Survival data for a cell pair: does sigma meet tau, and which
    hyperplanes bound the cone of shift directions keeping them together.

    The difference body D = sigma - tau contains 0 iff the cells meet;
    the tangent cone of D at 0 is cut out by the constraints of D that
    are tight at the origin.
    """
    diff = sigma.minkowski_difference_with(tau)
    origin = (Fraction(0),) * sigma.ambient_dim
    if not diff.contains(origin):
        return None
    tight_ineqs = [row[1:] for row in diff.inequalities if row[0] == 0]
    eq_normals = [row[1:] for row in diff.equations]
    return tight_ineqs, eq_normals


def stable_intersection(a: PolyhedralComplex, b: PolyhedralComplex) -> PolyhedralComplex:
    """Stable intersection of two weighted complexes in the same space.

    The support is the limit of ``a meet (b + eps*v)`` for a fixed generic
    direction v as eps goes to 0+; the weight of an output cell sums
    w(sigma) * w(tau) * [Z^n : N_sigma + N_tau] over the surviving pairs.
    The output is pure of dimension dim a + dim b - n.
    """
    if a.ambient_dim != b.ambient_dim:
        raise InputError(
            f"ambient dimension mismatch: {a.ambient_dim} vs {b.ambient_dim}")
    n = a.ambient_dim
    if a.is_empty or b.is_empty:
        return PolyhedralComplex(n, (), (), (), None)
    expected_dim = a.dim + b.dim - n
    if expected_dim < 0:
        return PolyhedralComplex(n, (), (), (), None)

    cells_a = [a.cell_polyhedron(i) for i in range(a.num_cells)]
    cells_b = [b.cell_polyhedron(i) for i in range(b.num_cells)]
    lattices_a = [_tangent_lattice(c) for c in cells_a]
    lattices_b = [_tangent_lattice(c) for c in cells_b]

    pair_info = {}
    bad_normals: set[IntVec] = set()
    for i, sigma in enumerate(cells_a):
        for j, tau in enumerate(cells_b):
            data = _pair_data(sigma, tau)
            pair_info[i, j] = data
            if data is not None:
                tight, eqs = data
                bad_normals.update(primitive(row) for row in tight)
                bad_normals.update(primitive(row) for row in eqs)

    direction = None
    for k in range(1, 64):
        cand = _power_direction(n, k)
        if all(dot(row, cand) != 0 for row in bad_normals):
            direction = cand
            break
    assert direction is not None, "no generic direction among 63 power sequences"

    merged: dict[tuple, list] = {}
    for i, sigma in enumerate(cells_a):
        for j, tau in enumerate(cells_b):
            data = pair_info[i, j]
            if data is None:
                continue
            tight, eqs = data
            if eqs:  # difference body is lower-dimensional: pair not transverse
                continue
            if any(dot(row, direction) < 0 for row in tight):
                continue
            gamma = intersect_polyhedra(sigma, tau)
            assert not gamma.is_empty
            if gamma.dim != expected_dim:
                continue
            idx = lattice_index(lattices_a[i] + lattices_b[j], n)
            w = a.cell_weight(i) * b.cell_weight(j) * idx
            key = gamma.generator_key()
            if key in merged:
                merged[key][1] += w
            else:
                merged[key] = [gamma, w]

    if not merged:
        return PolyhedralComplex(n, (), (), (), None)
    ordered = [merged[key] for key in sorted(merged)]
    out_lineality = lattice_intersection(list(a.lineality), list(b.lineality), n)
    return from_cell_polyhedra(n, [g for g, _ in ordered],
                               weights=[w for _, w in ordered],
                               lineality=out_lineality)
