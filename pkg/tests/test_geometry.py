import random
from fractions import Fraction

import pytest

from tropiscad.errors import InputError
from tropiscad.geometry import (Polyhedron, faces_of_dim, facet_enumeration,
                                intersect_polyhedra, vertex_enumeration)

from .oracles import brute_force_facets


def cube_hrep(half_width=1, dim=3):
    rows = []
    for i in range(dim):
        for sign in (1, -1):
            row = [half_width] + [0] * dim
            row[1 + i] = sign
            rows.append(row)
    return rows


class TestVertexEnumeration:
    def test_unit_cube(self):
        verts, rays, lin = vertex_enumeration(cube_hrep(), [], 3)
        expected = sorted((Fraction(a), Fraction(b), Fraction(c))
                          for a in (-1, 1) for b in (-1, 1) for c in (-1, 1))
        assert verts == expected
        assert rays == [] and lin == []

    def test_nonnegative_quadrant(self):
        verts, rays, lin = vertex_enumeration([[0, 1, 0], [0, 0, 1]], [], 2)
        assert verts == [(0, 0)]
        assert rays == [(0, 1), (1, 0)]
        assert lin == []

    def test_infeasible(self):
        verts, rays, lin = vertex_enumeration([[0, 1], [-1, -1]], [], 1)
        assert verts == [] and rays == [] and lin == []

    def test_dimension_mismatch(self):
        with pytest.raises(InputError):
            vertex_enumeration([[0, 1, 0], [0, 1]], [], 2)

    def test_ambient_cap(self):
        with pytest.raises(InputError):
            vertex_enumeration([[1] + [0] * 9], [], 9)

    def test_full_space(self):
        verts, rays, lin = vertex_enumeration([], [], 2)
        assert verts == [(0, 0)]
        assert rays == []
        assert lin == [(1, 0), (0, 1)]


class TestFacetEnumeration:
    def test_segment(self):
        ineqs, eqs = facet_enumeration([(0, 0), (1, 0)], [], [], 2)
        assert eqs == [(0, 0, 1)]              # y = 0
        assert sorted(ineqs) == [(0, 1, 0), (1, -1, 0)]  # x >= 0, 1 - x >= 0

    def test_single_point(self):
        ineqs, eqs = facet_enumeration([(0, 0, 0)], [], [], 3)
        assert ineqs == []
        assert eqs == [(0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]

    def test_empty_generators(self):
        with pytest.raises(InputError):
            facet_enumeration([], [], [], 3)

    def test_dilated_simplex_matches_bruteforce(self, quadratic_poly):
        # the ten degree-2 exponent vectors span twice the unit simplex
        points = quadratic_poly.exponents
        ineqs, eqs = facet_enumeration(points, [], [], 3)
        assert eqs == []
        assert list(ineqs) == brute_force_facets(points)


class TestIntersect:
    def test_ray_clipped_by_cube(self):
        ray = Polyhedron.from_generators([(0, 0, 0)], rays=[(1, 0, 0)])
        box = Polyhedron.from_hrep(cube_hrep())
        seg = intersect_polyhedra(ray, box)
        assert seg.vertices == ((Fraction(0),) * 3,
                                (Fraction(1), Fraction(0), Fraction(0)))
        assert seg.rays == () and seg.lineality == ()

    def test_disjoint_squares(self):
        a = Polyhedron.from_generators([(0, 0), (1, 0), (0, 1), (1, 1)])
        b = a.translate((5, 5))
        assert intersect_polyhedra(a, b).is_empty

    def test_plane_cap_cube(self):
        plane = Polyhedron.from_hrep([], [[0, 1, 0, 0]], 3)
        box = Polyhedron.from_hrep(cube_hrep(2))
        square = intersect_polyhedra(plane, box)
        assert square.dim == 2
        assert len(square.vertices) == 4
        side = max(v[1] for v in square.vertices) - min(v[1] for v in square.vertices)
        assert side == 4

    def test_dimension_mismatch(self):
        a = Polyhedron.from_generators([(0, 0)])
        b = Polyhedron.from_generators([(0, 0, 0)])
        with pytest.raises(InputError):
            intersect_polyhedra(a, b)

    def test_containment_is_exact(self):
        rng = random.Random(7)
        for _ in range(10):
            rows = [[Fraction(rng.randint(-5, 5)) for _ in range(4)] for _ in range(6)]
            box = cube_hrep(4)
            poly = Polyhedron.from_hrep(rows + box, ambient_dim=3)
            if poly.is_empty:
                continue
            for v in poly.vertices:
                for row in rows + box:
                    assert row[0] + sum(a * x for a, x in zip(row[1:], v)) >= 0


class TestFaces:
    def test_cube_faces(self):
        cube = Polyhedron.from_hrep(cube_hrep())
        assert len(faces_of_dim(cube, 0)) == 8
        assert len(faces_of_dim(cube, 1)) == 12
        assert len(faces_of_dim(cube, 2)) == 6
        assert faces_of_dim(cube, 3) == [cube]

    def test_triangle_vertices(self):
        tri = Polyhedron.from_generators([(0, 0), (1, 0), (0, 1)])
        zero_faces = faces_of_dim(tri, 0)
        assert len(zero_faces) == 3
        assert sorted(f.vertices[0] for f in zero_faces) == \
            sorted(tri.vertices)

    def test_square_pyramid_facets_match_bruteforce(self):
        apex = (0, 0, 2)
        base = [(1, 1, 0), (1, -1, 0), (-1, 1, 0), (-1, -1, 0)]
        pyramid = Polyhedron.from_generators(base + [apex])
        facets = faces_of_dim(pyramid, 2)
        assert len(facets) == 5
        # every facet's supporting hyperplane appears in the brute-force list
        supports = brute_force_facets(base + [apex])
        assert sorted(pyramid.inequalities) == supports

    def test_out_of_range(self):
        cube = Polyhedron.from_hrep(cube_hrep())
        with pytest.raises(InputError):
            faces_of_dim(cube, 4)
        with pytest.raises(InputError):
            faces_of_dim(cube, -1)

    def test_face_count_matches_vertex_count(self):
        poly = Polyhedron.from_generators([(0, 0), (3, 0), (0, 3), (2, 2)])
        assert len(faces_of_dim(poly, 0)) == len(poly.vertices)

    def test_unbounded_faces(self):
        quadrant = Polyhedron.from_hrep([[0, 1, 0], [0, 0, 1]])
        edges = faces_of_dim(quadrant, 1)
        assert len(edges) == 2
        assert all(len(e.rays) == 1 for e in edges)
        corners = faces_of_dim(quadrant, 0)
        assert len(corners) == 1 and corners[0].vertices == ((0, 0),)


class TestTranslate:
    def test_matches_recomputation(self):
        poly = Polyhedron.from_generators([(0, 0), (2, 1)], rays=[(1, 0)])
        offset = (Fraction(1, 3), Fraction(-2))
        direct = poly.translate(offset)
        recomputed = Polyhedron.from_generators(
            [tuple(a + b for a, b in zip(v, offset)) for v in poly.vertices],
            rays=poly.rays)
        assert direct == recomputed

    def test_round_trip(self):
        poly = Polyhedron.from_hrep([[1, 1, 0], [1, -1, 0], [1, 0, 1], [1, 0, -1]])
        offset = (Fraction(5, 7), Fraction(-3, 2))
        back = tuple(-x for x in offset)
        assert poly.translate(offset).translate(back) == poly


def random_hrep(rng: random.Random, num_rows: int = 6):
    return [[Fraction(rng.randint(-5, 5)) for _ in range(4)] for _ in range(num_rows)]


class TestDualityRoundTrip:
    def test_fifty_random_hreps(self):
        rng = random.Random(20240917)
        done = 0
        while done < 50:
            rows = random_hrep(rng, rng.randint(3, 8))
            first = vertex_enumeration(rows, [], 3)
            if not first[0]:
                continue  # infeasible sample; draw another
            ineqs, eqs = facet_enumeration(*first, 3)
            second = vertex_enumeration(ineqs, eqs, 3)
            assert first == second
            done += 1

    def test_bounded_roundtrip_includes_hrep(self):
        rng = random.Random(99)
        for _ in range(10):
            pts = [tuple(Fraction(rng.randint(-4, 4)) for _ in range(3))
                   for _ in range(6)]
            poly = Polyhedron.from_generators(pts)
            again = Polyhedron.from_hrep(poly.inequalities, poly.equations, 3)
            assert poly == again
