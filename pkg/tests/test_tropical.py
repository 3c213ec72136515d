import random
from collections import Counter
from fractions import Fraction

import pytest

from tropiscad.complexes import HPoint, PolyhedralComplex
from tropiscad.errors import InputError
from tropiscad.polynomial import (dehomogenize, evaluate,
                                  parse_tropical_polynomial, tropical_polynomial)
from tropiscad.tropical import (check_balancing, hypersurface,
                                regular_subdivision, stable_intersection)

from .oracles import brute_force_subdivision, displaced_ray_weights
from .sampling import (geometric_membership, point_on_complex, random_min_polynomial,
                       random_point)

# the quadratic's subdivision: four corner simplices and a central octahedron
QUADRATIC_SUBDIVISION = (
    (0, 1, 2, 3), (1, 2, 3, 4, 5, 6), (1, 4, 5, 7), (2, 4, 6, 8), (3, 5, 6, 9))


def ray_weight_by_direction(complex_: PolyhedralComplex) -> Counter:
    totals: Counter = Counter()
    for i, cell in enumerate(complex_.maximal_cells):
        for j in cell:
            point = complex_.points[j]
            if not point.is_vertex:
                direction = tuple(int(x) for x in point.value)
                totals[direction] += complex_.cell_weight(i)
    return totals


class TestRegularSubdivision:
    def test_flat_lift_gives_single_cell(self):
        p = parse_tropical_polynomial("min(x, y, 0)", ["x", "y"])
        sub = regular_subdivision(p)
        assert sub.cells == ((0, 1, 2),)

    def test_broken_segment(self):
        p = tropical_polynomial("min", ("x",), [(0,), (1,), (2,)], [0, -1, 0])
        sub = regular_subdivision(p)
        assert sub.cells == ((0, 1), (1, 2))

    def test_quadratic_subdivision_frozen(self, quadratic_poly):
        sub = regular_subdivision(quadratic_poly)
        assert sub.cells == QUADRATIC_SUBDIVISION

    def test_quadratic_matches_bruteforce(self, quadratic_poly):
        assert regular_subdivision(quadratic_poly).cells == \
            brute_force_subdivision(quadratic_poly)

    def test_max_convention_matches_bruteforce(self):
        p = tropical_polynomial("max", ("x", "y"),
                                [(0, 0), (1, 0), (0, 1), (1, 1)], [0, 1, 1, 1])
        assert regular_subdivision(p).cells == brute_force_subdivision(p)

    def test_random_polynomials_match_bruteforce(self):
        rng = random.Random(4242)
        for _ in range(10):
            poly = random_min_polynomial(rng)
            assert regular_subdivision(poly).cells == brute_force_subdivision(poly)


class TestHypersurface:
    def test_tropical_line(self):
        p = parse_tropical_polynomial("min(x, y, 0)", ["x", "y"])
        line = hypersurface(p)
        assert line.dim == 1
        verts = [tuple(pt.value) for pt in line.points if pt.is_vertex]
        rays = sorted(tuple(int(x) for x in pt.value)
                      for pt in line.points if not pt.is_vertex)
        assert verts == [(0, 0)]
        assert rays == [(-1, -1), (0, 1), (1, 0)]
        assert line.weights == (1, 1, 1)

    def test_single_monomial_is_empty(self):
        p = parse_tropical_polynomial("min(x)", ["x", "y"])
        assert hypersurface(p).is_empty

    def test_plane_with_lineality(self):
        p = dehomogenize(parse_tropical_polynomial("max(y,z,w)", ["w", "x", "y", "z"]))
        plane = hypersurface(p)
        assert plane.num_cells == 3
        assert plane.lineality == ((1, 0, 0),)
        assert plane.is_pure() and plane.dim == 2
        # the lineality direction is the missing variable's axis
        rng = random.Random(11)
        for _ in range(50):
            point = point_on_complex(rng, plane)
            _, argopt = evaluate(p, point)
            assert len(argopt) >= 2

    def test_quadratic_structure(self, quadratic_poly):
        surf = hypersurface(quadratic_poly)
        assert surf.num_cells == 24
        assert surf.is_pure() and surf.dim == 2
        assert set(surf.weights) == {1}
        assert surf.components() == 1

    def test_quadratic_agrees_with_evaluate_oracle(self, quadratic_poly):
        surf = hypersurface(quadratic_poly)
        rng = random.Random(2311)
        for _ in range(250):
            on_point = point_on_complex(rng, surf)
            assert len(evaluate(quadratic_poly, on_point)[1]) >= 2
            assert geometric_membership(surf, on_point)
            anywhere = random_point(rng, 3)
            assert geometric_membership(surf, anywhere) == \
                (len(evaluate(quadratic_poly, anywhere)[1]) >= 2)

    def test_lattice_length_weights(self):
        # min(0, 2x) has a double point at x = 0
        p = tropical_polynomial("min", ("x", "y"), [(0, 0), (2, 0)], [0, 0])
        surf = hypersurface(p)
        assert surf.weights == (2,)

    def test_convention_symmetry(self):
        rng = random.Random(515)
        for _ in range(5):
            poly = random_min_polynomial(rng)
            flipped = tropical_polynomial("max", poly.variables, poly.exponents,
                                          [-c for c in poly.coefficients])
            h_min = hypersurface(poly)
            h_max = hypersurface(flipped)
            mirrored_vertices = sorted(
                tuple(-c for c in pt.value)
                for pt in h_max.points if pt.is_vertex)
            mirrored_rays = sorted(
                tuple(-int(c) for c in pt.value)
                for pt in h_max.points if not pt.is_vertex)
            assert mirrored_vertices == sorted(
                tuple(pt.value) for pt in h_min.points if pt.is_vertex)
            assert mirrored_rays == sorted(
                tuple(int(c) for c in pt.value)
                for pt in h_min.points if not pt.is_vertex)


class TestBalancing:
    def test_tropical_line_balanced(self):
        line = hypersurface(parse_tropical_polynomial("min(x, y, 0)", ["x", "y"]))
        report = check_balancing(line)
        assert report.balanced and report.violations == ()

    def test_weight_change_breaks_balance(self):
        line = hypersurface(parse_tropical_polynomial("min(x, y, 0)", ["x", "y"]))
        broken = PolyhedralComplex(line.ambient_dim, line.points, line.lineality,
                                   line.maximal_cells, (2, 1, 1))
        report = check_balancing(broken)
        assert not report.balanced
        assert len(report.violations) == 1

    def test_quadratic_balanced(self, quadratic_poly):
        assert check_balancing(hypersurface(quadratic_poly)).balanced

    def test_random_hypersurfaces_balanced(self):
        rng = random.Random(808)
        for _ in range(8):
            poly = random_min_polynomial(rng)
            surf = hypersurface(poly)
            if surf.is_empty:
                continue
            assert check_balancing(surf).balanced, poly.to_string()

    def test_rejects_impure(self):
        # a segment plus an isolated vertex is not pure-dimensional
        mixed = PolyhedralComplex(
            2,
            (HPoint.vertex((0, 0)), HPoint.vertex((1, 0)), HPoint.vertex((5, 5))),
            (), ((0, 1), (2,)), (1, 1))
        with pytest.raises(InputError):
            check_balancing(mixed)


class TestStableIntersection:
    def test_transverse_planes(self):
        a = hypersurface(parse_tropical_polynomial("min(x, 0)", ["x", "y", "z"]))
        b = hypersurface(parse_tropical_polynomial("min(y, 0)", ["x", "y", "z"]))
        line = stable_intersection(a, b)
        assert line.num_cells == 1
        assert line.weights == (1,)
        assert line.lineality == ((0, 0, 1),)
        assert [tuple(p.value) for p in line.points] == [(0, 0, 0)]

    def test_symmetry(self, quadratic_poly):
        plane = hypersurface(parse_tropical_polynomial("min(x, y, z, 0)",
                                                       ["x", "y", "z"]))
        quad = hypersurface(quadratic_poly)
        assert stable_intersection(plane, quad) == stable_intersection(quad, plane)

    def test_self_intersection_of_plane(self):
        plane = hypersurface(parse_tropical_polynomial("min(x, y, z, 0)",
                                                       ["x", "y", "z"]))
        curve = stable_intersection(plane, plane)
        assert curve.dim == 1 and curve.is_pure()
        assert check_balancing(curve).balanced
        # a degree-1 curve: unit weight rays toward each axis and the
        # negative diagonal
        assert ray_weight_by_direction(curve) == Counter({
            (1, 0, 0): 1, (0, 1, 0): 1, (0, 0, 1): 1, (-1, -1, -1): 1})

    def test_self_intersection_matches_displaced_oracle(self):
        plane = hypersurface(parse_tropical_polynomial("min(x, y, z, 0)",
                                                       ["x", "y", "z"]))
        curve = stable_intersection(plane, plane)
        oracle = displaced_ray_weights(plane, plane, (101 ** 2, 101, 1),
                                       Fraction(1, 2 ** 20))
        assert ray_weight_by_direction(curve) == oracle

    def test_plane_line_point(self):
        # plane x=0 against the 1-dimensional stable self-intersection
        plane = hypersurface(parse_tropical_polynomial("min(x, y, z, 0)",
                                                       ["x", "y", "z"]))
        line = stable_intersection(plane, plane)
        point = stable_intersection(plane, line)
        assert point.dim == 0
        assert sum(point.weights) == 1  # Bezout: 1 * 1

    def test_negative_expected_dimension(self):
        a = hypersurface(parse_tropical_polynomial("min(x, 0)", ["x", "y", "z"]))
        line = stable_intersection(a, a)  # 1-dimensional
        nothing = stable_intersection(line, line)  # expected dim -1
        assert nothing.is_empty

    def test_dimension_mismatch(self):
        a = hypersurface(parse_tropical_polynomial("min(x, 0)", ["x", "y"]))
        b = hypersurface(parse_tropical_polynomial("min(x, 0)", ["x", "y", "z"]))
        with pytest.raises(InputError):
            stable_intersection(a, b)


class TestRandomSuite:
    def test_membership_and_balancing(self):
        rng = random.Random(160)
        for _ in range(6):
            poly = random_min_polynomial(rng)
            surf = hypersurface(poly)
            if surf.is_empty:
                continue
            assert check_balancing(surf).balanced
            for _ in range(40):
                point = point_on_complex(rng, surf)
                assert len(evaluate(poly, point)[1]) >= 2
                anywhere = random_point(rng, 3)
                assert geometric_membership(surf, anywhere) == \
                    (len(evaluate(poly, anywhere)[1]) >= 2)
