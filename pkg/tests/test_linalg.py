from fractions import Fraction

import pytest

from tropiscad.linalg import (hnf, integer_kernel, lattice_index,
                              lattice_intersection, primitive, rank, saturate,
                              solve_exact, to_integer)


def test_primitive():
    assert primitive((2, 4, -6)) == (1, 2, -3)
    assert primitive((0, 0)) == (0, 0)
    assert primitive((-3,)) == (-1,)  # scaled down, direction preserved
    assert primitive((-2, 4)) == (-1, 2)


def test_to_integer_clears_denominators():
    assert to_integer((Fraction(1, 2), Fraction(1, 3))) == (3, 2)
    assert to_integer((Fraction(-1, 4), Fraction(0))) == (-1, 0)


def test_rank():
    assert rank([[1, 0], [0, 1]]) == 2
    assert rank([[1, 2], [2, 4]]) == 1
    assert rank([]) == 0
    assert rank([[Fraction(1, 2), 1], [1, 2]]) == 1


def test_solve_exact():
    status, sol = solve_exact([[2, 0], [0, 4]], [1, 1])
    assert status == "unique" and sol == (Fraction(1, 2), Fraction(1, 4))
    status, _ = solve_exact([[1, 1], [1, 1]], [0, 1])
    assert status == "none"
    status, _ = solve_exact([[1, 1]], [3])
    assert status == "many"


def test_hnf_canonical():
    h = hnf([[2, 4, 4], [-6, 6, 12], [10, 4, 16]], 3)
    # pivots positive, entries above reduced
    assert h == hnf(h, 3)
    for i, row in enumerate(h):
        pivot_col = next(j for j, x in enumerate(row) if x)
        assert row[pivot_col] > 0
        for upper in h[:i]:
            assert 0 <= upper[pivot_col] < row[pivot_col]


def test_integer_kernel_is_saturated():
    kernel = integer_kernel([[1, 1, 1]], 3)
    assert len(kernel) == 2
    for row in kernel:
        assert sum(row) == 0
    # saturation recovers multiples-free bases
    assert saturate([[2, 2, 0]], 3) == [(1, 1, 0)]
    assert saturate([[2, 0, 0], [0, 3, 0]], 3) == [(1, 0, 0), (0, 1, 0)]


def test_lattice_index():
    assert lattice_index([[1, 0], [0, 1]], 2) == 1
    assert lattice_index([[2, 0], [0, 3]], 2) == 6
    assert lattice_index([[1, 1], [1, -1]], 2) == 2
    with pytest.raises(ValueError):
        lattice_index([[1, 0]], 2)


def test_lattice_intersection():
    a = [(1, 0, 0), (0, 1, 0)]
    b = [(0, 1, 0), (0, 0, 1)]
    assert lattice_intersection(a, b, 3) == [(0, 1, 0)]
    assert lattice_intersection(a, [(0, 0, 1)], 3) == []
