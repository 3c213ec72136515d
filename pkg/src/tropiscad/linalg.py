"""Exact linear algebra over the integers and rationals.

All geometric predicates downstream must be exact, so everything here
works on ``int`` and ``fractions.Fraction`` only.  Integer vectors are
kept primitive (content 1) wherever a scaling is free, which keeps the
numbers small inside the double description iterations.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

IntVec = tuple[int, ...]
FracVec = tuple[Fraction, ...]


def dot(a: Sequence, b: Sequence):
    if len(a) != len(b):
        raise ValueError(f"dot of vectors with lengths {len(a)} and {len(b)}")
    return sum(x * y for x, y in zip(a, b))


def vadd(a: Sequence, b: Sequence) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Sequence, b: Sequence) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def vscale(a: Sequence, s) -> tuple:
    return tuple(s * x for x in a)


def is_zero_vec(v: Sequence) -> bool:
    return all(x == 0 for x in v)


def primitive(v: Sequence[int]) -> IntVec:
    """Divide an integer vector by its content; zero stays zero."""
    g = 0
    for x in v:
        g = gcd(g, x)
    if g <= 1:
        return tuple(v)
    return tuple(x // g for x in v)


def to_integer(v: Sequence) -> IntVec:
    """Clear denominators of a rational vector, returning a primitive
    integer vector with the same direction."""
    mult = 1
    for x in v:
        f = Fraction(x)
        mult = lcm(mult, f.denominator)
    return primitive(tuple(int(Fraction(x) * mult) for x in v))


def frac_vec(v: Sequence) -> FracVec:
    return tuple(Fraction(x) for x in v)


def rank(rows: Iterable[Sequence]) -> int:
    """Rank of a matrix with int/Fraction entries, by exact elimination."""
    mat = [[Fraction(x) for x in row] for row in rows]
    if not mat:
        return 0
    ncols = len(mat[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        for i in range(r + 1, len(mat)):
            if mat[i][c] != 0:
                f = mat[i][c] / mat[r][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        r += 1
        if r == len(mat):
            break
    return r


def solve_exact(a_rows: Sequence[Sequence], b: Sequence) -> tuple[str, FracVec | None]:
    """Solve A x = b exactly.

    Returns ("unique", x), ("none", None) for inconsistent systems or
    ("many", None) when the solution space is positive-dimensional.
    """
    mat = [[Fraction(x) for x in row] + [Fraction(rhs)] for row, rhs in zip(a_rows, b)]
    if not mat:
        return ("many", None)
    ncols = len(mat[0]) - 1
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        mat[r] = [x / mat[r][c] for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    for i in range(r, len(mat)):
        if mat[i][ncols] != 0:
            return ("none", None)
    if len(pivots) < ncols:
        return ("many", None)
    sol = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        sol[c] = mat[i][ncols]
    return ("unique", tuple(sol))


def hnf(rows: Iterable[Sequence[int]], ncols: int) -> list[IntVec]:
    """Row-style Hermite normal form of an integer matrix.

    Returns only the nonzero rows.  Pivots are positive, entries above a
    pivot are reduced into [0, pivot), and pivot columns strictly increase,
    so the result is a canonical basis of the row lattice.
    """
    mat = [list(map(int, row)) for row in rows]
    mat = [row for row in mat if any(row)]
    row_idx = 0
    for col in range(ncols):
        if row_idx == len(mat):
            break
        live = [i for i in range(row_idx, len(mat)) if mat[i][col]]
        if not live:
            continue
        while len(live) > 1:
            live.sort(key=lambda i: abs(mat[i][col]))
            p = live[0]
            for i in live[1:]:
                q = mat[i][col] // mat[p][col]
                mat[i] = [x - q * y for x, y in zip(mat[i], mat[p])]
            live = [i for i in live if mat[i][col]]
        p = live[0]
        mat[row_idx], mat[p] = mat[p], mat[row_idx]
        if mat[row_idx][col] < 0:
            mat[row_idx] = [-x for x in mat[row_idx]]
        piv = mat[row_idx][col]
        for i in range(row_idx):
            q = mat[i][col] // piv
            if q:
                mat[i] = [x - q * y for x, y in zip(mat[i], mat[row_idx])]
        row_idx += 1
    return [tuple(row) for row in mat[:row_idx]]


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int) -> list[IntVec]:
    """Basis of the saturated lattice {x in Z^ncols : r . x = 0 for all rows r}."""
    rows = [tuple(map(int, r)) for r in rows]
    m = len(rows)
    if m == 0:
        return [tuple(1 if j == i else 0 for j in range(ncols)) for i in range(ncols)]
    aug = []
    for j in range(ncols):
        aug.append([rows[i][j] for i in range(m)] + [1 if t == j else 0 for t in range(ncols)])
    reduced = hnf(aug, m + ncols)
    kernel = [row[m:] for row in reduced if not any(row[:m])]
    return hnf(kernel, ncols)


def saturate(rows: Sequence[Sequence[int]], ncols: int) -> list[IntVec]:
    """Canonical basis of (Q-span of rows) intersected with Z^ncols."""
    return integer_kernel(integer_kernel(rows, ncols), ncols)


def lattice_index(rows: Sequence[Sequence[int]], ncols: int) -> int:
    """Index of the lattice spanned by the rows inside Z^ncols.

    The rows must span a finite-index sublattice (full column rank).
    """
    h = hnf(rows, ncols)
    if len(h) != ncols:
        raise ValueError("lattice does not have full rank")
    idx = 1
    for i in range(ncols):
        idx *= h[i][i]
    return idx


def lattice_intersection(a_rows: Sequence[Sequence[int]], b_rows: Sequence[Sequence[int]],
                         ncols: int) -> list[IntVec]:
    """Canonical basis of span(a) intersect span(b) intersect Z^ncols."""
    constraints = integer_kernel(a_rows, ncols) + integer_kernel(b_rows, ncols)
    return integer_kernel(constraints, ncols)
