"""Shared fixtures: bundled example data used across the test suite."""
from __future__ import annotations

import json
import os
from fractions import Fraction

import pytest

from tropiscad.polynomial import TropicalPolynomial, dehomogenize, tropical_polynomial

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")
GOLDEN_DIR = os.path.join(os.path.dirname(__file__), "goldens")

# The homogeneous quadratic surface used throughout:
# min over the ten degree-2 monomials in w, x, y, z, with coefficient 1 on
# the squares and 0 on the cross terms.
QUADRATIC_EXPONENTS = [
    [2, 0, 0, 0], [1, 1, 0, 0], [1, 0, 1, 0], [1, 0, 0, 1], [0, 1, 1, 0],
    [0, 1, 0, 1], [0, 0, 1, 1], [0, 2, 0, 0], [0, 0, 2, 0], [0, 0, 0, 2],
]
QUADRATIC_COEFFICIENTS = [1, 0, 0, 0, 0, 0, 0, 1, 1, 1]

# Quadric and cubic whose stable intersection is a sextic space curve.
SEXTIC_QUADRIC_EXPONENTS = [
    [2, 0, 0, 0], [0, 2, 0, 0], [0, 0, 2, 0], [0, 0, 0, 2], [1, 1, 0, 0],
    [1, 0, 1, 0], [1, 0, 0, 1], [0, 1, 1, 0], [0, 1, 0, 1], [0, 0, 1, 1],
]
SEXTIC_QUADRIC_COEFFICIENTS = [
    "1", "-1/4", "-2/4", "-3/4", "-3/4", "-4/4", "-5/4", "2/4", "0", "-2/4",
]
SEXTIC_CUBIC_EXPONENTS = [
    [3, 0, 0, 0], [0, 3, 0, 0], [0, 0, 3, 0], [0, 0, 0, 3],
    [1, 1, 1, 0], [1, 1, 0, 1], [1, 0, 1, 1], [0, 1, 1, 1],
    [2, 1, 0, 0], [2, 0, 1, 0], [2, 0, 0, 1],
    [1, 2, 0, 0], [1, 0, 2, 0], [1, 0, 0, 2],
    [0, 2, 1, 0], [0, 2, 0, 1], [0, 1, 2, 0],
    [0, 1, 0, 2], [0, 0, 2, 1], [0, 0, 1, 2],
]
SEXTIC_CUBIC_COEFFICIENTS = [3, 3, 3, 3, 0, 0, 0, 0,
                             1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1]

HOMOGENEOUS_VARS = ("w", "x", "y", "z")


def load_fixture(name: str) -> dict:
    with open(os.path.join(DATA_DIR, name), "r", encoding="utf-8") as handle:
        return json.load(handle)


@pytest.fixture(scope="session")
def quadratic_poly() -> TropicalPolynomial:
    """The trivariate quadratic (dehomogenized)."""
    hom = tropical_polynomial("min", HOMOGENEOUS_VARS,
                              QUADRATIC_EXPONENTS, QUADRATIC_COEFFICIENTS)
    return dehomogenize(hom)


@pytest.fixture(scope="session")
def sextic_quadric_poly() -> TropicalPolynomial:
    hom = tropical_polynomial("min", HOMOGENEOUS_VARS, SEXTIC_QUADRIC_EXPONENTS,
                              [Fraction(c) for c in SEXTIC_QUADRIC_COEFFICIENTS])
    return dehomogenize(hom)


@pytest.fixture(scope="session")
def sextic_cubic_poly() -> TropicalPolynomial:
    hom = tropical_polynomial("min", HOMOGENEOUS_VARS, SEXTIC_CUBIC_EXPONENTS,
                              SEXTIC_CUBIC_COEFFICIENTS)
    return dehomogenize(hom)


@pytest.fixture(scope="session")
def genus2_obj() -> dict:
    return load_fixture("genus2_cubic_curve.json")


@pytest.fixture(scope="session")
def quartic_obj() -> dict:
    return load_fixture("quartic_curve_on_plane.json")
