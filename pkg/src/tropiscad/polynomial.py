"""Tropical polynomials: data type, text parser, evaluation, dehomogenization.

A tropical polynomial is a min (or max) of affine-linear terms
``coefficient + <exponent row, x>``.  The text form mirrors the usual
piecewise-linear notation, e.g. ``min(1+2*w, w+x, x+y)``: inside a term,
``+`` separates summands, an integer factor multiplies a variable
(``2*w`` contributes exponent 2 on ``w``), and ``x^2`` or ``x*x`` are
accepted power spellings.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import ParseError
from .linalg import FracVec, dot

MIN = "min"
MAX = "max"


@dataclass(frozen=True)
class TropicalPolynomial:
    convention: str  # "min" or "max"
    variables: tuple[str, ...]
    exponents: tuple[tuple[int, ...], ...]
    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        if self.convention not in (MIN, MAX):
            raise ValueError(f"convention must be 'min' or 'max', got {self.convention!r}")
        if len(self.exponents) != len(self.coefficients):
            raise ValueError(f"{len(self.exponents)} exponent rows vs "
                             f"{len(self.coefficients)} coefficients")
        if not self.exponents:
            raise ValueError("a tropical polynomial needs at least one term")
        nvars = len(self.variables)
        for row in self.exponents:
            if len(row) != nvars:
                raise ValueError(f"exponent row {row} does not match {nvars} variables")
            if any(e < 0 or not isinstance(e, int) for e in row):
                raise ValueError(f"exponents must be nonnegative integers: {row}")
        if len(set(self.exponents)) != len(self.exponents):
            raise ValueError("duplicate exponent rows (merge before constructing)")

    @property
    def num_terms(self) -> int:
        return len(self.exponents)

    @property
    def num_variables(self) -> int:
        return len(self.variables)

    def row_sums(self) -> tuple[int, ...]:
        return tuple(sum(row) for row in self.exponents)

    @property
    def is_homogeneous(self) -> bool:
        return len(set(self.row_sums())) == 1

    @property
    def degree(self) -> int:
        return max(self.row_sums())

    def to_string(self) -> str:
        """Canonical text form; parsing it back reproduces this polynomial."""
        terms = []
        for row, coeff in zip(self.exponents, self.coefficients):
            parts = []
            if coeff != 0:
                parts.append(str(coeff))
            for name, e in zip(self.variables, row):
                if e == 1:
                    parts.append(name)
                elif e > 1:
                    parts.append(f"{e}*{name}")
            terms.append("+".join(parts) if parts else "0")
        return f"{self.convention}({','.join(terms)})"


def tropical_polynomial(convention: str, variables: Sequence[str],
                        exponents: Sequence[Sequence[int]],
                        coefficients: Sequence) -> TropicalPolynomial:
    """Construct a polynomial, merging repeated exponent rows.

    A repeated row keeps its first position and the tropically dominant
    coefficient (smaller for min, larger for max) -- the other value can
    never attain the optimum.
    """
    merged: dict[tuple[int, ...], Fraction] = {}
    order: list[tuple[int, ...]] = []
    better = min if convention == MIN else max
    for row, coeff in zip(exponents, coefficients, strict=True):
        row = tuple(int(e) for e in row)
        coeff = Fraction(coeff)
        if row in merged:
            merged[row] = better(merged[row], coeff)
        else:
            merged[row] = coeff
            order.append(row)
    return TropicalPolynomial(convention, tuple(variables), tuple(order),
                              tuple(merged[row] for row in order))


def evaluate(poly: TropicalPolynomial, point: Sequence) -> tuple[Fraction, tuple[int, ...]]:
    """Value of the piecewise-linear function and the set of optimal terms.

    ``len(argopt) >= 2`` exactly when the point lies on the tropical
    hypersurface of the polynomial.
    """
    x = tuple(Fraction(c) for c in point)
    if len(x) != poly.num_variables:
        raise ValueError(f"point has {len(x)} coordinates, expected {poly.num_variables}")
    values = [coeff + dot(row, x) for row, coeff in zip(poly.exponents, poly.coefficients)]
    best = min(values) if poly.convention == MIN else max(values)
    argopt = tuple(i for i, v in enumerate(values) if v == best)
    return best, argopt


def dehomogenize(poly: TropicalPolynomial) -> TropicalPolynomial:
    """Drop the first variable of a homogeneous polynomial.

    Setting the first variable to 0 deletes its exponent column; the
    piecewise-linear function on the remaining variables is unchanged on
    the slice, and the row sums must all agree for this to be lossless.
    """
    sums = set(poly.row_sums())
    if len(sums) > 1:
        raise ValueError(f"polynomial is not homogeneous: term degrees {sorted(sums)}")
    if poly.num_variables < 2:
        raise ValueError("need at least two variables to dehomogenize")
    return tropical_polynomial(poly.convention, poly.variables[1:],
                               [row[1:] for row in poly.exponents],
                               poly.coefficients)


# ---------------------------------------------------------------------------
# parser

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<number>\d+/\d+|\d*\.\d+|\d+)|(?P<name>[A-Za-z_]\w*)|(?P<op>[(),+*^-]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            stripped = text[pos:].lstrip()
            at = len(text) - len(stripped)
            raise ParseError(f"unexpected character {stripped[0]!r}", at)
        if m.lastgroup is not None:
            kind = m.lastgroup
            value = m.group(kind)
            tokens.append((kind, value, m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, variables: Sequence[str] | None):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.fixed_vars = variables is not None
        self.variables: list[str] = list(variables) if variables else []

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op: str):
        kind, value, at = self.next()
        if kind != "op" or value != op:
            raise ParseError(f"expected {op!r}, found {value or 'end of input'!r}", at)

    def var_index(self, name: str, at: int) -> int:
        if name in (MIN, MAX):
            raise ParseError("nested min/max is not allowed; "
                             "use a single min(...) or max(...)", at)
        if name in self.variables:
            return self.variables.index(name)
        if self.fixed_vars:
            raise ParseError(f"unknown variable {name!r}", at)
        self.variables.append(name)
        return len(self.variables) - 1

    def parse_factor(self) -> tuple[Fraction | None, dict[int, int]]:
        """One factor: a number, or a variable with an optional ^power."""
        kind, value, at = self.next()
        if kind == "number":
            return Fraction(value), {}
        if kind == "name":
            idx = self.var_index(value, at)
            power = 1
            if self.peek()[:2] == ("op", "^"):
                self.next()
                pkind, pvalue, pat = self.next()
                if pkind == "op" and pvalue == "-":
                    raise ParseError("negative exponent", pat)
                if pkind != "number":
                    raise ParseError("expected an integer exponent", pat)
                frac = Fraction(pvalue)
                if frac.denominator != 1:
                    raise ParseError(f"exponent must be an integer, got {pvalue}", pat)
                power = int(frac)
            return None, {idx: power}
        raise ParseError(f"expected a number or variable, found {value or 'end of input'!r}", at)

    def parse_addend(self, sign: int, at: int) -> tuple[Fraction, dict[int, int]]:
        """A product of factors: scalar part and combined variable powers."""
        scalar = Fraction(1)
        powers: dict[int, int] = {}
        while True:
            num, vars_ = self.parse_factor()
            if num is not None:
                scalar *= num
            for idx, p in vars_.items():
                powers[idx] = powers.get(idx, 0) + p
            if self.peek()[:2] == ("op", "*"):
                self.next()
            else:
                break
        scalar *= sign
        if powers:
            if scalar.denominator != 1 or scalar < 0:
                raise ParseError(
                    f"monomial exponents must be nonnegative integers, got factor {scalar}", at)
        return scalar, powers

    def parse_term(self) -> tuple[Fraction, dict[int, int]]:
        coeff = Fraction(0)
        exps: dict[int, int] = {}
        first = True
        while True:
            sign = 1
            kind, value, at = self.peek()
            if kind == "op" and value in "+-":
                if value == "-":
                    sign = -1
                self.next()
            elif not first:
                break
            first = False
            scalar, powers = self.parse_addend(sign, self.peek()[2])
            if powers:
                for idx, p in powers.items():
                    exps[idx] = exps.get(idx, 0) + int(scalar) * p
            else:
                coeff += scalar
        return coeff, exps


def parse_tropical_polynomial(text: str, variables: Sequence[str] | None = None,
                              convention: str | None = None) -> TropicalPolynomial:
    """Parse ``min(...)``/``max(...)`` text into a tropical polynomial.

    When `variables` is given it fixes the variable order and unknown
    names are rejected; otherwise variables are collected in order of
    first appearance.  A `convention` that contradicts the min/max
    keyword is an error; leave it None to infer from the keyword.
    """
    parser = _Parser(text, variables)
    kind, keyword, at = parser.next()
    if kind != "name" or keyword not in (MIN, MAX):
        raise ParseError("expected 'min' or 'max'", at)
    if convention is not None and convention != keyword:
        raise ParseError(
            f"polynomial uses {keyword!r} but convention {convention!r} was requested", at)
    parser.expect_op("(")
    if parser.peek()[:2] == ("op", ")"):
        raise ParseError("empty term list", parser.peek()[2])
    terms = [parser.parse_term()]
    while parser.peek()[:2] == ("op", ","):
        parser.next()
        terms.append(parser.parse_term())
    parser.expect_op(")")
    kind, value, at = parser.next()
    if kind != "end":
        raise ParseError(f"unexpected trailing input {value!r}", at)

    names = tuple(parser.variables)
    exponents = []
    coefficients = []
    for coeff, exps in terms:
        row = tuple(exps.get(i, 0) for i in range(len(names)))
        exponents.append(row)
        coefficients.append(coeff)
    return tropical_polynomial(keyword, names, exponents, coefficients)
