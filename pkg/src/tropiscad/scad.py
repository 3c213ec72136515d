"""Deterministic OpenSCAD generation for the three printable scene kinds.

A scene is solidified the way the original workflow does it: every
maximal cell becomes the convex hull of small spheres placed at its
vertices, each complex is wrapped in its color, and the whole model in a
global scale.  The parameter block at the top of the file uses the
familiar variable names (colorSurface, thicknessCurve, ...) so a file
can be hand-tuned after export.

The thickness parameters are sphere *radii*: the slab thickness of a
solidified 2-cell is twice the parameter value.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .complexes import PolyhedralComplex
from .errors import InputError

Color = str | tuple[Fraction, Fraction, Fraction]


class SceneKind(Enum):
    SURFACE = "surface"
    CURVE_WITH_FRAME = "curve-with-frame"
    SURFACE_AND_CURVE = "surface-and-curve"


# per-scene default thicknesses, matching the classic template files
_DEFAULT_THICKNESS = {
    SceneKind.SURFACE: {"surface": Fraction(1, 20)},
    SceneKind.CURVE_WITH_FRAME: {"frame": Fraction(1, 20), "curve": Fraction(1, 20)},
    SceneKind.SURFACE_AND_CURVE: {"surface": Fraction(1, 100), "curve": Fraction(1, 10)},
}

DEFAULT_CURVE_COLOR = (Fraction(83, 100), Fraction(15, 100), Fraction(27, 100))


def _to_color(value) -> Color:
    if isinstance(value, str):
        return value
    rgb = tuple(Fraction(x) for x in value)
    if len(rgb) != 3:
        raise InputError(f"RGB color needs 3 components, got {len(rgb)}")
    for comp in rgb:
        if not 0 <= comp <= 1:
            raise InputError(f"RGB components must lie in [0, 1], got {comp}")
    return rgb


@dataclass(frozen=True)
class ScadParams:
    """Export parameters; thicknesses left as None pick the per-scene default."""
    color_surface: Color = "SlateGray"
    color_curve: Color = DEFAULT_CURVE_COLOR
    color_frame: Color = "SlateGray"
    scaling_factor: Fraction = Fraction(1)
    thickness_surface: Fraction | None = None
    thickness_curve: Fraction | None = None
    thickness_frame: Fraction | None = None
    sphere_resolution: int = 24

    def resolved_thickness(self, role: str, kind: SceneKind) -> Fraction:
        explicit = getattr(self, f"thickness_{role}")
        value = Fraction(explicit) if explicit is not None else _DEFAULT_THICKNESS[kind][role]
        if value <= 0:
            raise InputError(f"thickness_{role} must be positive, got {value}")
        return value

    def validate(self) -> None:
        if Fraction(self.scaling_factor) <= 0:
            raise InputError(f"scaling factor must be positive, got {self.scaling_factor}")
        if self.sphere_resolution < 3:
            raise InputError(f"sphere resolution must be at least 3, "
                             f"got {self.sphere_resolution}")
        for attr in ("color_surface", "color_curve", "color_frame"):
            _to_color(getattr(self, attr))


@dataclass(frozen=True)
class Scene:
    """What to print.

    * SURFACE: primary = the surface, no secondary.
    * CURVE_WITH_FRAME: primary = the curve, secondary = the frame.
    * SURFACE_AND_CURVE: primary = the surface, secondary = the curve.
    All complexes must be bounded.
    """
    kind: SceneKind
    primary: PolyhedralComplex
    secondary: PolyhedralComplex | None = None

    def parts(self) -> list[tuple[str, PolyhedralComplex]]:
        """(role, complex) pairs in emission order."""
        if self.kind is SceneKind.SURFACE:
            if self.secondary is not None:
                raise InputError("a surface-only scene takes no second complex")
            return [("surface", self.primary)]
        if self.secondary is None:
            raise InputError(f"a {self.kind.value} scene needs two complexes")
        if self.kind is SceneKind.CURVE_WITH_FRAME:
            return [("frame", self.secondary), ("curve", self.primary)]
        return [("surface", self.primary), ("curve", self.secondary)]

    def curve_complex(self) -> PolyhedralComplex | None:
        if self.kind is SceneKind.CURVE_WITH_FRAME:
            return self.primary
        if self.kind is SceneKind.SURFACE_AND_CURVE:
            return self.secondary
        return None


def format_number(value: Fraction | int) -> str:
    """Exact OpenSCAD literal for a rational number.

    Uses plain decimal notation when the denominator divides a power of
    ten (up to 12 fractional digits) and an exact quotient `a/b`
    otherwise, so no coordinate is silently rounded.
    """
    q = Fraction(value)
    if q.denominator == 1:
        return str(q.numerator)
    den = q.denominator
    twos = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    fives = 0
    while den % 5 == 0:
        den //= 5
        fives += 1
    digits = max(twos, fives)
    if den != 1 or digits > 12:
        return f"{q.numerator}/{q.denominator}"
    scaled = abs(q.numerator) * 10 ** digits // q.denominator
    text = str(scaled).rjust(digits + 1, "0")
    whole, frac = text[:-digits], text[-digits:].rstrip("0")
    sign = "-" if q.numerator < 0 else ""
    return f"{sign}{whole}.{frac}" if frac else f"{sign}{whole}"


def _format_color(color: Color) -> str:
    if isinstance(color, str):
        return f'"{color}"'
    return "[" + ", ".join(format_number(c) for c in color) + "]"


_PARAM_COMMENT = {
    "colorSurface": "color of surface",
    "colorCurve": "color of curve",
    "colorFrame": "color of frame",
    "scalingFactor": "global scaling factor",
    "thicknessSurface": "thickness of surface",
    "thicknessCurve": "thickness of curve",
    "thicknessFrame": "thickness of frame",
}


def _parameter_block(scene: Scene, params: ScadParams) -> list[str]:
    kind = scene.kind
    lines = []

    def assign(name: str, value: str):
        lines.append(f"{name} = {value}; // {_PARAM_COMMENT[name]}")

    if kind is SceneKind.SURFACE:
        assign("colorSurface", _format_color(_to_color(params.color_surface)))
    elif kind is SceneKind.CURVE_WITH_FRAME:
        assign("colorFrame", _format_color(_to_color(params.color_frame)))
        assign("colorCurve", _format_color(_to_color(params.color_curve)))
    else:
        assign("colorSurface", _format_color(_to_color(params.color_surface)))
        assign("colorCurve", _format_color(_to_color(params.color_curve)))
    assign("scalingFactor", format_number(Fraction(params.scaling_factor)))
    for role in [r for r, _ in scene.parts()]:
        name = "thickness" + role.capitalize()
        assign(name, format_number(params.resolved_thickness(role, kind)))
    return lines


def emit_scad(scene: Scene, params: ScadParams) -> str:
    """Render a scene as deterministic OpenSCAD source text.

    One named module per maximal cell (a hull of vertex spheres), grouped
    by complex color and unioned under the global scale.  Identical
    scene+params input produces byte-identical output.
    """
    params.validate()
    parts = scene.parts()
    curve = scene.curve_complex()
    if curve is not None and (curve.is_empty or curve.dim != 1):
        raise InputError("the curve of this scene kind must be 1-dimensional")
    total_cells = 0
    for role, complex_ in parts:
        if complex_.is_empty:
            raise InputError(f"{role} complex has no maximal cells: nothing to print")
        if not complex_.is_bounded:
            raise InputError(f"{role} complex is unbounded; clip it to a bounding box first")
        for i in range(complex_.num_cells):
            if complex_.cell_polyhedron(i).dim > 2:
                raise InputError(f"{role} complex has a cell of dimension > 2; "
                                 "printable scenes contain only cells of dimension <= 2")
        total_cells += complex_.num_cells

    out: list[str] = []
    out.append(f"// tropiscad: {scene.kind.value} scene")
    counts = ", ".join(
        f"{c.num_cells} {role} cell" + ("s" if c.num_cells != 1 else "")
        for role, c in parts)
    out.append(f"// {counts}")
    out.append("")
    out.extend(_parameter_block(scene, params))
    out.append("")
    out.append(f"$fn = {params.sphere_resolution}; // sphere resolution")
    out.append("")

    module_names: dict[str, list[str]] = {role: [] for role, _ in parts}
    index = 0
    for role, complex_ in parts:
        thickness_var = "thickness" + role.capitalize()
        for ci in range(complex_.num_cells):
            name = f"cell{index}"
            index += 1
            module_names[role].append(name)
            out.append(f"module {name}() {{")
            out.append("    hull() {")
            cell = complex_.maximal_cells[ci]
            for j in cell:
                point = complex_.points[j]
                coords = ", ".join(format_number(c) for c in point.value)
                out.append(f"        translate([{coords}]) sphere({thickness_var});")
            out.append("    }")
            out.append("}")
            out.append("")

    out.append("scale(scalingFactor) {")
    for role, _ in parts:
        color_var = "color" + role.capitalize()
        out.append(f"    color({color_var}) {{")
        for name in module_names[role]:
            out.append(f"        {name}();")
        out.append("    }")
    out.append("}")
    out.append("")
    return "\n".join(out)


def print_feasibility_check(scene: Scene, params: ScadParams,
                            target_size_mm) -> list[str]:
    """Warn about walls that would print thinner than the 2 mm guideline.

    The guideline is 2 mm at a 100 mm print and scales proportionally
    with the target size.  Thickness parameters are sphere radii, so the
    printed wall is twice the parameter after scaling the model's largest
    axis extent to `target_size_mm`.
    """
    target = Fraction(target_size_mm)
    if target <= 0:
        raise InputError(f"target size must be positive, got {target}")
    lo: list[Fraction] = []
    hi: list[Fraction] = []
    parts = scene.parts()
    for _, complex_ in parts:
        for v in complex_.vertex_positions():
            for i, c in enumerate(v):
                if i >= len(lo):
                    lo.append(c)
                    hi.append(c)
                else:
                    lo[i] = min(lo[i], c)
                    hi[i] = max(hi[i], c)
    extent = max((h - l for l, h in zip(lo, hi)), default=Fraction(0))
    if extent <= 0:
        return []
    threshold = 2 * target / 100
    warnings = []
    for role, _ in parts:
        thickness = params.resolved_thickness(role, scene.kind)
        physical = 2 * thickness * target / extent
        if physical < threshold:
            warnings.append(
                f"{role}: printed wall thickness {format_number(physical)} mm at a "
                f"{format_number(target)} mm print is below the "
                f"{format_number(threshold)} mm guideline")
    return warnings
