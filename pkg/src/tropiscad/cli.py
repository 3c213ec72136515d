"""Command-line frontend: surface / curve / surface-and-curve / inspect.

Mirrors the classic template workflows: parse or load the inputs, build
the tropical geometry, clip it to a bounding box and write a solidified
OpenSCAD file.  Output files are written via a temporary file and
renamed, so a failing run never leaves a partial file behind.
"""
from __future__ import annotations

import argparse
import os
import sys
import tempfile
from fractions import Fraction

from . import jsonio
from .bounding import BoundingBox, frame_for_curve, generate_bounding_box, \
    intersect_with_bounding_box
from .complexes import PolyhedralComplex, graph_stats
from .errors import InputError
from .polynomial import TropicalPolynomial, dehomogenize, evaluate, \
    parse_tropical_polynomial
from .scad import Scene, SceneKind, ScadParams, emit_scad, print_feasibility_check
from .tropical import check_balancing, hypersurface, stable_intersection

DEFAULT_TARGET_SIZE_MM = Fraction(100)


def _fraction_arg(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _color_arg(text: str):
    if "," in text:
        parts = text.split(",")
        if len(parts) != 3:
            raise argparse.ArgumentTypeError(
                f"RGB colors need three comma-separated components: {text!r}")
        return tuple(_fraction_arg(p) for p in parts)
    return text


def _add_scad_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--color-surface", type=_color_arg, default=None,
                     help="surface color (HTML name or r,g,b in [0,1])")
    sub.add_argument("--color-curve", type=_color_arg, default=None)
    sub.add_argument("--color-frame", type=_color_arg, default=None)
    sub.add_argument("--thickness-surface", type=_fraction_arg, default=None)
    sub.add_argument("--thickness-curve", type=_fraction_arg, default=None)
    sub.add_argument("--thickness-frame", type=_fraction_arg, default=None)
    sub.add_argument("--scale", type=_fraction_arg, default=None,
                     help="global scaling factor")
    sub.add_argument("--fn", type=int, default=None, help="sphere resolution ($fn)")
    sub.add_argument("--target-size-mm", type=_fraction_arg, default=None,
                     help="intended print size for the thickness feasibility check")
    sub.add_argument("--out", required=True, help="output .scad path")
    sub.add_argument("--no-clobber", action="store_true",
                     help="refuse to overwrite an existing output file")


def _add_box_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--margin", type=_fraction_arg, default=None,
                     help="bounding box margin on every axis (default 1)")
    sub.add_argument("--margins", default=None,
                     help="comma-separated per-axis margins, e.g. 3,4,5")
    sub.add_argument("--box", default=None,
                     help="JSON polytope to use as the bounding box "
                          "(need not be a cuboid)")


def _scad_params(args) -> ScadParams:
    params = ScadParams()
    overrides = {}
    for attr, flag in [("color_surface", "color_surface"),
                       ("color_curve", "color_curve"),
                       ("color_frame", "color_frame"),
                       ("thickness_surface", "thickness_surface"),
                       ("thickness_curve", "thickness_curve"),
                       ("thickness_frame", "thickness_frame")]:
        value = getattr(args, flag)
        if value is not None:
            overrides[attr] = value
    if args.scale is not None:
        overrides["scaling_factor"] = args.scale
    if args.fn is not None:
        overrides["sphere_resolution"] = args.fn
    if overrides:
        from dataclasses import replace
        params = replace(params, **overrides)
    return params


def _margins(args):
    if args.margins is not None:
        return [ _fraction_arg(m) for m in args.margins.split(",") ]
    if args.margin is not None:
        return args.margin
    return 1


def _load_polynomial(text: str, args) -> TropicalPolynomial:
    variables = args.vars.split(",") if args.vars else None
    poly = parse_tropical_polynomial(text, variables, args.convention)
    return poly


def _surface_from_polynomial(poly: TropicalPolynomial) -> PolyhedralComplex:
    if poly.num_variables == 4 and poly.is_homogeneous:
        print(f"note: dehomogenizing by dropping variable "
              f"{poly.variables[0]!r} (homogeneous 4-variable input)")
        poly = dehomogenize(poly)
    if poly.num_variables != 3:
        raise InputError(
            f"surfaces live in R^3: need 3 variables or a homogeneous "
            f"4-variable polynomial, got {poly.num_variables} variables")
    surface = hypersurface(poly)
    if surface.is_empty:
        raise InputError("empty hypersurface: the polynomial has a single "
                         "term on its relevant hull")
    return surface


def _curve_polynomial_pipeline(poly: TropicalPolynomial) -> TropicalPolynomial:
    if poly.num_variables == 4 and poly.is_homogeneous:
        poly = dehomogenize(poly)
    return poly


def _bounding_box(reference: PolyhedralComplex, args) -> BoundingBox:
    if args.box is not None:
        polytope = jsonio.box_polytope_from_obj(jsonio.load_json(args.box))
        return BoundingBox.from_polytope(polytope)
    return generate_bounding_box(reference, _margins(args))


def _write_atomically(text: str, out_path: str, no_clobber: bool) -> None:
    if no_clobber and os.path.exists(out_path):
        raise InputError(f"output file exists and --no-clobber is set: {out_path}")
    directory = os.path.dirname(os.path.abspath(out_path))
    fd, tmp_path = tempfile.mkstemp(dir=directory, suffix=".scad.tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp_path, out_path)
    except BaseException:
        if os.path.exists(tmp_path):
            os.unlink(tmp_path)
        raise


def _print_box(box: BoundingBox) -> None:
    ranges = " x ".join(f"[{lo},{hi}]" for lo, hi in box.axis_ranges())
    kind = "cuboid" if box.is_cuboid else "custom polytope"
    print(f"bounding box: {ranges} ({kind})")


def _emit(scene: Scene, args) -> int:
    params = _scad_params(args)
    target = args.target_size_mm if args.target_size_mm is not None \
        else DEFAULT_TARGET_SIZE_MM
    text = emit_scad(scene, params)
    for warning in print_feasibility_check(scene, params, target):
        print(f"warning: {warning}")
    _write_atomically(text, args.out, args.no_clobber)
    print(f"wrote: {args.out}")
    return 0


def cmd_surface(args) -> int:
    if (args.polynomial is None) == (args.complex is None):
        raise InputError("give exactly one of --polynomial or --complex")
    if args.polynomial is not None:
        surface = _surface_from_polynomial(_load_polynomial(args.polynomial, args))
    else:
        surface = jsonio.complex_from_obj(jsonio.load_json(args.complex))
    print(f"surface: {surface.num_cells} maximal cells, dimension {surface.dim}")
    box = _bounding_box(surface, args)
    _print_box(box)
    bounded = intersect_with_bounding_box(surface, box)
    if bounded.is_empty:
        raise InputError("the bounding box misses the surface entirely")
    print(f"clipped surface: {bounded.num_cells} cells")
    return _emit(Scene(SceneKind.SURFACE, bounded), args)


def cmd_curve(args) -> int:
    two_polys = args.polynomial is not None and args.polynomial2 is not None
    manual = args.complex is not None
    if two_polys == manual:
        raise InputError("give either --polynomial and --polynomial2 "
                         "(curve = stable intersection, framed by the first surface) "
                         "or --complex plus a framing surface")
    if two_polys:
        p1 = _curve_polynomial_pipeline(_load_polynomial(args.polynomial, args))
        p2 = _curve_polynomial_pipeline(_load_polynomial(args.polynomial2, args))
        s1 = hypersurface(p1)
        s2 = hypersurface(p2)
        curve = stable_intersection(s1, s2)
        if curve.is_empty:
            raise InputError("the stable intersection of the two surfaces is empty")
        frame_surface = s1
    else:
        curve = jsonio.complex_from_obj(jsonio.load_json(args.complex))
        if args.surface is not None:
            frame_surface = jsonio.complex_from_obj(jsonio.load_json(args.surface))
        elif args.polynomial is not None:
            frame_surface = _surface_from_polynomial(
                _load_polynomial(args.polynomial, args))
        else:
            raise InputError("a manual curve needs a framing surface: "
                             "--surface FILE or --polynomial")
    if curve.dim != 1:
        raise InputError(f"the curve must be 1-dimensional, got dimension {curve.dim}")
    if frame_surface.dim != 2:
        raise InputError(f"the framing surface must be 2-dimensional, "
                         f"got dimension {frame_surface.dim}")
    print(f"curve: {curve.num_cells} maximal cells")
    box = _bounding_box(curve, args)
    _print_box(box)
    bounded_curve = intersect_with_bounding_box(curve, box)
    frame = frame_for_curve(frame_surface, box)
    if bounded_curve.is_empty:
        raise InputError("the bounding box misses the curve entirely")
    if frame.is_empty:
        raise InputError("the bounding box misses the framing surface entirely")
    print(f"clipped curve: {bounded_curve.num_cells} cells, "
          f"frame: {frame.num_cells} edges")
    return _emit(Scene(SceneKind.CURVE_WITH_FRAME, bounded_curve, frame), args)


def _containment_violations(curve: PolyhedralComplex,
                            surface_poly: TropicalPolynomial | None,
                            surface: PolyhedralComplex) -> int:
    """Number of curve vertices not lying on the surface."""
    violations = 0
    for position in curve.vertex_positions():
        if surface_poly is not None:
            _, argopt = evaluate(surface_poly, position)
            on_surface = len(argopt) >= 2
        else:
            on_surface = any(surface.cell_polyhedron(i).contains(position)
                             for i in range(surface.num_cells))
        if not on_surface:
            violations += 1
    return violations


def cmd_surface_and_curve(args) -> int:
    if (args.polynomial is None) == (args.surface is None):
        raise InputError("give exactly one of --polynomial or --surface for the surface")
    if args.complex is None:
        raise InputError("--complex CURVE_FILE is required")
    surface_poly = None
    if args.polynomial is not None:
        parsed = _load_polynomial(args.polynomial, args)
        surface_poly = parsed
        if parsed.num_variables == 4 and parsed.is_homogeneous:
            surface_poly = dehomogenize(parsed)
        surface = _surface_from_polynomial(parsed)
    else:
        surface = jsonio.complex_from_obj(jsonio.load_json(args.surface))
    curve = jsonio.complex_from_obj(jsonio.load_json(args.complex))
    if surface.dim != 2:
        raise InputError(f"the surface must be 2-dimensional, got {surface.dim}")
    if curve.is_empty:
        raise InputError("the curve complex has no cells")
    if curve.dim != 1:
        raise InputError(f"the curve must be 1-dimensional, got {curve.dim}")
    if surface.ambient_dim != curve.ambient_dim:
        raise InputError(f"surface and curve live in different spaces: "
                         f"R^{surface.ambient_dim} vs R^{curve.ambient_dim}")
    violations = _containment_violations(curve, surface_poly, surface)
    if violations:
        print(f"warning: {violations} curve vertices do not lie on the surface")
    box = _bounding_box(curve, args)  # box sized from the curve's vertices
    _print_box(box)
    bounded_surface = intersect_with_bounding_box(surface, box)
    bounded_curve = intersect_with_bounding_box(curve, box)
    if bounded_surface.is_empty or bounded_curve.is_empty:
        raise InputError("the bounding box misses the surface or the curve")
    print(f"clipped surface: {bounded_surface.num_cells} cells, "
          f"curve: {bounded_curve.num_cells} cells")
    return _emit(Scene(SceneKind.SURFACE_AND_CURVE, bounded_surface, bounded_curve),
                 args)


def cmd_inspect(args) -> int:
    complex_ = jsonio.complex_from_obj(jsonio.load_json(args.complex))
    num_vertices = sum(1 for p in complex_.points if p.is_vertex)
    num_rays = len(complex_.points) - num_vertices
    print(f"dimension: {complex_.dim}")
    print(f"points: {len(complex_.points)} ({num_vertices} vertices, {num_rays} rays)")
    print(f"lineality dimension: {len(complex_.lineality)}")
    print(f"maximal cells: {complex_.num_cells}")
    print(f"bounded: {'yes' if complex_.is_bounded else 'no'}")
    if complex_.dim <= 1 and not complex_.lineality:
        verts, bounded_e, unbounded_e, components, betti = graph_stats(complex_)
        print(f"vertices: {verts}")
        print(f"bounded edges: {bounded_e}")
        print(f"unbounded edges: {unbounded_e}")
        print(f"components: {components}")
        print(f"first betti number: {betti}")
    else:
        print(f"components: {complex_.components()}")
    if complex_.weights is not None:
        report = check_balancing(complex_)
        print(f"balanced: {'yes' if report.balanced else 'no'}")
        if not report.balanced:
            print(f"violating ridges: {len(report.violations)}")
    else:
        print("balanced: not checked (no weights)")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tropiscad",
        description="3D-printable OpenSCAD models of tropical surfaces and curves")
    sub = parser.add_subparsers(dest="command", required=True)

    surface = sub.add_parser("surface", help="model a single tropical surface")
    surface.add_argument("--polynomial", help="tropical polynomial, e.g. 'min(x,y,z,0)'")
    surface.add_argument("--complex", help="surface complex JSON file")
    surface.add_argument("--vars", help="comma-separated variable order")
    surface.add_argument("--convention", choices=["min", "max"], default=None)
    _add_box_flags(surface)
    _add_scad_flags(surface)
    surface.set_defaults(handler=cmd_surface)

    curve = sub.add_parser("curve", help="model a tropical curve with a frame")
    curve.add_argument("--polynomial",
                       help="first surface polynomial (also used for the frame)")
    curve.add_argument("--polynomial2", help="second surface polynomial")
    curve.add_argument("--complex", help="manual curve complex JSON file")
    curve.add_argument("--surface", help="framing surface complex JSON file")
    curve.add_argument("--vars", help="comma-separated variable order")
    curve.add_argument("--convention", choices=["min", "max"], default=None)
    _add_box_flags(curve)
    _add_scad_flags(curve)
    curve.set_defaults(handler=cmd_curve)

    both = sub.add_parser("surface-and-curve",
                          help="model a curve lying on a surface")
    both.add_argument("--polynomial", help="surface polynomial")
    both.add_argument("--surface", help="surface complex JSON file")
    both.add_argument("--complex", help="curve complex JSON file")
    both.add_argument("--vars", help="comma-separated variable order")
    both.add_argument("--convention", choices=["min", "max"], default=None)
    _add_box_flags(both)
    _add_scad_flags(both)
    both.set_defaults(handler=cmd_surface_and_curve)

    inspect = sub.add_parser("inspect", help="report statistics of a complex")
    inspect.add_argument("complex", help="complex JSON file")
    inspect.set_defaults(handler=cmd_inspect)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
