"""Tropical surfaces and curves as 3D-printable OpenSCAD models."""

from .bounding import BoundingBox, frame_for_curve, generate_bounding_box, \
    intersect_with_bounding_box
from .complexes import HPoint, PolyhedralComplex, from_points_and_cells, \
    graph_stats, skeleton
from .errors import InputError, ParseError, SchemaError, ValidationError
from .geometry import Polyhedron, faces_of_dim, facet_enumeration, \
    intersect_polyhedra, vertex_enumeration
from .polynomial import TropicalPolynomial, dehomogenize, evaluate, \
    parse_tropical_polynomial, tropical_polynomial
from .scad import ScadParams, Scene, SceneKind, emit_scad, print_feasibility_check
from .tropical import DualSubdivision, check_balancing, hypersurface, \
    regular_subdivision, stable_intersection

__version__ = "0.1.0"

__all__ = [
    "BoundingBox", "DualSubdivision", "HPoint", "InputError", "ParseError",
    "PolyhedralComplex", "Polyhedron", "ScadParams", "Scene", "SceneKind",
    "SchemaError", "TropicalPolynomial", "ValidationError", "check_balancing",
    "dehomogenize", "evaluate", "faces_of_dim", "facet_enumeration",
    "frame_for_curve", "from_points_and_cells", "generate_bounding_box",
    "graph_stats", "hypersurface", "intersect_polyhedra",
    "intersect_with_bounding_box", "parse_tropical_polynomial",
    "print_feasibility_check", "regular_subdivision", "skeleton",
    "stable_intersection", "tropical_polynomial", "emit_scad",
    "vertex_enumeration",
]
