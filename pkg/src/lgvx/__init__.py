"""Counting non-intersecting lattice path families with an arbitrary
connection type via a signed path matrix, plus closed forms and domino
tilings built on top of it."""

from .drawing import Drawing, Edge, MarkedConfig, Vertex, validate_drawing
from .pathcount import brute_force_nonintersecting, h, lgv_signed, matrix_M, signed_entry
from .polyring import PolyMatrix, WeightPoly, det, parse_poly

__version__ = "0.1.0"

__all__ = [
    "Drawing", "Edge", "MarkedConfig", "Vertex", "validate_drawing",
    "brute_force_nonintersecting", "h", "lgv_signed", "matrix_M", "signed_entry",
    "PolyMatrix", "WeightPoly", "det", "parse_poly",
]
