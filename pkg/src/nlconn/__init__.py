"""Exact calculus of nonlinear connections on almost-tangent manifolds."""

from .calculus import ScalarForm, VectorField, VectorForm, exterior_d, fn_bracket, interior
from .connection import LConnection, build_from_decomposition, curvature, from_semispray, torsion
from .hermitian import associated_F, extend_metric, kahler_form
from .manifest import Manifest, load_manifest, parse_manifest
from .parser import ParseError, parse_expression
from .ratpoly import MultiPoly, Rational
from .suite import run_suite
from .tangent import Semispray, TangentStructure, canonical_L, make_semispray

__all__ = [
    "LConnection", "Manifest", "MultiPoly", "ParseError", "Rational", "ScalarForm", "Semispray",
    "TangentStructure", "VectorField", "VectorForm", "associated_F", "build_from_decomposition",
    "canonical_L", "curvature", "exterior_d", "extend_metric", "fn_bracket", "from_semispray",
    "interior", "kahler_form", "load_manifest", "make_semispray", "parse_expression", "parse_manifest",
    "run_suite", "torsion",
]
