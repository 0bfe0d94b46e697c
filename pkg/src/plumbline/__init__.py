"""Exact lattice and diagram computations for plumbed 3-manifolds and knots."""

from .blowdown import EnhancedForm, blowdown_report, extends_over_ball, load_enhanced_form
from .charvec import d_invariants, good_vectors, lspace_verdict
from .diagram import Diagram, load_pd, mirror, parse_pd
from .invariants import LaurentPolynomial, jones, knot_determinant, qa_certificate, signature_gl
from .khovanov import KhTable, ingest_table
from .plumbing import WeightedGraph, load_graph, parse_graph

__version__ = "0.1.0"

__all__ = [
    "Diagram",
    "EnhancedForm",
    "KhTable",
    "LaurentPolynomial",
    "WeightedGraph",
    "blowdown_report",
    "d_invariants",
    "extends_over_ball",
    "good_vectors",
    "ingest_table",
    "jones",
    "knot_determinant",
    "load_enhanced_form",
    "load_graph",
    "load_pd",
    "lspace_verdict",
    "mirror",
    "parse_graph",
    "parse_pd",
    "qa_certificate",
    "signature_gl",
]
