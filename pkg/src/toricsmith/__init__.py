"""Exact-arithmetic analysis of labeled rational polytopes.

Shrinking traces, monotone decompositions, weighted-projective reduction
certificates and Gromov-width bound certificates, all over the rationals.
"""

__version__ = "0.1.0"

from .errors import ToricsmithError
from .polytope import LabeledPolytope, classify, dimension, vertices
from .shrink import center, shrink_trace, slice_at
from .decompose import build_factors, decomposition_plan, verify_theorem1
from .reduce import minkowski_weights, reduction_certificate, verify_certificate
from .gromov import width_report

__all__ = [
    "ToricsmithError",
    "LabeledPolytope",
    "vertices",
    "dimension",
    "classify",
    "shrink_trace",
    "slice_at",
    "center",
    "decomposition_plan",
    "build_factors",
    "verify_theorem1",
    "minkowski_weights",
    "reduction_certificate",
    "verify_certificate",
    "width_report",
]
