"""Geometric calculus on a single chart of Euclidean R^n.

Numeric multivector algebra (`algebra`), a scalar-field expression DSL
with exact differentiation (`expr`), symbolic multivector fields
(`fields`), connection fields and covariant derivatives (`connection`),
torsion/curvature and Cartan's structure equations (`cartan`), the
classical component-calculus bridge (`bridge`), and runnable identity
suites (`suites`) with a CLI (`cli`).
"""

from __future__ import annotations

import sys

# Curvature derivatives stack symbolic trees a few hundred levels deep.
if sys.getrecursionlimit() < 20000:
    sys.setrecursionlimit(20000)

from .algebra import (  # noqa: E402
    Frame,
    LinearMap11,
    Multivector,
    adjoint,
    allclose,
    biv,
    canonical_frame,
    clifford,
    commutator,
    contraction,
    format_multivector,
    grade_project,
    involution,
    outermorphism,
    reciprocal_frame,
    scalar_product,
    wedge,
)
from .connection import ConnectionField, ExtensorField11, ExtensorFieldK, cov_derivative  # noqa: E402
from .expr import DomainError, ParseError, diff, evaluate, parse, simplify, to_str  # noqa: E402
from .fields import Box, MultivectorField  # noqa: E402

__version__ = "0.1.0"

__all__ = [
    "Box",
    "ConnectionField",
    "DomainError",
    "ExtensorField11",
    "ExtensorFieldK",
    "Frame",
    "LinearMap11",
    "Multivector",
    "MultivectorField",
    "ParseError",
    "adjoint",
    "allclose",
    "biv",
    "canonical_frame",
    "clifford",
    "commutator",
    "contraction",
    "cov_derivative",
    "diff",
    "evaluate",
    "format_multivector",
    "grade_project",
    "involution",
    "outermorphism",
    "parse",
    "reciprocal_frame",
    "scalar_product",
    "simplify",
    "to_str",
    "wedge",
    "__version__",
]
