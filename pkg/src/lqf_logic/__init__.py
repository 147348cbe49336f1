"""
LQF Logic - orthomodular lattices and the equational logic of type III factors

A library for finite orthomodular-lattice computations, the LQF equational
system with its filter and congruence theory, a checkable Hilbert-style proof
calculus, and exact rational matrix checks of the Murray-von Neumann
dimension facts.

License: MIT
Version: 1.0.0
"""

from .calculus import AXIOMS, Proof, Step, check_proof, expand_macros, load_proof
from .catalog import catalog, lookup, resolve_lattice, resolve_structure
from .conditions import alignment, check_iii_conditions, check_lqf_axioms
from .core import (
    center,
    central_cover,
    dual_central_cover,
    is_directly_indecomposable,
    perspective,
    sasaki,
)
from .exceptions import (
    CrossCheckError,
    LQFError,
    MatrixShapeError,
    PreconditionError,
    TermSyntaxError,
    UnsupportedQueryError,
)
from .filters import classify_filter, enumerate_lqf_filters, generate_filter
from .lattice import FiniteOml, boolean, build, horizontal_sum, mo, product, verify_oml
from .matrix import (
    RationalMatrix,
    borchers_fails,
    is_partial_isometry,
    mvn_equivalent,
    rank_dimension,
    unitary_vs_perspective_demo,
)
from .models import LQFSettings, RunConfig
from .search import countermodel, decide2, refute_finite_lqf, w0_uniqueness
from .terms import ExpandedStructure, eval_term, holds, parse, parse_equation

__version__ = "1.0.0"

__all__ = [
    "AXIOMS",
    "CrossCheckError",
    "ExpandedStructure",
    "FiniteOml",
    "LQFError",
    "LQFSettings",
    "MatrixShapeError",
    "PreconditionError",
    "Proof",
    "RationalMatrix",
    "RunConfig",
    "Step",
    "TermSyntaxError",
    "UnsupportedQueryError",
    "alignment",
    "boolean",
    "borchers_fails",
    "build",
    "catalog",
    "center",
    "central_cover",
    "check_iii_conditions",
    "check_lqf_axioms",
    "check_proof",
    "classify_filter",
    "countermodel",
    "decide2",
    "dual_central_cover",
    "enumerate_lqf_filters",
    "eval_term",
    "expand_macros",
    "generate_filter",
    "holds",
    "horizontal_sum",
    "is_directly_indecomposable",
    "is_partial_isometry",
    "load_proof",
    "lookup",
    "mo",
    "mvn_equivalent",
    "parse",
    "parse_equation",
    "perspective",
    "product",
    "rank_dimension",
    "refute_finite_lqf",
    "resolve_lattice",
    "resolve_structure",
    "sasaki",
    "unitary_vs_perspective_demo",
    "verify_oml",
    "w0_uniqueness",
]
