"""Exact symbolic invariants of corank-1 frontal surface map-germs.

The package analyses polynomial map-germs f(x, y) = (x, p(x, y), q(x, y))
from the plane to three-space: frontality, the cuspidal and transverse
double-point curves, Fitting-ideal multiple-point algebras, the 0-stable
counts S, K, T, W, plane-curve Milnor numbers, the frontal Milnor number,
frontalisation of fold germs, and classification against the simple
frontal families.  All arithmetic is exact over the rationals.
"""

__version__ = "0.1.0"

from .poly import (
    Poly,
    NotDivisibleError,
    divided_difference,
    exact_divide,
    local_divisibility,
    poly_gcd,
    resultant,
    second_divided_difference,
    squarefree_at_origin,
)
from .local_algebra import Jet, ColengthResult, colength, fold_module_colength, jet_solve_membership
from .parsing import ParseError, parse_expression, render
from .germs import MapGerm, check_frontal, double_point_curve, alpha_pair, finiteness_checks
from .fitting import multiplicity, presentation, fitting_F3
from .invariants import (
    skw_counts,
    milnor_plane,
    marar_mond_eval,
    frontal_milnor,
    quasihomogeneous_test,
    conjecture_report,
)
from .folds import FoldGerm, detect_fold, frontalise, fold_codim, classify_simple
from .curves import ParamCurve, curve_double_point, delta_invariant, curve_milnor, kappa_and_relation
from .report import GermSpec, AnalyzeOptions, run_analyze

__all__ = [
    "Poly",
    "Jet",
    "NotDivisibleError",
    "ParseError",
    "MapGerm",
    "FoldGerm",
    "ParamCurve",
    "GermSpec",
    "AnalyzeOptions",
    "ColengthResult",
    "parse_expression",
    "render",
    "divided_difference",
    "second_divided_difference",
    "resultant",
    "exact_divide",
    "poly_gcd",
    "local_divisibility",
    "squarefree_at_origin",
    "colength",
    "fold_module_colength",
    "jet_solve_membership",
    "check_frontal",
    "double_point_curve",
    "alpha_pair",
    "finiteness_checks",
    "multiplicity",
    "presentation",
    "fitting_F3",
    "skw_counts",
    "milnor_plane",
    "marar_mond_eval",
    "frontal_milnor",
    "quasihomogeneous_test",
    "conjecture_report",
    "detect_fold",
    "frontalise",
    "fold_codim",
    "classify_simple",
    "curve_double_point",
    "delta_invariant",
    "curve_milnor",
    "kappa_and_relation",
    "run_analyze",
]
