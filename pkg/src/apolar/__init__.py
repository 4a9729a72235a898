"""
apolar - Annihilators of polynomials under contraction, with a complete-intersection
classifier for binomials and a strong Lefschetz witness search.

Example usage:
    from apolar import parse_poly, analyze, normalize, classify, construct_annihilator

    F = parse_poly("X1^2*X2^2*X3^3 - X1*X2*X3^5")
    nf = normalize(F)
    print(classify(nf).verdict)           # Verdict.CI_CASE_B
    print([str(g) for g in construct_annihilator(nf)])
    # ['x1^3', 'x2^3', 'x1^2*x2^2 + x1*x2*x3^2 + x3^4']
    print(analyze(F).mu)                  # 3
"""

from apolar.algebra.field import FieldElem, FieldSpec
from apolar.algebra.parser import format_poly, parse_poly
from apolar.algebra.polynomial import Poly, Role, VarContext, contract
from apolar.core.apolarity import analyze, annihilator_truncated, hilbert_function, ideal_equals_ann
from apolar.core.binomial import classify, construct_annihilator, normalize
from apolar.core.lefschetz import build_graded_quotient, find_slp_witness
from apolar.errors import ApolarError

__version__ = "0.1.0"
__all__ = [
    "ApolarError",
    "FieldElem",
    "FieldSpec",
    "Poly",
    "Role",
    "VarContext",
    "analyze",
    "annihilator_truncated",
    "build_graded_quotient",
    "classify",
    "construct_annihilator",
    "contract",
    "find_slp_witness",
    "format_poly",
    "hilbert_function",
    "ideal_equals_ann",
    "normalize",
    "parse_poly",
]
