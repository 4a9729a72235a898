"""Annihilator oracle, binomial classification and Lefschetz search."""

from apolar.core.apolarity import (
    AnnReport,
    TruncatedIdeal,
    analyze,
    annihilator_truncated,
    hilbert_function,
    ideal_equals_ann,
    minimal_generators,
)
from apolar.core.binomial import (
    BinomialNormalForm,
    Classification,
    Verdict,
    augment_variables,
    classify,
    construct_annihilator,
    det_certificate,
    normalize,
)
from apolar.core.lefschetz import GradedAlgebra, SlpReport, build_graded_quotient, find_slp_witness

__all__ = [
    "AnnReport",
    "BinomialNormalForm",
    "Classification",
    "GradedAlgebra",
    "SlpReport",
    "TruncatedIdeal",
    "Verdict",
    "analyze",
    "annihilator_truncated",
    "augment_variables",
    "build_graded_quotient",
    "classify",
    "construct_annihilator",
    "det_certificate",
    "find_slp_witness",
    "hilbert_function",
    "ideal_equals_ann",
    "minimal_generators",
    "normalize",
]
