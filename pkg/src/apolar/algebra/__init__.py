"""Exact fields, sparse polynomials and linear algebra."""

from apolar.algebra.field import FieldElem, FieldSpec, sample_nonzero
from apolar.algebra.linalg import EchelonBuilder, Matrix, Subspace, kernel_basis, rank, rref
from apolar.algebra.parser import format_poly, parse_poly
from apolar.algebra.polynomial import Poly, Role, VarContext, contract

__all__ = [
    "EchelonBuilder",
    "FieldElem",
    "FieldSpec",
    "Matrix",
    "Poly",
    "Role",
    "Subspace",
    "VarContext",
    "contract",
    "format_poly",
    "kernel_basis",
    "parse_poly",
    "rank",
    "rref",
    "sample_nonzero",
]
