"""Annihilator ideals by exact linear algebra.

For F of degree D the ideal Ann_R(F) contains m^(D+1), so it is determined
by its slice in R_{<=T} for any T >= D+1, taken modulo m^(T+1). Everything
here works in that truncated model: the kernel of f -> f ∘ F on R_{<=T},
its minimal generators via Nakayama, and equality tests against explicit
generator sets. Any F is accepted, not only binomials.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from enum import Enum
from functools import cache, cached_property, lru_cache

from apolar.algebra.field import FieldSpec, Raw
from apolar.algebra.linalg import EchelonBuilder, Matrix, Subspace, Vector, kernel_basis, rank
from apolar.algebra.polynomial import (
    ContextMismatchError,
    Exponents,
    Poly,
    Role,
    VarContext,
    contract,
    contract_monomial,
    divides,
    monomials_of_degree,
    term_order_key,
)
from apolar.errors import ApolarError

logger = logging.getLogger(__name__)

KERNEL_CACHE_SIZE = 64


class ApolarityError(ApolarError):
    """Base exception for annihilator computations."""


class ZeroPolynomialError(ApolarityError):
    """Raised when F = 0; its annihilator is the whole ring."""


class NotHomogeneousError(ApolarityError):
    """Raised when a graded computation receives a non-homogeneous F."""


class WrongProvenanceError(ApolarityError):
    """Raised when an operation needs the kernel model of Ann_R(F)."""


class NotInKernelError(ApolarityError):
    """Raised when a polynomial expected in Ann_R(F) does not annihilate F."""


class Provenance(Enum):
    KERNEL_OF_CONTRACTION = "kernel_of_contraction"
    GENERATED_BY = "generated_by"


@dataclass(frozen=True)
class RingCoordinates:
    """Coordinates on R_{<=max_degree}.

    Monomials are listed with the graded-lex largest first, so the RREF pivot
    of a vector is the leading term of the polynomial it represents.
    """

    n_vars: int
    max_degree: int

    @cached_property
    def monomials(self) -> tuple[Exponents, ...]:
        out: list[Exponents] = []
        for d in range(self.max_degree, -1, -1):
            out.extend(monomials_of_degree(self.n_vars, d))
        return tuple(out)

    @cached_property
    def index(self) -> dict[Exponents, int]:
        return {e: k for k, e in enumerate(self.monomials)}

    @cached_property
    def shifts(self) -> tuple[tuple[int, ...], ...]:
        """``shifts[j][k]``: coordinate of x_j times monomial k, or -1 past the truncation."""
        table = []
        for j in range(self.n_vars):
            row = []
            for e in self.monomials:
                moved = e[:j] + (e[j] + 1,) + e[j + 1 :]
                row.append(self.index.get(moved, -1))
            table.append(tuple(row))
        return tuple(table)

    @property
    def dim(self) -> int:
        return len(self.monomials)

    def vector(self, f: Poly) -> Vector:
        """Coordinates of f truncated to degree <= max_degree."""
        v = [f.field.zero] * self.dim
        for e, c in f.terms.items():
            k = self.index.get(e)
            if k is not None:
                v[k] = c
        return v

    def poly(self, v: Sequence[Raw], fld: FieldSpec) -> Poly:
        ctx = VarContext(self.n_vars, Role.RING)
        return Poly(ctx, fld, {self.monomials[k]: x for k, x in enumerate(v) if x})

    def shift(self, v: Sequence[Raw], j: int, fld: FieldSpec) -> Vector:
        """Truncation of x_j times the vector."""
        out = [fld.zero] * self.dim
        table = self.shifts[j]
        for k, x in enumerate(v):
            if x:
                target = table[k]
                if target >= 0:
                    out[target] = x
        return out


@cache
def ring_coordinates(n_vars: int, max_degree: int) -> RingCoordinates:
    return RingCoordinates(n_vars, max_degree)


@dataclass(frozen=True)
class TruncatedIdeal:
    """An m-primary ideal modelled inside R_{<=trunc_degree-1}, modulo m^trunc_degree."""

    n_vars: int
    trunc_degree: int
    field: FieldSpec
    space: Subspace
    source: Provenance
    dual_generator: Poly | None = None
    generators: tuple[Poly, ...] = ()

    @property
    def max_degree(self) -> int:
        return self.trunc_degree - 1

    @property
    def coordinates(self) -> RingCoordinates:
        return ring_coordinates(self.n_vars, self.max_degree)

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def colength(self) -> int:
        """dim_k R/I, valid because m^trunc_degree lies in I."""
        return self.coordinates.dim - self.space.dim

    def contains(self, f: Poly) -> bool:
        return self.space.contains(self.coordinates.vector(f))

    def basis_polys(self) -> list[Poly]:
        return [self.coordinates.poly(v, self.field) for v in self.space.basis]

    def same_ideal(self, other: TruncatedIdeal) -> bool:
        return (
            self.n_vars == other.n_vars
            and self.trunc_degree == other.trunc_degree
            and self.space == other.space
        )


def _require_dual(F: Poly) -> None:
    if F.role is not Role.DUAL:
        raise ContextMismatchError("Expected a dual (uppercase) polynomial")
    if F.is_zero():
        raise ZeroPolynomialError("Ann_R(0) is the whole ring")


def contraction_matrix(F: Poly, coords: RingCoordinates) -> Matrix:
    """Matrix of f -> f ∘ F on R_{<=T}; rows are the dual monomials that occur."""
    columns = [contract_monomial(e, F) for e in coords.monomials]
    row_index: dict[Exponents, int] = {}
    for image in columns:
        for e in image:
            row_index.setdefault(e, len(row_index))
    fld = F.field
    rows = [[fld.zero] * coords.dim for _ in range(len(row_index))]
    for j, image in enumerate(columns):
        for e, c in image.items():
            rows[row_index[e]][j] = c
    return Matrix(fld, len(rows), coords.dim, rows)


def annihilator_truncated(F: Poly, margin: int = 1) -> TruncatedIdeal:
    """Ann_R(F) ∩ R_{<=D+margin} as the kernel of the contraction map.

    Results are memoized per (F, margin); the returned ideal is shared.
    """
    _require_dual(F)
    if margin < 1:
        raise ApolarityError("The truncation must reach at least degree D+1")
    return _kernel_model(F, margin)


@lru_cache(maxsize=KERNEL_CACHE_SIZE)
def _kernel_model(F: Poly, margin: int) -> TruncatedIdeal:
    top = F.degree + margin
    coords = ring_coordinates(F.n_vars, top)
    matrix = contraction_matrix(F, coords)
    kernel = kernel_basis(matrix)
    logger.debug(
        f"Ann truncated at degree {top}: {matrix.n_rows}x{matrix.n_cols} map, kernel dim {kernel.dim}"
    )
    return TruncatedIdeal(
        n_vars=F.n_vars,
        trunc_degree=top + 1,
        field=F.field,
        space=kernel,
        source=Provenance.KERNEL_OF_CONTRACTION,
        dual_generator=F,
    )


def generated_truncated(
    gens: Sequence[Poly], n_vars: int, trunc_degree: int, fld: FieldSpec
) -> TruncatedIdeal:
    """The ideal (gens) modulo m^trunc_degree, spanned by truncated x^e * g."""
    coords = ring_coordinates(n_vars, trunc_degree - 1)
    builder = EchelonBuilder(fld, coords.dim)
    ring = VarContext(n_vars, Role.RING)
    for g in gens:
        if g.ctx != ring or g.field != fld:
            raise ContextMismatchError(f"Generator {g} is not in the {n_vars}-variable ring over {fld}")
        if g.is_zero():
            continue
        for d in range(trunc_degree - g.order):
            for e in monomials_of_degree(n_vars, d):
                builder.insert(coords.vector(g.mul_monomial(e)))
    return TruncatedIdeal(
        n_vars=n_vars,
        trunc_degree=trunc_degree,
        field=fld,
        space=builder.to_subspace(),
        source=Provenance.GENERATED_BY,
        generators=tuple(gens),
    )


@dataclass(frozen=True)
class MinimalGenerators:
    mu: int
    generators: tuple[Poly, ...]


def minimal_generators(ideal: TruncatedIdeal) -> MinimalGenerators:
    """μ(I) = dim_k I/mI and canonical lifts of a basis of I/mI.

    Valid because m^(D+2) lies in m*I. Lifts are taken greedily from the RREF
    basis of I by increasing leading monomial and are monic.
    """
    if ideal.source is not Provenance.KERNEL_OF_CONTRACTION:
        raise WrongProvenanceError("Minimal generators need the kernel model of Ann_R(F)")
    coords = ideal.coordinates
    fld = ideal.field
    builder = EchelonBuilder(fld, coords.dim)
    for v in ideal.space.basis:
        for j in range(ideal.n_vars):
            builder.insert(coords.shift(v, j, fld))
    mu = ideal.dim - builder.dim

    candidates = sorted(
        zip(ideal.space.pivot_cols, ideal.space.basis),
        key=lambda item: term_order_key(coords.monomials[item[0]]),
    )
    chosen: list[Poly] = []
    for _, v in candidates:
        if len(chosen) == mu:
            break
        if builder.insert(v):
            chosen.append(coords.poly(v, fld))
    if len(chosen) != mu:
        raise ApolarityError(f"Selected {len(chosen)} generators but mu = {mu}")
    return MinimalGenerators(mu, tuple(chosen))


def catalecticant(F: Poly, degree: int) -> Matrix:
    """Matrix of R_degree -> S_(D-degree), m -> m ∘ F, columns in canonical order."""
    top = F.degree
    cols = monomials_of_degree(F.n_vars, degree)
    rows = monomials_of_degree(F.n_vars, top - degree)
    row_index = {e: k for k, e in enumerate(rows)}
    fld = F.field
    data = [[fld.zero] * len(cols) for _ in rows]
    for j, e in enumerate(cols):
        for image, c in contract_monomial(e, F).items():
            data[row_index[image]][j] = c
    return Matrix(fld, len(rows), len(cols), data)


def hilbert_function(F: Poly) -> list[int]:
    """h_i = rank of the degree-i catalecticant, for homogeneous F."""
    _require_dual(F)
    if not F.is_homogeneous():
        raise NotHomogeneousError(f"{F} is not homogeneous")
    return [rank(catalecticant(F, i)) for i in range(F.degree + 1)]


class Comparison(Enum):
    EQUAL = "Equal"
    NOT_CONTAINED = "NotContained"
    PROPER_SUBIDEAL = "ProperSubideal"


@dataclass(frozen=True)
class IdealComparison:
    outcome: Comparison
    witness: Poly | None = None

    @property
    def equal(self) -> bool:
        return self.outcome is Comparison.EQUAL


def ideal_equals_ann(gens: Sequence[Poly], F: Poly) -> IdealComparison:
    """Decide whether (gens) = Ann_R(F).

    Each generator must annihilate F; then every kernel vector of the
    truncated annihilator must lie in the span of truncated multiples of the
    generators. That gives Ann ⊆ (gens) + m^(D+2) ⊆ (gens) + m*Ann, hence
    equality by Nakayama.
    """
    _require_dual(F)
    for g in gens:
        if not contract(g, F).is_zero():
            return IdealComparison(Comparison.NOT_CONTAINED, g)
    ann = annihilator_truncated(F)
    generated = generated_truncated(gens, F.n_vars, ann.trunc_degree, F.field)
    for v in ann.space.basis:
        if not generated.space.contains(v):
            return IdealComparison(Comparison.PROPER_SUBIDEAL, ann.coordinates.poly(v, F.field))
    return IdealComparison(Comparison.EQUAL)


@dataclass
class AnnReport:
    """Summary of Ann_R(F) as printed by ``apolar ann``."""

    n_vars: int
    mu: int
    minimal_generators: list[Poly]
    socle_degree: int
    colength: int
    hilbert: list[int] | None = None
    truncation_stable: bool | None = None
    extra: dict[str, object] = field(default_factory=dict)

    @property
    def is_ci(self) -> bool:
        return self.mu == self.n_vars


def analyze(F: Poly, check_truncation: bool = False) -> AnnReport:
    """Run the oracle on F: μ, minimal generators, colength and Hilbert function."""
    ann = annihilator_truncated(F)
    mins = minimal_generators(ann)
    report = AnnReport(
        n_vars=F.n_vars,
        mu=mins.mu,
        minimal_generators=list(mins.generators),
        socle_degree=F.degree,
        colength=ann.colength,
        hilbert=hilbert_function(F) if F.is_homogeneous() else None,
    )
    if check_truncation:
        report.truncation_stable = truncation_stable(F, mins)
    return report


def truncation_stable(F: Poly, reference: MinimalGenerators | None = None) -> bool:
    """Recompute with truncation degree D+2; μ and generators must not change."""
    if reference is None:
        reference = minimal_generators(annihilator_truncated(F))
    wider = minimal_generators(annihilator_truncated(F, margin=2))
    stable = wider.mu == reference.mu and wider.generators == reference.generators
    if not stable:
        logger.warning(f"Truncation changed the answer for {F}: mu {reference.mu} -> {wider.mu}")
    return stable


def pairing_check(F: Poly, f: Poly) -> bool:
    """Check the term pairing that every annihilator element of a binomial obeys.

    Write F = e1*F1 + e2*F2 = e1*(F1 - c*F2) with F1 the first term in
    canonical order. For each term d*x^s of f with x^s ∘ F1 != 0, the term
    (d/c)*x^(s - F1 + F2) must occur in f; for x^s ∘ F2 != 0, the term
    (c*d)*x^(s + F1 - F2) must.
    """
    _require_dual(F)
    if len(F) != 2:
        raise ApolarityError(f"Expected a binomial, got {len(F)} terms")
    if not contract(f, F).is_zero():
        raise NotInKernelError(f"{f} does not annihilate {F}")
    fld = F.field
    (m1, e1), (m2, e2) = F.sorted_terms()
    c = fld.neg(fld.div(e2, e1))
    for s, d in f.terms.items():
        if divides(s, m1):
            paired = tuple(x - y + z for x, y, z in zip(s, m1, m2))
            if min(paired) < 0 or f.coefficient(paired) != fld.div(d, c):
                return False
        if divides(s, m2):
            paired = tuple(x + y - z for x, y, z in zip(s, m1, m2))
            if min(paired) < 0 or f.coefficient(paired) != fld.mul(c, d):
                return False
    return True
