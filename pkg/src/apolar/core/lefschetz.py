"""Strong Lefschetz witnesses for graded apolar algebras.

A = R/Ann_R(F) for homogeneous F of degree D is graded with A_i = R_i / Ann_i,
where Ann_i is the kernel of the degree-i catalecticant. A linear form ell is
a strong Lefschetz element when every multiplication map
ell^d : A_i -> A_(i+d) has maximal rank.
"""

from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass, field

from apolar.algebra.field import FieldSpec
from apolar.algebra.linalg import Matrix, Subspace, kernel_basis, rank
from apolar.algebra.polynomial import Exponents, Poly, Role, VarContext, monomials_of_degree
from apolar.core.apolarity import NotHomogeneousError, ZeroPolynomialError, catalecticant
from apolar.errors import ApolarError

logger = logging.getLogger(__name__)

DEFAULT_TRIALS = 8
DEFAULT_POOL_BOUND = 5


class LefschetzError(ApolarError):
    """Base exception for Lefschetz computations."""


class DegreeOutOfRangeError(LefschetzError):
    """Raised when a multiplication map leaves degrees 0..D."""


class CharacteristicRefusedError(LefschetzError):
    """Raised for a witness search over a prime field without the override."""


@dataclass
class GradedPiece:
    """A_i: the annihilator slice in degree i and the standard monomials spanning the quotient.

    Coordinates of R_i run over the degree-i monomials in reverse canonical
    order, so RREF pivots fall on the lex-smallest monomials and the
    lex-largest ones remain as the basis of A_i.
    """

    degree: int
    monomials: tuple[Exponents, ...]
    index: dict[Exponents, int]
    annihilator: Subspace
    basis: list[Exponents]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coordinates(self, f: Poly) -> list:
        """Coordinates of the class of a degree-i polynomial in ``basis``."""
        fld = self.annihilator.field
        v = [fld.zero] * len(self.monomials)
        for e, c in f.terms.items():
            if sum(e) != self.degree:
                raise DegreeOutOfRangeError(f"Term of degree {sum(e)} in a degree-{self.degree} reduction")
            v[self.index[e]] = c
        residual = self.annihilator.reduce(v)
        return [residual[self.index[e]] for e in self.basis]


@dataclass
class GradedAlgebra:
    n_vars: int
    top_degree: int
    field: FieldSpec
    pieces: list[GradedPiece]

    @property
    def degree_bases(self) -> list[list[Exponents]]:
        return [p.basis for p in self.pieces]

    @property
    def h(self) -> list[int]:
        return [p.dim for p in self.pieces]

    @property
    def ring(self) -> VarContext:
        return VarContext(self.n_vars, Role.RING)


def build_graded_quotient(F: Poly) -> GradedAlgebra:
    """Per-degree bases of R/Ann_R(F) for homogeneous F.

    Raises:
        NotHomogeneousError: If F is not homogeneous.
        ZeroPolynomialError: If F is zero.
    """
    if F.is_zero():
        raise ZeroPolynomialError("Ann_R(0) is the whole ring")
    if not F.is_homogeneous():
        raise NotHomogeneousError(f"{F} is not homogeneous")
    pieces = []
    for i in range(F.degree + 1):
        cat = catalecticant(F, i)
        canonical = monomials_of_degree(F.n_vars, i)
        monomials = tuple(reversed(canonical))
        flipped = Matrix(F.field, cat.n_rows, cat.n_cols, [list(reversed(r)) for r in cat.rows])
        ann = kernel_basis(flipped)
        pivots = {monomials[c] for c in ann.pivot_cols}
        basis = [e for e in canonical if e not in pivots]
        pieces.append(
            GradedPiece(i, monomials, {e: k for k, e in enumerate(monomials)}, ann, basis)
        )
    algebra = GradedAlgebra(F.n_vars, F.degree, F.field, pieces)
    logger.debug(f"Graded quotient of {F}: h = {algebra.h}")
    return algebra


def mult_matrix(A: GradedAlgebra, ell: Poly, i: int, d: int) -> Matrix:
    """Matrix of multiplication by ell^d from A_i to A_(i+d), columns indexed by the A_i basis."""
    if i < 0 or d < 0 or i + d > A.top_degree:
        raise DegreeOutOfRangeError(f"No map A_{i} -> A_{i + d} for socle degree {A.top_degree}")
    power = ell**d
    source, target = A.pieces[i], A.pieces[i + d]
    columns = [target.coordinates(power.mul_monomial(s)) for s in source.basis]
    rows = [[col[r] for col in columns] for r in range(target.dim)]
    return Matrix(A.field, target.dim, source.dim, rows)


@dataclass
class LefschetzCheck:
    """Outcome of testing one linear form; falsy when some map drops rank."""

    ranks: dict[tuple[int, int], int]
    failed_pairs: list[tuple[int, int, int, int]] = field(default_factory=list)

    def __bool__(self) -> bool:
        return not self.failed_pairs


def _check_linear(A: GradedAlgebra, ell: Poly) -> None:
    if ell.role is not Role.RING or ell.n_vars != A.n_vars or ell.field != A.field:
        raise LefschetzError(f"{ell} is not a linear form of the algebra's ring")
    if ell.is_zero() or not ell.is_homogeneous() or ell.degree != 1:
        raise LefschetzError(f"{ell} is not a nonzero linear form")


def has_slp_witness(A: GradedAlgebra, ell: Poly) -> LefschetzCheck:
    """Check that every ell^d : A_i -> A_(i+d), d >= 1, has rank min(h_i, h_(i+d))."""
    _check_linear(A, ell)
    h = A.h
    check = LefschetzCheck(ranks={})
    for d in range(1, A.top_degree + 1):
        for i in range(A.top_degree - d + 1):
            achieved = rank(mult_matrix(A, ell, i, d))
            check.ranks[(i, d)] = achieved
            best = min(h[i], h[i + d])
            if achieved != best:
                check.failed_pairs.append((i, d, achieved, best))
    return check


def rank_symmetry(A: GradedAlgebra, ranks: dict[tuple[int, int], int]) -> bool:
    """rank(ell^d on A_i) = rank(ell^d on A_(D-i-d)), the Gorenstein duality of the maps."""
    return all(ranks[(i, d)] == ranks[(A.top_degree - i - d, d)] for (i, d) in ranks)


@dataclass
class SlpReport:
    witness: Poly | None
    trials_used: int
    failed_pairs: list[tuple[int, int, int, int]]
    symmetric: bool | None = None
    exhaustive: bool = False

    @property
    def found(self) -> bool:
        return self.witness is not None

    @property
    def message(self) -> str:
        if self.witness is not None:
            return f"strong Lefschetz witness {self.witness} (proves SLP)"
        if self.exhaustive:
            return "no witness: every nonzero linear form fails"
        return f"NO_WITNESS_FOUND after {self.trials_used} candidates (evidence only, not a disproof)"


def _candidates(A: GradedAlgebra, trials: int, seed: int, pool_bound: int):
    """x1 + ... + xN, then either every nonzero form (small prime fields) or random ones."""
    ring, fld = A.ring, A.field
    ones = Poly(ring, fld, [(e, 1) for e in monomials_of_degree(A.n_vars, 1)])
    yield ones
    units = monomials_of_degree(A.n_vars, 1)
    p = fld.modulus
    if p is not None and p**A.n_vars - 1 <= trials + 1:
        for coeffs in itertools.product(range(p), repeat=A.n_vars):
            ell = Poly(ring, fld, list(zip(units, coeffs)))
            if not ell.is_zero() and ell != ones:
                yield ell
        return
    rng = random.Random(seed)
    for _ in range(trials):
        yield Poly(ring, fld, [(e, fld.draw_nonzero(rng, pool_bound)) for e in units])


def find_slp_witness(
    A: GradedAlgebra,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
    pool_bound: int = DEFAULT_POOL_BOUND,
    allow_positive_characteristic: bool = False,
) -> SlpReport:
    """Search for a strong Lefschetz element.

    The deterministic candidate x1 + ... + xN is tried first, then ``trials``
    random forms with coefficients drawn from {±1..±pool_bound}. Over a prime
    field small enough that all nonzero forms fit in the budget, every form
    is tried instead and a negative answer is conclusive.

    Raises:
        CharacteristicRefusedError: Over a prime field unless
            ``allow_positive_characteristic`` is set.
    """
    if not A.field.is_rational:
        if not allow_positive_characteristic:
            raise CharacteristicRefusedError(
                f"SLP search over {A.field} needs the positive-characteristic override"
            )
        logger.warning(f"Searching for a Lefschetz element over {A.field}; char 0 results do not apply")

    exhaustive = A.field.modulus is not None and A.field.modulus**A.n_vars - 1 <= trials + 1
    used = 0
    last = LefschetzCheck(ranks={})
    for ell in _candidates(A, trials, seed, pool_bound):
        used += 1
        last = has_slp_witness(A, ell)
        if last:
            logger.debug(f"Lefschetz witness {ell} after {used} candidates")
            return SlpReport(ell, used, [], rank_symmetry(A, last.ranks), exhaustive)
    logger.warning(f"No Lefschetz witness among {used} candidates for h = {A.h}")
    return SlpReport(None, used, last.failed_pairs, rank_symmetry(A, last.ranks), exhaustive)
