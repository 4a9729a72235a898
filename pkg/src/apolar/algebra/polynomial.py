"""Sparse multivariate polynomials and the contraction action.

Polynomials of the ring R = k[x1..xN] and of the dual space S = k[X1..XN]
share one type, :class:`Poly`; the :class:`VarContext` role tells them apart.
Terms are stored as ``{exponent tuple: raw coefficient}`` with zero
coefficients dropped.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
from enum import Enum
from functools import cache
from types import MappingProxyType

from apolar.algebra.field import FieldSpec, Raw
from apolar.errors import ApolarError

Exponents = tuple[int, ...]


class PolynomialError(ApolarError):
    """Base exception for polynomial errors."""


class ContextMismatchError(PolynomialError):
    """Raised when operands live in different rings, dual spaces or fields."""


class Role(Enum):
    """Whether a polynomial lives in the ring R or in the dual space S."""

    RING = "ring"
    DUAL = "dual"

    @property
    def letter(self) -> str:
        return "x" if self is Role.RING else "X"


@dataclass(frozen=True)
class VarContext:
    """Number of variables and role (ring or dual)."""

    n_vars: int
    role: Role = Role.DUAL

    def __post_init__(self) -> None:
        if self.n_vars < 1:
            raise PolynomialError(f"A polynomial context needs at least one variable, got {self.n_vars}")

    def with_role(self, role: Role) -> VarContext:
        return VarContext(self.n_vars, role)


def term_order_key(exps: Exponents) -> tuple[int, tuple[int, ...]]:
    """Graded-lex sort key: degree ascending, then lex with x1 > x2 > ..."""
    return (sum(exps), tuple(-e for e in exps))


@cache
def monomials_of_degree(n_vars: int, degree: int) -> tuple[Exponents, ...]:
    """All exponent vectors of total ``degree`` in canonical lex order.

    This ordering is the row/column convention of every matrix in apolar.
    """
    if n_vars < 1 or degree < 0:
        raise PolynomialError(f"Invalid monomial request: n_vars={n_vars}, degree={degree}")
    if n_vars == 1:
        return ((degree,),)
    out: list[Exponents] = []
    for first in range(degree, -1, -1):
        for rest in monomials_of_degree(n_vars - 1, degree - first):
            out.append((first, *rest))
    return tuple(out)


@cache
def monomials_up_to(n_vars: int, max_degree: int) -> tuple[Exponents, ...]:
    """All exponent vectors of degree at most ``max_degree``, degree ascending."""
    return tuple(
        itertools.chain.from_iterable(monomials_of_degree(n_vars, d) for d in range(max_degree + 1))
    )


def unit_exponent(n_vars: int, index: int, power: int = 1) -> Exponents:
    """Exponent vector of ``x_{index+1}^power`` (``index`` is 0-based)."""
    return tuple(power if k == index else 0 for k in range(n_vars))


def divides(small: Exponents, big: Exponents) -> bool:
    return all(s <= b for s, b in zip(small, big, strict=True))


class Poly:
    """Immutable sparse polynomial over an exact field."""

    __slots__ = ("ctx", "field", "_terms", "_hash")

    def __init__(
        self,
        ctx: VarContext,
        field: FieldSpec,
        terms: Mapping[Exponents, Raw] | Iterable[tuple[Exponents, Raw]] = (),
    ):
        self.ctx = ctx
        self.field = field
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Exponents, Raw] = {}
        for exps, coeff in items:
            exps = tuple(exps)
            if len(exps) != ctx.n_vars:
                raise PolynomialError(
                    f"Exponent vector {exps} does not match {ctx.n_vars} variables"
                )
            if any(e < 0 for e in exps):
                raise PolynomialError(f"Negative exponent in {exps}")
            value = field.coerce(coeff)
            acc[exps] = field.add(acc[exps], value) if exps in acc else value
        self._terms: dict[Exponents, Raw] = {e: c for e, c in acc.items() if c}
        self._hash: int | None = None

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, ctx: VarContext, field: FieldSpec) -> Poly:
        return cls(ctx, field)

    @classmethod
    def constant(cls, ctx: VarContext, field: FieldSpec, value: Raw | int) -> Poly:
        return cls(ctx, field, {(0,) * ctx.n_vars: field.coerce(value)})

    @classmethod
    def monomial(
        cls, ctx: VarContext, field: FieldSpec, exps: Exponents, coeff: Raw | int = 1
    ) -> Poly:
        return cls(ctx, field, {tuple(exps): field.coerce(coeff)})

    @classmethod
    def variable(cls, ctx: VarContext, field: FieldSpec, index: int) -> Poly:
        """The variable with 0-based ``index``."""
        return cls.monomial(ctx, field, unit_exponent(ctx.n_vars, index))

    # -- inspection -----------------------------------------------------

    @property
    def terms(self) -> Mapping[Exponents, Raw]:
        return MappingProxyType(self._terms)

    @property
    def n_vars(self) -> int:
        return self.ctx.n_vars

    @property
    def role(self) -> Role:
        return self.ctx.role

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def sorted_terms(self) -> list[tuple[Exponents, Raw]]:
        """Terms in canonical output order."""
        return sorted(self._terms.items(), key=lambda t: term_order_key(t[0]))

    def __iter__(self) -> Iterator[tuple[Exponents, Raw]]:
        return iter(self.sorted_terms())

    def coefficient(self, exps: Exponents) -> Raw:
        return self._terms.get(tuple(exps), self.field.zero)

    @property
    def degree(self) -> int:
        """Maximal total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    @property
    def order(self) -> int:
        """Minimal total degree; -1 for the zero polynomial."""
        return min((sum(e) for e in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def leading_term(self) -> tuple[Exponents, Raw]:
        """Largest term in the canonical order (highest degree, then lex-first)."""
        if not self._terms:
            raise PolynomialError("The zero polynomial has no leading term")
        exps = min(self._terms, key=lambda e: (-sum(e), tuple(-x for x in e)))
        return exps, self._terms[exps]

    def support_variables(self) -> list[int]:
        """0-based indices of variables occurring in some term."""
        return [k for k in range(self.n_vars) if any(e[k] for e in self._terms)]

    # -- arithmetic -----------------------------------------------------

    def _check_compatible(self, other: Poly) -> None:
        if self.ctx != other.ctx or self.field != other.field:
            raise ContextMismatchError(
                f"Incompatible polynomials: {self.ctx}/{self.field} vs {other.ctx}/{other.field}"
            )

    def _new(self, terms: Mapping[Exponents, Raw]) -> Poly:
        out = Poly.__new__(Poly)
        out.ctx = self.ctx
        out.field = self.field
        out._terms = {e: c for e, c in terms.items() if c}
        out._hash = None
        return out

    def __add__(self, other: Poly) -> Poly:
        self._check_compatible(other)
        f = self.field
        acc = dict(self._terms)
        for e, c in other._terms.items():
            acc[e] = f.add(acc[e], c) if e in acc else c
        return self._new(acc)

    def __neg__(self) -> Poly:
        return self._new({e: self.field.neg(c) for e, c in self._terms.items()})

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other: Poly) -> Poly:
        self._check_compatible(other)
        f = self.field
        acc: dict[Exponents, Raw] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                prod = f.mul(c1, c2)
                acc[e] = f.add(acc[e], prod) if e in acc else prod
        return self._new(acc)

    def __pow__(self, n: int) -> Poly:
        if n < 0:
            raise PolynomialError("Negative powers are not polynomials")
        result = Poly.constant(self.ctx, self.field, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c: Raw | int) -> Poly:
        c = self.field.coerce(c)
        return self._new({e: self.field.mul(c, v) for e, v in self._terms.items()})

    def mul_monomial(self, exps: Exponents, coeff: Raw | int = 1) -> Poly:
        coeff = self.field.coerce(coeff)
        return self._new(
            {
                tuple(x + y for x, y in zip(e, exps, strict=True)): self.field.mul(c, coeff)
                for e, c in self._terms.items()
            }
        )

    def divide_by_variable(self, index: int) -> Poly:
        """Exact division by the variable with 0-based ``index``."""
        out: dict[Exponents, Raw] = {}
        for e, c in self._terms.items():
            if e[index] == 0:
                raise PolynomialError(f"Term with exponents {e} is not divisible by variable {index + 1}")
            out[e[:index] + (e[index] - 1,) + e[index + 1 :]] = c
        return self._new(out)

    def truncate(self, max_degree: int) -> Poly:
        """Drop all terms of total degree above ``max_degree``."""
        return self._new({e: c for e, c in self._terms.items() if sum(e) <= max_degree})

    def homogeneous_part(self, degree: int) -> Poly:
        return self._new({e: c for e, c in self._terms.items() if sum(e) == degree})

    def monic(self) -> Poly:
        """Scale so that the leading coefficient is 1."""
        if not self._terms:
            return self
        _, lc = self.leading_term()
        return self.scale(self.field.inv(lc))

    def rename(self, ctx: VarContext, positions: Iterable[int]) -> Poly:
        """Move variable ``k`` to position ``positions[k]`` of a (larger) context."""
        positions = list(positions)
        if len(positions) != self.n_vars:
            raise PolynomialError("Variable map must list a target for every variable")
        if len(set(positions)) != len(positions):
            raise PolynomialError("Variable map must be injective")
        out: dict[Exponents, Raw] = {}
        for e, c in self._terms.items():
            target = [0] * ctx.n_vars
            for k, x in enumerate(e):
                target[positions[k]] += x
            out[tuple(target)] = c
        result = Poly.__new__(Poly)
        result.ctx = ctx
        result.field = self.field
        result._terms = out
        result._hash = None
        return result

    def with_role(self, role: Role) -> Poly:
        """Same terms, read in the ring or in the dual space."""
        return self.rename(self.ctx.with_role(role), range(self.n_vars))

    # -- comparison -----------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ctx == other.ctx and self.field == other.field and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ctx, self.field, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        from apolar.algebra.parser import format_poly

        return f"Poly({format_poly(self)!r}, {self.field})"

    def __str__(self) -> str:
        from apolar.algebra.parser import format_poly

        return format_poly(self)


def contract(f: Poly, F: Poly) -> Poly:
    """The contraction action f ∘ F of R on S.

    On monomials x^a ∘ X^b = X^(b - a) when b >= a componentwise, else 0;
    extended bilinearly. No multinomial factors appear, so the action is
    independent of the characteristic.
    """
    if f.role is not Role.RING or F.role is not Role.DUAL:
        raise ContextMismatchError("contract expects a ring polynomial acting on a dual polynomial")
    if f.n_vars != F.n_vars or f.field != F.field:
        raise ContextMismatchError(
            f"Cannot contract {f.n_vars}-variable {f.field} polynomial with "
            f"{F.n_vars}-variable {F.field} polynomial"
        )
    field = F.field
    acc: dict[Exponents, Raw] = {}
    for a, ca in f.terms.items():
        for b, cb in F.terms.items():
            if all(x <= y for x, y in zip(a, b)):
                e = tuple(y - x for x, y in zip(a, b))
                prod = field.mul(ca, cb)
                acc[e] = field.add(acc[e], prod) if e in acc else prod
    return Poly(F.ctx, field, acc)


def contract_monomial(a: Exponents, F: Poly) -> dict[Exponents, Raw]:
    """Terms of x^a ∘ F as a plain dict; the hot path of the oracle matrices."""
    out: dict[Exponents, Raw] = {}
    for b, cb in F.terms.items():
        if all(x <= y for x, y in zip(a, b)):
            out[tuple(y - x for x, y in zip(a, b))] = cb
    return out
