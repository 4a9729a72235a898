"""Tests for sparse polynomials and the contraction action."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis.strategies import integers, tuples

from apolar.algebra.field import FieldSpec
from apolar.algebra.polynomial import (
    ContextMismatchError,
    Poly,
    PolynomialError,
    Role,
    VarContext,
    contract,
    contract_monomial,
    divides,
    monomials_of_degree,
    monomials_up_to,
    term_order_key,
)

QQ = FieldSpec.rationals()
RING2 = VarContext(2, Role.RING)
DUAL2 = VarContext(2, Role.DUAL)

exponent_pairs = tuples(integers(min_value=0, max_value=3), integers(min_value=0, max_value=3))


class TestMonomialOrder:
    """Tests for the canonical monomial ordering."""

    def test_degree_two_in_two_variables(self):
        assert monomials_of_degree(2, 2) == ((2, 0), (1, 1), (0, 2))

    def test_counts(self):
        assert len(monomials_of_degree(3, 2)) == 6
        assert len(monomials_up_to(2, 2)) == 6

    def test_order_key_is_graded(self):
        assert term_order_key((0, 1)) < term_order_key((2, 0))
        assert term_order_key((1, 0)) < term_order_key((0, 1))

    def test_invalid_request(self):
        with pytest.raises(PolynomialError):
            monomials_of_degree(0, 2)

    def test_divides(self):
        assert divides((1, 0), (2, 1))
        assert not divides((0, 2), (2, 1))


class TestPoly:
    """Tests for Poly construction and arithmetic."""

    def test_zero_coefficients_dropped(self, ring):
        f = ring("x1 + x2 - x1", 2)
        assert f.terms == {(0, 1): Fraction(1)}
        assert len(f) == 1

    def test_arithmetic(self, ring):
        x1, x2 = ring("x1", 2), ring("x2", 2)
        assert (x1 + x2) * (x1 - x2) == ring("x1^2 - x2^2", 2)
        assert (x1 + x2) ** 2 == ring("x1^2 + 2*x1*x2 + x2^2", 2)

    def test_power_in_characteristic_two(self, ring, F2):
        ell = ring("x1 + x2", 2, F2)
        assert ell**2 == ring("x1^2 + x2^2", 2, F2)

    def test_degree_and_order(self, dual):
        F = dual("X1^2*X2 - X2")
        assert F.degree == 3
        assert F.order == 1
        assert not F.is_homogeneous()

    def test_zero_polynomial(self):
        zero = Poly.zero(DUAL2, QQ)
        assert zero.is_zero()
        assert zero.degree == -1
        with pytest.raises(PolynomialError):
            zero.leading_term()

    def test_leading_term(self, ring):
        f = ring("x2 + x1*x2 + 3*x1^2", 2)
        assert f.leading_term() == ((2, 0), Fraction(3))
        assert f.monic().leading_term() == ((2, 0), Fraction(1))

    def test_sorted_terms(self, ring):
        f = ring("x1^2 + x2 + x1", 2)
        assert [e for e, _ in f.sorted_terms()] == [(1, 0), (0, 1), (2, 0)]

    def test_mixed_contexts(self, ring, dual):
        with pytest.raises(ContextMismatchError):
            ring("x1", 2) + dual("X1", nvars=2)

    def test_negative_exponent(self):
        with pytest.raises(PolynomialError, match="Negative"):
            Poly(DUAL2, QQ, {(-1, 0): 1})

    def test_wrong_length(self):
        with pytest.raises(PolynomialError):
            Poly(DUAL2, QQ, {(1,): 1})

    def test_divide_by_variable(self, ring):
        assert ring("x1*x2 + x2^2", 2).divide_by_variable(1) == ring("x1 + x2", 2)
        with pytest.raises(PolynomialError):
            ring("x1 + x2", 2).divide_by_variable(1)

    def test_rename_into_larger_context(self, ring):
        f = ring("x1 + x2^2", 2)
        wide = VarContext(3, Role.RING)
        assert f.rename(wide, [2, 0]) == ring("x3 + x1^2", 3)

    def test_rename_must_be_injective(self, ring):
        with pytest.raises(PolynomialError, match="injective"):
            ring("x1 + x2", 2).rename(VarContext(2, Role.RING), [0, 0])

    def test_with_role(self, dual, ring):
        assert dual("X1 - X2").with_role(Role.RING) == ring("x1 - x2", 2)

    def test_hashable(self, ring):
        assert len({ring("x1 + x2", 2), ring("x2 + x1", 2)}) == 1


class TestContraction:
    """Tests for f ∘ F."""

    def test_monomial(self, ring, dual):
        assert contract(ring("x1", 2), dual("X1^2*X2")) == dual("X1*X2")

    def test_vanishes_when_not_divisible(self, ring, dual):
        assert contract(ring("x1^2", 2), dual("X1*X2")).is_zero()

    def test_no_factorials(self, ring, dual):
        assert contract(ring("x1^3", 1), dual("X1^3")) == dual("1", nvars=1)

    def test_binomial_linear_form(self, ring, dual):
        F = dual("X1 - X2")
        assert contract(ring("x1 + x2", 2), F).is_zero()
        assert contract(ring("x1", 2), F) == dual("1", nvars=2)

    def test_requires_ring_on_dual(self, ring, dual):
        with pytest.raises(ContextMismatchError):
            contract(dual("X1", nvars=2), dual("X1", nvars=2))
        with pytest.raises(ContextMismatchError):
            contract(ring("x1", 1), dual("X1", nvars=2))

    def test_contract_monomial_dict(self, dual):
        assert contract_monomial((0, 1), dual("X1*X2 + X1")) == {(1, 0): Fraction(1)}

    @given(exponent_pairs, exponent_pairs, exponent_pairs)
    @settings(deadline=None)
    def test_action_is_multiplicative(self, a, b, c):
        f = Poly.monomial(RING2, QQ, a)
        g = Poly.monomial(RING2, QQ, b)
        F = Poly.monomial(DUAL2, QQ, c)
        assert contract(f * g, F) == contract(f, contract(g, F))
