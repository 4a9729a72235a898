"""Tests for exact coefficient fields."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis.strategies import integers

from apolar.algebra.field import (
    DivisionByZeroError,
    FieldElem,
    FieldError,
    FieldSpec,
    FieldSpecError,
    MixedFieldsError,
    Raw,
    sample_nonzero,
)


class TestFieldSpecParsing:
    """Tests for the --field flag."""

    def test_rationals(self):
        assert FieldSpec.parse("q").is_rational
        assert FieldSpec.parse("QQ").is_rational

    def test_prime(self):
        fld = FieldSpec.parse("p:7")
        assert fld.modulus == 7
        assert fld.characteristic == 7

    @pytest.mark.parametrize("flag", ["q", "p:2", "p:101"])
    def test_flag_inverts_parse(self, flag):
        assert FieldSpec.parse(flag).flag == flag

    def test_composite_modulus(self):
        with pytest.raises(FieldSpecError, match="not prime"):
            FieldSpec.parse("p:8")

    @pytest.mark.parametrize("flag", ["r", "p:", "p:x", "p7"])
    def test_bad_flags(self, flag):
        with pytest.raises(FieldSpecError):
            FieldSpec.parse(flag)

    def test_str(self, QQ, F7):
        assert str(QQ) == "QQ"
        assert str(F7) == "GF(7)"

    def test_modulus_too_large(self):
        with pytest.raises(FieldSpecError, match="exceeds"):
            FieldSpec.parse("p:2305843009213693951")

    def test_largest_supported_prime(self):
        assert FieldSpec.parse("p:2147483647").modulus == 2**31 - 1


class TestRawArithmetic:
    """Tests for arithmetic on raw values."""

    def test_prime_inverse(self, F7):
        assert F7.inv(3) == 5

    def test_rational_inverse(self, QQ):
        assert QQ.inv(Fraction(2, 3)) == Fraction(3, 2)

    def test_coerce_fraction_mod_p(self, F7):
        assert F7.coerce(Fraction(1, 2)) == 4

    def test_coerce_negative(self, F7):
        assert F7.coerce(-1) == 6

    def test_coerce_string(self, QQ):
        assert QQ.coerce("3/4") == Fraction(3, 4)

    def test_denominator_vanishing_mod_p(self, F7):
        with pytest.raises(DivisionByZeroError):
            F7.coerce(Fraction(1, 7))

    def test_inverse_of_zero(self, QQ, F2):
        with pytest.raises(DivisionByZeroError):
            QQ.inv(QQ.zero)
        with pytest.raises(ZeroDivisionError):
            F2.inv(0)

    def test_negative_power(self, F7):
        assert F7.power(3, -1) == 5
        assert F7.power(3, 6) == 1

    def test_zero_is_falsy(self, QQ, F7):
        assert not QQ.zero
        assert not F7.zero
        assert QQ.is_zero(QQ.sub(QQ.one, QQ.one))

    def test_format(self, QQ):
        assert QQ.format(Fraction(-1, 2)) == "-1/2"
        assert QQ.format(Fraction(3)) == "3"

    @given(integers(min_value=1, max_value=96))
    @settings(deadline=None)
    def test_inverse_property_mod_p(self, a):
        fld = FieldSpec.prime(97)
        assert fld.mul(a, fld.inv(a)) == 1

    @given(integers(min_value=-50, max_value=50), integers(min_value=1, max_value=50))
    @settings(deadline=None)
    def test_division_roundtrip_rationals(self, num, den):
        fld = FieldSpec.rationals()
        x = Fraction(num, den)
        y = Fraction(den, 7)
        assert fld.mul(fld.div(x, y), y) == x


class TestFieldElem:
    """Tests for the bound element wrapper."""

    def test_operators(self, F7):
        x = F7.elem(3)
        assert x + 5 == 1
        assert x * 5 == 1
        assert x / 3 == 1
        assert -x == 4
        assert x**2 == 2
        assert x.inv() == 5

    def test_raw_values_match_alias(self, QQ, F7):
        assert isinstance(QQ.one, Raw)
        assert isinstance(F7.one, Raw)
        assert isinstance(F7.elem(3).value, Raw)

    def test_reflected_operators(self, F7, QQ):
        x = F7.elem(3)
        assert 1 - x == 5
        assert 1 / x == 5
        assert 2 / QQ.elem(4) == Fraction(1, 2)
        assert 1 - QQ.elem("1/3") == Fraction(2, 3)

    def test_mixed_fields(self, F2, F7):
        with pytest.raises(MixedFieldsError):
            F2.elem(1) + F7.elem(1)

    def test_compare_with_int(self, QQ):
        assert QQ.elem("1/2") * 2 == 1

    def test_str(self, QQ):
        assert str(FieldElem(QQ, Fraction(5, 3))) == "5/3"


class TestSampling:
    """Tests for nonzero coefficient sampling."""

    def test_deterministic(self, QQ):
        assert sample_nonzero(QQ, 11, 5) == sample_nonzero(QQ, 11, 5)

    def test_rational_pool(self, QQ):
        rng = random.Random(0)
        values = {QQ.draw_nonzero(rng, 3) for _ in range(200)}
        assert values <= {Fraction(k) for k in (-3, -2, -1, 1, 2, 3)}
        assert Fraction(0) not in values

    def test_prime_pool(self, F2):
        rng = random.Random(0)
        assert {F2.draw_nonzero(rng, 5) for _ in range(20)} == {1}

    def test_bad_pool(self, QQ):
        with pytest.raises(FieldError, match="pool_bound"):
            QQ.draw_nonzero(random.Random(0), 0)
