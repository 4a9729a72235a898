"""Exact coefficient fields: the rationals and prime fields.

A :class:`FieldSpec` describes the field and performs arithmetic on *raw*
values: :class:`fractions.Fraction` over ℚ and ``int`` residues in ``[0, p)``
over 𝔽_p. Raw values are always normalized, so the zero element is falsy in
both representations; the elimination kernels rely on this.

:class:`FieldElem` wraps a raw value together with its field for the public
surface, where mixing fields must be detected.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from apolar.errors import ApolarError

Raw = Fraction | int

MAX_MODULUS = 2**31


class FieldError(ApolarError):
    """Base exception for field arithmetic errors."""


class DivisionByZeroError(FieldError, ZeroDivisionError):
    """Raised when dividing by or inverting zero."""


class MixedFieldsError(FieldError):
    """Raised when operands belong to different fields."""


class FieldSpecError(FieldError):
    """Raised for an invalid field description (bad modulus or flag syntax)."""


def is_prime(n: int) -> bool:
    """Trial-division primality test; callers bound n by MAX_MODULUS."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The ground field: ℚ when ``modulus`` is None, otherwise 𝔽_p."""

    modulus: int | None = None

    def __post_init__(self) -> None:
        if self.modulus is not None and self.modulus > MAX_MODULUS:
            raise FieldSpecError(f"Modulus {self.modulus} exceeds the supported bound 2**31")
        if self.modulus is not None and not is_prime(self.modulus):
            raise FieldSpecError(f"Modulus {self.modulus} is not prime")

    @classmethod
    def rationals(cls) -> FieldSpec:
        return cls(None)

    @classmethod
    def prime(cls, p: int) -> FieldSpec:
        return cls(p)

    @classmethod
    def parse(cls, text: str) -> FieldSpec:
        """Parse the CLI field flag: ``q`` for ℚ, ``p:<prime>`` for 𝔽_p."""
        flag = text.strip().lower()
        if flag in ("q", "qq"):
            return cls.rationals()
        if flag.startswith("p:"):
            digits = flag[2:]
            if not digits.isdigit():
                raise FieldSpecError(f"Invalid prime field flag: {text!r}")
            return cls.prime(int(digits))
        raise FieldSpecError(f"Unknown field flag: {text!r} (expected 'q' or 'p:<prime>')")

    @property
    def is_rational(self) -> bool:
        return self.modulus is None

    @property
    def characteristic(self) -> int:
        return 0 if self.modulus is None else self.modulus

    @property
    def flag(self) -> str:
        """Inverse of :meth:`parse`."""
        return "q" if self.modulus is None else f"p:{self.modulus}"

    def __str__(self) -> str:
        return "QQ" if self.modulus is None else f"GF({self.modulus})"

    # -- raw arithmetic -------------------------------------------------

    @property
    def zero(self) -> Raw:
        return Fraction(0) if self.modulus is None else 0

    @property
    def one(self) -> Raw:
        return Fraction(1) if self.modulus is None else 1

    def coerce(self, value: int | Fraction | str) -> Raw:
        """Convert an integer, fraction or ``"num/den"`` string to a raw value."""
        if isinstance(value, str):
            value = Fraction(value)
        if self.modulus is None:
            return Fraction(value)
        if isinstance(value, Fraction):
            num = value.numerator % self.modulus
            den = value.denominator % self.modulus
            if den == 0:
                raise DivisionByZeroError(f"Denominator of {value} vanishes in {self}")
            return num * pow(den, -1, self.modulus) % self.modulus
        return int(value) % self.modulus

    def add(self, a: Raw, b: Raw) -> Raw:
        if self.modulus is None:
            return a + b
        return (a + b) % self.modulus

    def sub(self, a: Raw, b: Raw) -> Raw:
        if self.modulus is None:
            return a - b
        return (a - b) % self.modulus

    def mul(self, a: Raw, b: Raw) -> Raw:
        if self.modulus is None:
            return a * b
        return a * b % self.modulus

    def neg(self, a: Raw) -> Raw:
        if self.modulus is None:
            return -a
        return -a % self.modulus

    def inv(self, a: Raw) -> Raw:
        if not a:
            raise DivisionByZeroError(f"Inverse of zero in {self}")
        if self.modulus is None:
            return 1 / a
        return pow(int(a), -1, self.modulus)

    def div(self, a: Raw, b: Raw) -> Raw:
        return self.mul(a, self.inv(b))

    def power(self, a: Raw, n: int) -> Raw:
        if n < 0:
            return self.power(self.inv(a), -n)
        if self.modulus is None:
            return a**n
        return pow(int(a), n, self.modulus)

    def is_zero(self, a: Raw) -> bool:
        return not a

    def format(self, a: Raw) -> str:
        """Exact text form: ``"num/den"`` or an integer string."""
        return str(a)

    def elem(self, value: int | Fraction | str) -> FieldElem:
        return FieldElem(self, self.coerce(value))

    # -- sampling -------------------------------------------------------

    def draw_nonzero(self, rng: random.Random, pool_bound: int) -> Raw:
        """Draw a nonzero raw value from the coefficient pool using ``rng``."""
        if pool_bound < 1:
            raise FieldError("pool_bound must be at least 1")
        if self.modulus is None:
            magnitude = rng.randint(1, pool_bound)
            return Fraction(magnitude if rng.random() < 0.5 else -magnitude)
        return rng.randint(1, min(self.modulus - 1, pool_bound))


def sample_nonzero(spec: FieldSpec, rng_seed: int, pool_bound: int) -> FieldElem:
    """Deterministically sample a nonzero element.

    Over ℚ the value lies in ``{±1, ..., ±pool_bound}``; over 𝔽_p in
    ``{1, ..., min(p - 1, pool_bound)}``.
    """
    return FieldElem(spec, spec.draw_nonzero(random.Random(rng_seed), pool_bound))


@dataclass(frozen=True)
class FieldElem:
    """An immutable field element bound to its :class:`FieldSpec`."""

    field: FieldSpec
    value: Raw

    def _check(self, other: FieldElem | int) -> Raw:
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise MixedFieldsError(f"Cannot combine {self.field} and {other.field} elements")
            return other.value
        return self.field.coerce(other)

    def __add__(self, other: FieldElem | int) -> FieldElem:
        return FieldElem(self.field, self.field.add(self.value, self._check(other)))

    def __sub__(self, other: FieldElem | int) -> FieldElem:
        return FieldElem(self.field, self.field.sub(self.value, self._check(other)))

    def __mul__(self, other: FieldElem | int) -> FieldElem:
        return FieldElem(self.field, self.field.mul(self.value, self._check(other)))

    def __truediv__(self, other: FieldElem | int) -> FieldElem:
        return FieldElem(self.field, self.field.div(self.value, self._check(other)))

    def __rsub__(self, other: FieldElem | int) -> FieldElem:
        return FieldElem(self.field, self.field.sub(self._check(other), self.value))

    def __rtruediv__(self, other: FieldElem | int) -> FieldElem:
        return FieldElem(self.field, self.field.div(self._check(other), self.value))

    __radd__ = __add__
    __rmul__ = __mul__

    def __neg__(self) -> FieldElem:
        return FieldElem(self.field, self.field.neg(self.value))

    def __pow__(self, n: int) -> FieldElem:
        return FieldElem(self.field, self.field.power(self.value, n))

    def inv(self) -> FieldElem:
        return FieldElem(self.field, self.field.inv(self.value))

    def is_zero(self) -> bool:
        return not self.value

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise MixedFieldsError(f"Cannot compare {self.field} and {other.field} elements")
            return self.value == other.value
        if isinstance(other, (int, Fraction)):
            return self.value == self.field.coerce(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field, self.value))

    def __str__(self) -> str:
        return self.field.format(self.value)
