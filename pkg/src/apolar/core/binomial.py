"""Complete-intersection classification of binomial dual generators.

A binomial F = X^a (c1 X^bL - c2 X^bR), with bL and bR of disjoint support,
has a complete-intersection apolar algebra exactly when either both residual
monomials are single variable powers, or the right one is and
a_r + 1 >= v * b_r. In those cases the annihilator has explicit generators,
built here in internal coordinates (left support first, then right, then
inert variables) and mapped back to the caller's variables.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from enum import Enum

from apolar.algebra.field import FieldElem, FieldSpec, Raw
from apolar.algebra.polynomial import (
    ContextMismatchError,
    Exponents,
    Poly,
    Role,
    VarContext,
    contract,
    divides,
    term_order_key,
    unit_exponent,
)
from apolar.core.apolarity import ZeroPolynomialError, generated_truncated
from apolar.errors import ApolarError

logger = logging.getLogger(__name__)

LITERAL_V_CAP = 10**6


class BinomialError(ApolarError):
    """Base exception for binomial classification errors."""


class NotBinomialError(BinomialError):
    """Raised for inputs with three or more terms."""

    exit_code = 3


class EmptyLeftSupportError(BinomialError):
    """Raised when v is requested for a normal form without left support."""


class NotCompleteIntersectionError(BinomialError):
    """Raised when generators are requested for a non-CI binomial."""


class WrongCaseError(BinomialError):
    """Raised when the determinant certificate is requested outside its case."""


class CertificateError(BinomialError):
    """Raised when an exact identity that must hold fails."""


@dataclass(frozen=True)
class MonomialForm:
    """A one-term dual generator c * X^a; always a complete intersection."""

    source: Poly
    exponents: Exponents
    coefficient: Raw


@dataclass(frozen=True)
class BinomialNormalForm:
    """X^a (c1 X^b_left - c2 X^b_right) in internal coordinates.

    Internal position k is the caller's variable ``perm[k]``. Left support
    variables come first, then right support, then inert ones; each block
    keeps the caller's order.
    """

    source: Poly
    field: FieldSpec
    a: Exponents
    b_left: Exponents
    b_right: Exponents
    c1: Raw
    c2: Raw
    perm: tuple[int, ...]
    swapped: bool

    @property
    def n_vars(self) -> int:
        return len(self.a)

    @property
    def d1(self) -> int:
        return sum(1 for x in self.b_left if x)

    @property
    def d2(self) -> int:
        return sum(1 for x in self.b_right if x)

    @property
    def left(self) -> range:
        return range(self.d1)

    @property
    def right(self) -> range:
        return range(self.d1, self.d1 + self.d2)

    @property
    def inert(self) -> range:
        return range(self.d1 + self.d2, self.n_vars)

    @property
    def ring(self) -> VarContext:
        return VarContext(self.n_vars, Role.RING)

    def to_user(self, f: Poly) -> Poly:
        """Map an internal polynomial to the caller's variables."""
        return f.rename(f.ctx, self.perm)

    def reconstruct(self) -> Poly:
        """The input polynomial, up to the sign recorded by ``swapped``."""
        fld = self.field
        dual = VarContext(self.n_vars, Role.DUAL)
        left = tuple(x + y for x, y in zip(self.a, self.b_left))
        right = tuple(x + y for x, y in zip(self.a, self.b_right))
        inner = Poly(dual, fld, [(left, self.c1), (right, fld.neg(self.c2))])
        out = self.to_user(inner)
        return -out if self.swapped else out

    def summary(self) -> dict[str, object]:
        fld = self.field
        return {
            "a": list(self.a),
            "b_left": list(self.b_left),
            "b_right": list(self.b_right),
            "c1": fld.format(self.c1),
            "c2": fld.format(self.c2),
            "perm": [k + 1 for k in self.perm],
            "swapped": self.swapped,
            "d1": self.d1,
            "d2": self.d2,
        }


NormalForm = BinomialNormalForm | MonomialForm


def normalize(F: Poly) -> NormalForm:
    """Bring a one- or two-term dual polynomial to the classification shape.

    The first term in canonical order is X^(a+b_left); sides are exchanged
    (negating F) when needed so that d1 >= d2.

    Raises:
        ZeroPolynomialError: If F is zero.
        NotBinomialError: If F has three or more terms.
    """
    if F.role is not Role.DUAL:
        raise ContextMismatchError("normalize expects a dual (uppercase) polynomial")
    if F.is_zero():
        raise ZeroPolynomialError("The zero polynomial has no annihilator to classify")
    if len(F) > 2:
        raise NotBinomialError(f"{F} has {len(F)} terms; expected at most two")
    terms = F.sorted_terms()
    if len(terms) == 1:
        exps, coeff = terms[0]
        return MonomialForm(F, exps, coeff)

    fld = F.field
    (m1, e1), (m2, e2) = terms
    a = tuple(min(x, y) for x, y in zip(m1, m2))
    b_left = tuple(x - y for x, y in zip(m1, a))
    b_right = tuple(x - y for x, y in zip(m2, a))
    c1, c2 = e1, fld.neg(e2)
    swapped = False
    if sum(1 for x in b_left if x) < sum(1 for x in b_right if x):
        b_left, b_right = b_right, b_left
        c1, c2 = c2, c1
        swapped = True

    n = F.n_vars
    perm = (
        [k for k in range(n) if b_left[k]]
        + [k for k in range(n) if b_right[k]]
        + [k for k in range(n) if not b_left[k] and not b_right[k]]
    )
    nf = BinomialNormalForm(
        source=F,
        field=fld,
        a=tuple(a[k] for k in perm),
        b_left=tuple(b_left[k] for k in perm),
        b_right=tuple(b_right[k] for k in perm),
        c1=c1,
        c2=c2,
        perm=tuple(perm),
        swapped=swapped,
    )
    logger.debug(f"Normalized {F}: d1={nf.d1}, d2={nf.d2}, swapped={swapped}")
    return nf


def compute_v(nf: BinomialNormalForm) -> int:
    """v = min over the left support of floor(a_j / b_j) + 1."""
    if nf.d1 == 0:
        raise EmptyLeftSupportError("v is undefined without a left residual monomial")
    return min(nf.a[j] // nf.b_left[j] for j in nf.left) + 1


def literal_v(nf: BinomialNormalForm, cap: int = LITERAL_V_CAP) -> int:
    """v from its definition: the first power of x^b_left killing X^a on the left support."""
    if nf.d1 == 0:
        raise EmptyLeftSupportError("v is undefined without a left residual monomial")
    a_left = tuple(nf.a[j] for j in nf.left)
    b_left = tuple(nf.b_left[j] for j in nf.left)
    i = 1
    while i <= cap:
        if not divides(tuple(i * b for b in b_left), a_left):
            return i
        i += 1
    raise BinomialError(f"v exceeds the loop cap {cap}")


def threshold(a: int, b: int, cap: int = LITERAL_V_CAP) -> int:
    """min{i : a + 1 <= i * b}, by counting."""
    i = 1
    while i * b < a + 1:
        i += 1
        if i > cap:
            raise BinomialError(f"Threshold exceeds the loop cap {cap}")
    return i


class Verdict(Enum):
    CI_CASE_A = "CI_case_a"
    CI_CASE_B = "CI_case_b"
    NOT_CI_D2_BIG = "NotCI_d2_big"
    NOT_CI_INEQUALITY = "NotCI_inequality"
    OUTSIDE_THEOREM_D2_ZERO = "OutsideTheorem_d2_zero"
    DEGENERATE_MONOMIAL = "Degenerate_monomial"


@dataclass
class Classification:
    verdict: Verdict
    v: int
    w: int | None = None
    details: dict[str, object] = field(default_factory=dict)

    @property
    def is_ci(self) -> bool:
        return self.verdict in (Verdict.CI_CASE_A, Verdict.CI_CASE_B)

    @property
    def theorem_applies(self) -> bool:
        return self.verdict not in (Verdict.OUTSIDE_THEOREM_D2_ZERO, Verdict.DEGENERATE_MONOMIAL)

    @property
    def case(self) -> str | None:
        """Generator shape: ``2a``, ``2b``, ``2c`` or ``3`` for CI verdicts."""
        return self.details.get("case")  # type: ignore[return-value]


def classify(nf: NormalForm) -> Classification:
    if isinstance(nf, MonomialForm):
        return Classification(Verdict.DEGENERATE_MONOMIAL, v=0, details={"case": None})
    v = compute_v(nf)
    closed, literal = v, literal_v(nf)
    if closed != literal:
        raise CertificateError(f"Closed-form v={closed} disagrees with the contraction loop v={literal}")
    details: dict[str, object] = {"d1": nf.d1, "d2": nf.d2, "case": None}

    if nf.d2 == 0:
        return Classification(Verdict.OUTSIDE_THEOREM_D2_ZERO, v=v, details=details)
    if nf.d2 >= 2:
        return Classification(Verdict.NOT_CI_D2_BIG, v=v, details=details)

    r = nf.d1
    w = nf.a[r] // nf.b_right[r] + 1
    if nf.d1 == 1:
        v1 = threshold(nf.a[0], nf.b_left[0])
        if v1 != v:
            raise CertificateError(f"v={v} disagrees with the one-variable threshold {v1}")
        details["case"] = "2a" if v < w else "2b" if v > w else "2c"
        return Classification(Verdict.CI_CASE_A, v=v, w=w, details=details)

    lhs, rhs = nf.a[r] + 1, v * nf.b_right[r]
    details.update({"lhs": lhs, "rhs": rhs})
    if lhs >= rhs:
        details["case"] = "3"
        return Classification(Verdict.CI_CASE_B, v=v, w=w, details=details)
    return Classification(Verdict.NOT_CI_INEQUALITY, v=v, w=w, details=details)


# -- generator construction -------------------------------------------------


def _power(nf: BinomialNormalForm, k: int, e: int) -> Poly:
    return Poly.monomial(nf.ring, nf.field, unit_exponent(nf.n_vars, k, e))


def _binomial_sum(
    nf: BinomialNormalForm,
    count: int,
    step: tuple[int, int],
    start: tuple[int, int],
    *,
    c1_descending: bool = True,
    left_power: Exponents | None = None,
) -> Poly:
    """Sum over i = 0..count of a coefficient times x_left^(s1 + i*t1) x_right^(s2 + i*t2).

    The coefficient is c1^(count-i) c2^i, or c1^i c2^(count-i) when
    ``c1_descending`` is false. ``left_power`` replaces the single left
    variable by the full left residual monomial (case 3).
    """
    fld = nf.field
    r = nf.d1
    terms: list[tuple[Exponents, Raw]] = []
    for i in range(count + 1):
        p1, p2 = (count - i, i) if c1_descending else (i, count - i)
        c = fld.mul(fld.power(nf.c1, p1), fld.power(nf.c2, p2))
        e = [0] * nf.n_vars
        left_exp = start[0] + i * step[0]
        right_exp = start[1] + i * step[1]
        if left_power is None:
            e[0] = left_exp
        else:
            for j in nf.left:
                e[j] = left_power[j] * left_exp
        e[r] = right_exp
        if min(e) < 0:
            raise CertificateError(f"Negative exponent {e} in a generator sum")
        terms.append((tuple(e), c))
    return Poly(nf.ring, fld, terms)


def _two_variable_generators(nf: BinomialNormalForm, cls: Classification) -> dict[str, Poly]:
    """The two core generators (and their names) for d1 = d2 = 1."""
    a1, a2 = nf.a[0], nf.a[1]
    b1, b2 = nf.b_left[0], nf.b_right[1]
    v, w = cls.v, cls.w
    assert w is not None

    if cls.case == "2a":
        # c1^(v-i) c2^i x1^(i b1) x2^(a2+1-i b2)
        p = _binomial_sum(nf, v, (b1, -b2), (0, a2 + 1))
        return {"x1_power": _power(nf, 0, a1 + b1 + 1), "p": p}
    if cls.case == "2b":
        v2 = threshold(a2, b2)
        if v2 != w:
            raise CertificateError(f"Two-variable threshold {v2} disagrees with w={w}")
        # c1^i c2^(w-i) x1^(a1+1-i b1) x2^(i b2)
        p = _binomial_sum(nf, w, (-b1, b2), (a1 + 1, 0), c1_descending=False)
        return {"x2_power": _power(nf, 1, a2 + b2 + 1), "p": p}
    # 2c: p = sum c1^(v-i) c2^i x1^(i b1) x2^((v-i) b2)
    p = _binomial_sum(nf, v, (b1, -b2), (0, v * b2))
    # q = sum c1^(v-1-i) c2^i x1^(a1+1-(v-1-i) b1) x2^(a2+1-i b2)
    q = _binomial_sum(nf, v - 1, (b1, -b2), (a1 + 1 - (v - 1) * b1, a2 + 1))
    return {"p": p, "q": q}


def _case_three_generators(nf: BinomialNormalForm, cls: Classification) -> list[Poly]:
    r = nf.d1
    gens = [_power(nf, j, nf.a[j] + nf.b_left[j] + 1) for j in nf.left]
    v = cls.v
    b_r = nf.b_right[r]
    gens.append(_binomial_sum(nf, v, (1, -b_r), (0, nf.a[r] + 1), left_power=nf.b_left))
    return gens


def augment_variables(gens: Sequence[Poly], extra: Sequence[int]) -> list[Poly]:
    """Generators of Ann(X^extra * G) from generators of Ann(G).

    ``extra`` lists the exponents of new variables appended after the N
    variables of G; each contributes x^(extra_j + 1).
    """
    gens = list(gens)
    if not extra:
        return gens
    if not gens:
        raise BinomialError("Cannot infer the ring of an empty generator list")
    n = gens[0].n_vars
    fld = gens[0].field
    wide = VarContext(n + len(extra), Role.RING)
    out = [g.rename(wide, range(n)) for g in gens]
    for j, e in enumerate(extra):
        out.append(Poly.monomial(wide, fld, unit_exponent(wide.n_vars, n + j, e + 1)))
    return out


def _inert_powers(nf: BinomialNormalForm) -> list[Poly]:
    return [_power(nf, j, nf.a[j] + 1) for j in nf.inert]


def construct_annihilator(nf: NormalForm, cls: Classification | None = None) -> list[Poly]:
    """Explicit generators of Ann_R(F) for a CI verdict, in the caller's variables.

    Raises:
        NotCompleteIntersectionError: If the verdict is not CI.
    """
    if isinstance(nf, MonomialForm):
        ring = nf.source.ctx.with_role(Role.RING)
        return [
            Poly.monomial(ring, nf.source.field, unit_exponent(ring.n_vars, j, e + 1))
            for j, e in enumerate(nf.exponents)
        ]
    cls = cls or classify(nf)
    if not cls.is_ci:
        raise NotCompleteIntersectionError(f"No generators to construct: verdict {cls.verdict.value}")

    if cls.verdict is Verdict.CI_CASE_A:
        core = list(_two_variable_generators(nf, cls).values())
    else:
        core = _case_three_generators(nf, cls)
    internal = core + _inert_powers(nf)
    if len(internal) != nf.n_vars:
        raise CertificateError(f"Constructed {len(internal)} generators for {nf.n_vars} variables")
    logger.debug(f"Case {cls.case}: constructed {len(internal)} generators")
    return [nf.to_user(g) for g in internal]


def canonical_generators(gens: Sequence[Poly]) -> list[Poly]:
    """Monic generators sorted by leading monomial, for display and set comparison."""
    monic = [g.monic() for g in gens if not g.is_zero()]
    return sorted(monic, key=lambda g: term_order_key(g.leading_term()[0]))


# -- certificates -------------------------------------------------------------


@dataclass
class DetCertificate:
    """The 2x2 matrix A with (x1, x2) A = (p, q) and det A contracted against F."""

    matrix: tuple[tuple[Poly, Poly], tuple[Poly, Poly]]
    determinant: Poly
    value: FieldElem
    value_on_f: FieldElem
    expected: FieldElem
    primary_identities: tuple[bool, bool]


def det_certificate(nf: NormalForm, cls: Classification | None = None) -> DetCertificate:
    """Certify (p, q) = Ann(F) in two variables when v1 = v2.

    ``value`` is det A ∘ (F / c1), which must equal c1^(v-1) c2^v;
    ``value_on_f`` is det A ∘ F itself.

    Raises:
        WrongCaseError: Unless N = 2 and the case is 2c.
        CertificateError: If an identity fails.
    """
    if isinstance(nf, MonomialForm) or nf.n_vars != 2:
        raise WrongCaseError("The determinant certificate needs a two-variable binomial")
    cls = cls or classify(nf)
    if cls.case != "2c":
        raise WrongCaseError(f"The determinant certificate needs case 2c, got {cls.case}")

    fld = nf.field
    ring = nf.ring
    gens = _two_variable_generators(nf, cls)
    p, q = gens["p"], gens["q"]
    v = cls.v
    a1, a2 = nf.a
    b1, b2 = nf.b_left[0], nf.b_right[1]
    c2v = fld.power(nf.c2, v)
    zero = Poly.zero(ring, fld)
    x1, x2 = Poly.variable(ring, fld, 0), Poly.variable(ring, fld, 1)

    a11 = Poly.monomial(ring, fld, (v * b1 - 1, 0), c2v)
    a21 = (p - Poly.monomial(ring, fld, (v * b1, 0), c2v)).divide_by_variable(1)
    a22 = q.divide_by_variable(1)
    if x1 * a11 + x2 * a21 != p or x2 * a22 != q:
        raise CertificateError("(x1, x2) A does not reproduce (p, q)")
    det = a11 * a22

    dual = VarContext(2, Role.DUAL)
    F = Poly(dual, fld, [((a1 + b1, a2), nf.c1), ((a1, a2 + b2), fld.neg(nf.c2))])
    image = contract(det, F)
    value_on_f = image.coefficient((0, 0))
    if not value_on_f or image != Poly.constant(dual, fld, value_on_f):
        raise CertificateError(f"det A ∘ F = {image} is not a nonzero constant")
    value = contract(det, F.scale(fld.inv(nf.c1))).coefficient((0, 0))
    expected = fld.mul(fld.power(nf.c1, v - 1), c2v)
    if value != expected:
        raise CertificateError(f"det A ∘ F/c1 = {fld.format(value)}, expected {fld.format(expected)}")

    shift = Poly.monomial(ring, fld, (v * b1 - a1 - 1, v * b2 - a2 - 1))
    first = x1**b1 * p - (shift * q).scale(nf.c1) == Poly.monomial(ring, fld, ((v + 1) * b1, 0), c2v)
    second = x2**b2 * p - (shift * q).scale(nf.c2) == Poly.monomial(
        ring, fld, (0, (v + 1) * b2), fld.power(nf.c1, v)
    )
    if not (first and second):
        raise CertificateError("The primary identities for (p, q) do not hold")

    return DetCertificate(
        matrix=((a11, zero), (a21, a22)),
        determinant=det,
        value=FieldElem(fld, value),
        value_on_f=FieldElem(fld, value_on_f),
        expected=FieldElem(fld, expected),
        primary_identities=(first, second),
    )


@dataclass(frozen=True)
class MembershipFact:
    element: Poly
    annihilates: bool
    in_ideal: bool

    @property
    def holds(self) -> bool:
        return self.annihilates and self.in_ideal


def membership_facts(nf: NormalForm, cls: Classification | None = None) -> list[MembershipFact]:
    """For case 3: x_i^(a_i+1) x_r^(a_r+1) and x_r^(a_r+b_r+1) lie in the constructed ideal."""
    if isinstance(nf, MonomialForm):
        raise WrongCaseError("Membership facts apply to case 3 binomials")
    cls = cls or classify(nf)
    if cls.case != "3":
        raise WrongCaseError(f"Membership facts apply to case 3, got {cls.case}")
    fld = nf.field
    r = nf.d1
    internal: list[Poly] = []
    for i in nf.left:
        e = [0] * nf.n_vars
        e[i] = nf.a[i] + 1
        e[r] = nf.a[r] + 1
        internal.append(Poly.monomial(nf.ring, fld, tuple(e)))
    internal.append(Poly.monomial(nf.ring, fld, unit_exponent(nf.n_vars, r, nf.a[r] + nf.b_right[r] + 1)))

    F = nf.source
    gens = construct_annihilator(nf, cls)
    ideal = generated_truncated(gens, F.n_vars, F.degree + 2, fld)
    facts = []
    for f in internal:
        g = nf.to_user(f)
        facts.append(MembershipFact(g, contract(g, F).is_zero(), ideal.contains(g)))
    return facts
