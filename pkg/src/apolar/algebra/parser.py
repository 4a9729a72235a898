"""Text input and canonical output for polynomials.

Grammar::

    poly   := ["-"] term (("+" | "-") term)*
    term   := coeff ["*"] factor ("*"? factor)* | coeff | factor ("*"? factor)*
    factor := ("x" | "X") index ["^" exponent]
    coeff  := integer ["/" integer]

Whitespace is insignificant. Lowercase letters give a ring polynomial,
uppercase a dual one; one polynomial may not mix them. Variables are
1-indexed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from apolar.algebra.field import FieldSpec, Raw
from apolar.algebra.polynomial import Exponents, Poly, PolynomialError, Role, VarContext

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<var>[xX])(?P<index>\d+)
  | (?P<int>\d+)
  | (?P<op>[-+*/^])
    """,
    re.VERBOSE,
)


class PolySyntaxError(PolynomialError):
    """Raised for malformed polynomial text; ``offset`` is a byte offset."""

    def __init__(self, message: str, text: str = "", position: int = 0):
        self.offset = len(text[:position].encode("utf-8"))
        super().__init__(f"{message} at byte {self.offset}")


class MixedCaseError(PolySyntaxError):
    """Raised when ring (x) and dual (X) variables appear together."""


class IndexZeroError(PolySyntaxError):
    """Raised for a variable index below 1."""


@dataclass(frozen=True)
class _Token:
    kind: str
    value: str
    pos: int
    index: int = 0


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise PolySyntaxError(f"Unexpected character {text[pos]!r}", text, pos)
        if m.lastgroup == "ws":
            pass
        elif m.group("var"):
            index = int(m.group("index"))
            if index < 1:
                raise IndexZeroError("Variables are 1-indexed", text, pos)
            tokens.append(_Token("var", m.group("var"), pos, index))
        elif m.group("int") is not None:
            tokens.append(_Token("int", m.group("int"), pos))
        else:
            tokens.append(_Token("op", m.group("op"), pos))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.letter: str | None = None
        self.terms: list[tuple[dict[int, int], Fraction]] = []

    def peek(self) -> _Token | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def at_op(self, *ops: str) -> bool:
        tok = self.peek()
        return tok is not None and tok.kind == "op" and tok.value in ops

    def fail(self, message: str) -> PolySyntaxError:
        tok = self.peek()
        return PolySyntaxError(message, self.text, tok.pos if tok else len(self.text))

    def parse(self) -> None:
        if not self.tokens:
            raise PolySyntaxError("Empty polynomial", self.text, 0)
        sign = 1
        if self.at_op("-", "+"):
            sign = -1 if self.peek().value == "-" else 1  # type: ignore[union-attr]
            self.i += 1
        self.term(sign)
        while self.peek() is not None:
            if not self.at_op("+", "-"):
                raise self.fail("Expected '+' or '-'")
            sign = -1 if self.tokens[self.i].value == "-" else 1
            self.i += 1
            self.term(sign)

    def term(self, sign: int) -> None:
        coeff = Fraction(sign)
        exps: dict[int, int] = {}
        tok = self.peek()
        if tok is None:
            raise self.fail("Expected a term")
        has_coeff = tok.kind == "int"
        if has_coeff:
            coeff *= self.coefficient()
            if self.at_op("*"):
                self.i += 1
                if self.peek() is None or self.peek().kind != "var":  # type: ignore[union-attr]
                    raise self.fail("Expected a variable after '*'")
        if self.peek() is not None and self.peek().kind == "var":  # type: ignore[union-attr]
            self.factor(exps)
            while True:
                if self.at_op("*"):
                    self.i += 1
                    if self.peek() is None or self.peek().kind != "var":  # type: ignore[union-attr]
                        raise self.fail("Expected a variable after '*'")
                    self.factor(exps)
                elif self.peek() is not None and self.peek().kind == "var":  # type: ignore[union-attr]
                    self.factor(exps)
                else:
                    break
        elif not has_coeff:
            raise self.fail("Expected a coefficient or a variable")
        self.terms.append((exps, coeff))

    def coefficient(self) -> Fraction:
        num = int(self.tokens[self.i].value)
        self.i += 1
        if self.at_op("/"):
            self.i += 1
            tok = self.peek()
            if tok is None or tok.kind != "int":
                raise self.fail("Expected a denominator")
            den = int(tok.value)
            if den == 0:
                raise self.fail("Zero denominator")
            self.i += 1
            return Fraction(num, den)
        return Fraction(num)

    def factor(self, exps: dict[int, int]) -> None:
        tok = self.tokens[self.i]
        if self.letter is None:
            self.letter = tok.value
        elif tok.value != self.letter:
            raise MixedCaseError("Ring (x) and dual (X) variables are mixed", self.text, tok.pos)
        self.i += 1
        power = 1
        if self.at_op("^"):
            self.i += 1
            nxt = self.peek()
            if nxt is None or nxt.kind != "int":
                raise self.fail("Expected an exponent")
            power = int(nxt.value)
            self.i += 1
        exps[tok.index] = exps.get(tok.index, 0) + power


def parse_poly(
    text: str,
    field: FieldSpec | None = None,
    nvars: int | None = None,
    role: Role | None = None,
) -> Poly:
    """Parse polynomial text.

    The number of variables is the largest index present unless ``nvars``
    is given. The letter case selects ring or dual; text without variables
    falls back to ``role`` (dual by default).
    """
    field = field or FieldSpec.rationals()
    parser = _Parser(text)
    parser.parse()

    largest = max((k for exps, _ in parser.terms for k in exps), default=1)
    if nvars is None:
        nvars = largest
    elif largest > nvars:
        raise PolySyntaxError(f"Variable index {largest} exceeds --nvars {nvars}", text, 0)

    if parser.letter is not None:
        parsed_role = Role.RING if parser.letter == "x" else Role.DUAL
        if role is not None and role is not parsed_role:
            raise MixedCaseError(f"Expected a {role.value} polynomial", text, 0)
        role = parsed_role
    ctx = VarContext(nvars, role or Role.DUAL)

    terms: list[tuple[Exponents, Raw]] = []
    for exps, coeff in parser.terms:
        vector = tuple(exps.get(k + 1, 0) for k in range(nvars))
        terms.append((vector, field.coerce(coeff)))
    return Poly(ctx, field, terms)


def format_monomial(exps: Exponents, role: Role) -> str:
    parts = []
    for k, e in enumerate(exps):
        if e == 1:
            parts.append(f"{role.letter}{k + 1}")
        elif e > 1:
            parts.append(f"{role.letter}{k + 1}^{e}")
    return "*".join(parts)


def format_poly(f: Poly) -> str:
    """Canonical text: graded-lex order, degree ascending.

    The text does not record the number of variables: ``parse_poly`` inverts
    it only when given ``nvars=f.n_vars``, otherwise trailing variables that
    do not occur are dropped. Corpus records store ``n_vars`` for this reason.
    """
    if f.is_zero():
        return "0"
    out: list[str] = []
    for exps, coeff in f.sorted_terms():
        negative = f.field.is_rational and coeff < 0
        magnitude = -coeff if negative else coeff
        mono = format_monomial(exps, f.role)
        if not mono:
            body = f.field.format(magnitude)
        elif magnitude == 1:
            body = mono
        else:
            body = f"{f.field.format(magnitude)}*{mono}"
        if not out:
            out.append(f"-{body}" if negative else body)
        else:
            out.append(f" - {body}" if negative else f" + {body}")
    return "".join(out)
