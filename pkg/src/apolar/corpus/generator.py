"""Deterministic binomial generation."""

from __future__ import annotations

import itertools
import logging
import random
from collections.abc import Iterator

from apolar.algebra.field import FieldSpec, Raw
from apolar.algebra.polynomial import Exponents, Poly, Role, VarContext
from apolar.config.schema import CorpusSpec
from apolar.core.binomial import BinomialNormalForm, normalize
from apolar.errors import ApolarError

logger = logging.getLogger(__name__)

MAX_ATTEMPTS = 1000


class CorpusError(ApolarError):
    """Raised when a corpus cannot be generated or written."""


def binomial(
    fld: FieldSpec,
    a: Exponents,
    b_left: Exponents,
    b_right: Exponents,
    c1: Raw | int,
    c2: Raw | int,
) -> Poly:
    """X^a (c1 X^b_left - c2 X^b_right)."""
    ctx = VarContext(len(a), Role.DUAL)
    left = tuple(x + y for x, y in zip(a, b_left))
    right = tuple(x + y for x, y in zip(a, b_right))
    return Poly(ctx, fld, [(left, fld.coerce(c1)), (right, fld.neg(fld.coerce(c2)))])


def _composition(rng: random.Random, total: int, parts: int, cap: int) -> list[int] | None:
    """Random split of ``total`` into ``parts`` values in 1..cap, or None if impossible."""
    if not parts <= total <= parts * cap:
        return None
    values = [1] * parts
    for _ in range(total - parts):
        open_slots = [k for k, x in enumerate(values) if x < cap]
        values[rng.choice(open_slots)] += 1
    return values


def _draw(rng: random.Random, spec: CorpusSpec, fld: FieldSpec) -> Poly | None:
    lo, hi = spec.n_vars_range
    n = rng.randint(lo, hi)
    min_right = 0 if spec.allow_d2_zero else 1
    if n < 1 + min_right:
        return None
    order = list(range(n))
    rng.shuffle(order)
    d1 = rng.randint(1, n - min_right)
    d2 = rng.randint(min_right, n - d1)
    left_vars, right_vars = order[:d1], order[d1 : d1 + d2]

    a = [rng.randint(0, spec.max_a) for _ in range(n)]
    b_left, b_right = [0] * n, [0] * n
    for k in left_vars:
        b_left[k] = rng.randint(1, spec.max_b)
    if spec.homogeneous_only:
        split = _composition(rng, sum(b_left), d2, spec.max_b)
        if split is None:
            return None
        for k, x in zip(right_vars, split):
            b_right[k] = x
    else:
        for k in right_vars:
            b_right[k] = rng.randint(1, spec.max_b)

    c1 = fld.draw_nonzero(rng, spec.coeff_pool)
    c2 = fld.draw_nonzero(rng, spec.coeff_pool)
    return binomial(fld, tuple(a), tuple(b_left), tuple(b_right), c1, c2)


def _check_homogeneous(F: Poly) -> None:
    if not F.is_homogeneous():
        raise CorpusError(f"Generated {F} is not homogeneous")
    nf = normalize(F)
    if isinstance(nf, BinomialNormalForm) and nf.d2 == 1:
        if nf.b_right[nf.d1] != sum(nf.b_left):
            raise CorpusError(f"Homogeneous {F} has b_r != sum of the left exponents")


def generate_corpus(spec: CorpusSpec) -> list[Poly]:
    """``spec.count`` binomials, a pure function of ``spec``.

    Raises:
        CorpusError: If the constraints admit no binomial.
    """
    fld = spec.field_spec
    rng = random.Random(spec.seed)
    out: list[Poly] = []
    for k in range(spec.count):
        for _ in range(MAX_ATTEMPTS):
            F = _draw(rng, spec, fld)
            if F is not None:
                break
        else:
            raise CorpusError(f"No admissible binomial after {MAX_ATTEMPTS} draws (instance {k})")
        if spec.homogeneous_only:
            _check_homogeneous(F)
        out.append(F)
    logger.debug(f"Generated {len(out)} binomials with seed {spec.seed}")
    return out


def _side_assignments(n: int, max_b: int) -> Iterator[tuple[Exponents, Exponents]]:
    """All (b_left, b_right) with entries in 0..max_b, disjoint supports, both nonzero."""
    choices = [(0, 0)] + [(x, 0) for x in range(1, max_b + 1)] + [(0, x) for x in range(1, max_b + 1)]
    for combo in itertools.product(choices, repeat=n):
        b_left = tuple(c[0] for c in combo)
        b_right = tuple(c[1] for c in combo)
        if any(b_left) and any(b_right):
            yield b_left, b_right


def enumerate_grid(
    fld: FieldSpec | None = None,
    n_vars: tuple[int, ...] = (2, 3, 4),
    max_a: int = 2,
    max_b: int = 2,
    c2_values: tuple[int, ...] = (1, 2, -1),
    max_degree: int = 8,
    cap: int | None = 2000,
    seed: int = 0,
) -> list[Poly]:
    """Exhaustive grid of binomials X^a (X^bL - c2 X^bR) with c1 = 1.

    When the grid exceeds ``cap`` instances a deterministic subsample (by
    ``seed``) is returned, in enumeration order.
    """
    fld = fld or FieldSpec.rationals()
    params: list[tuple[Exponents, Exponents, Exponents, int]] = []
    for n in n_vars:
        for a in itertools.product(range(max_a + 1), repeat=n):
            for b_left, b_right in _side_assignments(n, max_b):
                degree = sum(a) + max(sum(b_left), sum(b_right))
                if degree > max_degree:
                    continue
                for c2 in c2_values:
                    params.append((a, b_left, b_right, c2))
    if cap is not None and len(params) > cap:
        keep = sorted(random.Random(seed).sample(range(len(params)), cap))
        params = [params[k] for k in keep]
    logger.debug(f"Grid of {len(params)} binomials")
    return [binomial(fld, a, bl, br, 1, c2) for a, bl, br, c2 in params]
