"""End-to-end check of one binomial: classifier, constructor, oracle and SLP search."""

from __future__ import annotations

import dataclasses
import json
import logging
import time
from collections.abc import Iterator
from contextlib import contextmanager
from dataclasses import asdict, dataclass
from typing import Any

from apolar.algebra.parser import format_poly
from apolar.algebra.polynomial import Poly
from apolar.config.schema import SlpOptions
from apolar.core.apolarity import analyze, ideal_equals_ann
from apolar.core.binomial import (
    BinomialNormalForm,
    CertificateError,
    canonical_generators,
    classify,
    construct_annihilator,
    det_certificate,
    membership_facts,
    normalize,
)
from apolar.core.lefschetz import SlpReport, build_graded_quotient, find_slp_witness

logger = logging.getLogger(__name__)


@dataclass
class VerifyRecord:
    """One line of corpus output.

    ``agreement`` is None when the theorem does not apply; ``ci`` is then the
    oracle's answer and ``fallback`` names the source.
    """

    input: str
    n_vars: int
    field: str
    normal_form: dict[str, Any] | None
    verdict: str
    case: str | None
    v: int
    w: int | None
    predicted_ci: bool | None
    oracle_mu: int
    oracle_ci: bool
    ci: bool
    agreement: bool | None
    fallback: str | None = None
    generators: list[str] = dataclasses.field(default_factory=list)
    oracle_generators: list[str] = dataclasses.field(default_factory=list)
    ideal_equality: str | None = None
    ideal_witness: str | None = None
    det_certificate: str | None = None
    membership: bool | None = None
    certificate_error: str | None = None
    truncation_stable: bool | None = None
    slp: dict[str, Any] | None = None
    timings: dict[str, float] | None = None

    @property
    def ok(self) -> bool:
        return (
            self.agreement is not False
            and self.ideal_equality in (None, "Equal")
            and self.certificate_error is None
            and self.membership is not False
            and self.truncation_stable is not False
        )

    def to_dict(self) -> dict[str, Any]:
        data = asdict(self)
        if self.timings is None:
            data.pop("timings")
        return data

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, ensure_ascii=False)


class _Stopwatch:
    def __init__(self, enabled: bool):
        self.enabled = enabled
        self.stages: dict[str, float] = {}

    @contextmanager
    def stage(self, name: str) -> Iterator[None]:
        start = time.perf_counter()
        try:
            yield
        finally:
            if self.enabled:
                self.stages[name] = round(time.perf_counter() - start, 6)


def verify_binomial(
    F: Poly,
    slp: SlpOptions | None = None,
    check_truncation: bool = False,
    timings: bool = False,
) -> VerifyRecord:
    """Classify F, build the predicted ideal and compare both with the oracle.

    Raises:
        NotBinomialError: If F has three or more terms.
        ZeroPolynomialError: If F is zero.
    """
    clock = _Stopwatch(timings)
    fld = F.field
    with clock.stage("classify"):
        nf = normalize(F)
        cls = classify(nf)
    with clock.stage("oracle"):
        report = analyze(F, check_truncation=check_truncation)

    predicted: bool | None
    if cls.theorem_applies:
        predicted = cls.is_ci
    elif not isinstance(nf, BinomialNormalForm):
        predicted = True
    else:
        predicted = None
    oracle_ci = report.is_ci
    agreement = None if predicted is None else predicted == oracle_ci
    if agreement is False:
        logger.warning(f"Disagreement on {F}: verdict {cls.verdict.value}, oracle mu={report.mu}")

    record = VerifyRecord(
        input=format_poly(F),
        n_vars=F.n_vars,
        field=fld.flag,
        normal_form=nf.summary() if isinstance(nf, BinomialNormalForm) else None,
        verdict=cls.verdict.value,
        case=cls.case,
        v=cls.v,
        w=cls.w,
        predicted_ci=predicted,
        oracle_mu=report.mu,
        oracle_ci=oracle_ci,
        ci=oracle_ci if predicted is None else predicted,
        agreement=agreement,
        fallback=None if cls.theorem_applies else "oracle",
        oracle_generators=[format_poly(g) for g in report.minimal_generators],
        truncation_stable=report.truncation_stable,
    )
    if record.fallback:
        logger.info(f"{cls.verdict.value}: answering {record.input} with the oracle")

    if cls.is_ci or not isinstance(nf, BinomialNormalForm):
        try:
            with clock.stage("construct"):
                gens = construct_annihilator(nf, cls)
                comparison = ideal_equals_ann(gens, F)
            record.generators = [format_poly(g) for g in canonical_generators(gens)]
            record.ideal_equality = comparison.outcome.value
            if comparison.witness is not None:
                record.ideal_witness = format_poly(comparison.witness)
                logger.warning(f"Constructed ideal for {F}: {comparison.outcome.value} ({comparison.witness})")
            if cls.case == "2c" and F.n_vars == 2:
                cert = det_certificate(nf, cls)
                record.det_certificate = str(cert.value)
            if cls.case == "3":
                record.membership = all(fact.holds for fact in membership_facts(nf, cls))
        except CertificateError as e:
            logger.error(f"Certificate failed for {F}: {e}")
            record.certificate_error = str(e)

    if slp is not None and slp.enabled and record.ci and F.is_homogeneous():
        if fld.is_rational or slp.override:
            with clock.stage("slp"):
                algebra = build_graded_quotient(F)
                found = find_slp_witness(
                    algebra,
                    trials=slp.trials,
                    seed=0,
                    pool_bound=slp.pool_bound,
                    allow_positive_characteristic=slp.override,
                )
            record.slp = slp_summary(found)

    if timings:
        record.timings = clock.stages
    return record


def slp_summary(report: SlpReport) -> dict[str, Any]:
    return {
        "found": report.found,
        "witness": format_poly(report.witness) if report.witness is not None else None,
        "trials_used": report.trials_used,
        "failed_pairs": [list(p) for p in report.failed_pairs],
        "symmetric": report.symmetric,
        "exhaustive": report.exhaustive,
        "message": report.message,
    }
