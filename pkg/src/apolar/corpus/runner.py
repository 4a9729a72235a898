"""Corpus runs: generate, verify in a worker pool, write JSON Lines in order."""

from __future__ import annotations

import json
import logging
from collections import Counter
from collections.abc import Callable, Iterable, Iterator
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from apolar.algebra.field import FieldSpec
from apolar.algebra.parser import format_poly, parse_poly
from apolar.config.schema import CorpusSpec, SlpOptions
from apolar.corpus.generator import generate_corpus
from apolar.corpus.verify import verify_binomial
from apolar.errors import ApolarError

logger = logging.getLogger(__name__)


class CorpusIOError(ApolarError):
    """Raised when corpus output cannot be written."""

    exit_code = 5


@dataclass
class CorpusSummary:
    total: int = 0
    verdicts: Counter[str] = field(default_factory=Counter)
    cases: Counter[str] = field(default_factory=Counter)
    fallbacks: int = 0
    disagreements: list[str] = field(default_factory=list)
    equality_failures: list[str] = field(default_factory=list)
    certificate_failures: list[str] = field(default_factory=list)
    slp_attempted: int = 0
    slp_failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.disagreements or self.equality_failures or self.certificate_failures)

    def add(self, record: dict[str, Any]) -> None:
        self.total += 1
        self.verdicts[record["verdict"]] += 1
        if record["case"]:
            self.cases[record["case"]] += 1
        if record["fallback"]:
            self.fallbacks += 1
        if record["agreement"] is False:
            self.disagreements.append(record["input"])
        if record["ideal_equality"] not in (None, "Equal"):
            self.equality_failures.append(record["input"])
        if (
            record["certificate_error"]
            or record["membership"] is False
            or record["truncation_stable"] is False
        ):
            self.certificate_failures.append(record["input"])
        if record["slp"] is not None:
            self.slp_attempted += 1
            if not record["slp"]["found"]:
                self.slp_failures.append(record["input"])

    def to_dict(self) -> dict[str, Any]:
        return {
            "total": self.total,
            "verdicts": dict(sorted(self.verdicts.items())),
            "cases": dict(sorted(self.cases.items())),
            "fallbacks": self.fallbacks,
            "disagreements": self.disagreements,
            "equality_failures": self.equality_failures,
            "certificate_failures": self.certificate_failures,
            "slp_attempted": self.slp_attempted,
            "slp_failures": self.slp_failures,
            "ok": self.ok,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


@dataclass(frozen=True)
class _Task:
    text: str
    field_flag: str
    n_vars: int
    slp: dict[str, Any]
    check_truncation: bool
    timings: bool


def _run_task(task: _Task) -> str:
    """Worker entry point; polynomials cross the process boundary as text."""
    F = parse_poly(task.text, FieldSpec.parse(task.field_flag), nvars=task.n_vars)
    record = verify_binomial(
        F,
        slp=SlpOptions.model_validate(task.slp),
        check_truncation=task.check_truncation,
        timings=task.timings,
    )
    return record.to_json()


def verify_lines(spec: CorpusSpec, timings: bool = False) -> Iterator[str]:
    """JSON records for every generated binomial, in generation order."""
    polys = generate_corpus(spec)
    tasks = [
        _Task(
            format_poly(F),
            spec.field,
            F.n_vars,
            spec.slp.model_dump(),
            spec.check_truncation,
            timings,
        )
        for F in polys
    ]
    if spec.workers == 1:
        yield from map(_run_task, tasks)
        return
    with ProcessPoolExecutor(max_workers=spec.workers) as pool:
        # map yields in submission order regardless of completion order
        yield from pool.map(_run_task, tasks, chunksize=max(1, len(tasks) // (4 * spec.workers)))


def run_corpus(
    spec: CorpusSpec,
    out_path: Path | None = None,
    timings: bool = False,
    echo: Callable[[str], None] | None = None,
) -> CorpusSummary:
    """Verify a whole corpus, streaming one JSON record per line.

    Records go to ``out_path`` when given, otherwise to ``echo``.

    Raises:
        CorpusIOError: If the output file cannot be written.
    """
    logger.info(f"Corpus run: {spec.count} binomials, seed {spec.seed}, field {spec.field_spec}")
    summary = CorpusSummary()
    lines = verify_lines(spec, timings=timings)
    if out_path is None:
        _consume(lines, summary, echo or (lambda _: None))
    else:
        try:
            with open(out_path, "w", encoding="utf-8") as f:
                _consume(lines, summary, lambda line: f.write(line + "\n"))
        except OSError as e:
            raise CorpusIOError(f"Cannot write corpus records to {out_path}: {e}") from e
    logger.info(
        f"Corpus finished: {summary.total} records, {len(summary.disagreements)} disagreements, "
        f"{len(summary.equality_failures)} equality failures"
    )
    return summary


def _consume(lines: Iterable[str], summary: CorpusSummary, sink: Callable[[str], Any]) -> None:
    for line in lines:
        summary.add(json.loads(line))
        sink(line)


def write_summary(summary: CorpusSummary, path: Path) -> None:
    try:
        path.write_text(summary.to_json() + "\n", encoding="utf-8")
    except OSError as e:
        raise CorpusIOError(f"Cannot write summary to {path}: {e}") from e
