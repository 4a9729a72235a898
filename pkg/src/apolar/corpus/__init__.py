"""Binomial corpora and the cross-check pipeline."""

from apolar.corpus.generator import CorpusError, enumerate_grid, generate_corpus
from apolar.corpus.runner import CorpusSummary, run_corpus
from apolar.corpus.verify import VerifyRecord, verify_binomial

__all__ = [
    "CorpusError",
    "CorpusSummary",
    "VerifyRecord",
    "enumerate_grid",
    "generate_corpus",
    "run_corpus",
    "verify_binomial",
]
