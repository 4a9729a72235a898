"""Configuration system for apolar corpus runs."""

from apolar.config.loader import ConfigError, load_corpus_spec
from apolar.config.schema import CorpusSpec, SlpOptions

__all__ = ["ConfigError", "CorpusSpec", "SlpOptions", "load_corpus_spec"]
