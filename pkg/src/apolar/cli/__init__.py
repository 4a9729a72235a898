"""CLI interface for apolar."""

from apolar.cli.commands import main

__all__ = ["main"]
