"""Root of the apolar exception hierarchy."""

from __future__ import annotations


class ApolarError(Exception):
    """Base exception for all apolar errors.

    ``exit_code`` is the process exit status the CLI uses when the error
    escapes a command.
    """

    exit_code: int = 2
