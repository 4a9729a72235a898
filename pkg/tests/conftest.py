"""Pytest configuration and fixtures."""

import pytest

from apolar.algebra.field import FieldSpec
from apolar.algebra.parser import parse_poly
from apolar.algebra.polynomial import Role


def pytest_addoption(parser):
    """Add --runslow option to pytest."""
    parser.addoption(
        "--runslow",
        action="store_true",
        default=False,
        help="run slow tests (the full acceptance grid)",
    )


def pytest_configure(config):
    """Configure pytest markers."""
    config.addinivalue_line("markers", "slow: mark test as slow to run")


def pytest_collection_modifyitems(config, items):
    """Skip slow tests unless --runslow is given."""
    if config.getoption("--runslow"):
        # --runslow given: do not skip slow tests
        return

    skip_slow = pytest.mark.skip(reason="need --runslow option to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def QQ():
    return FieldSpec.rationals()


@pytest.fixture
def F2():
    return FieldSpec.prime(2)


@pytest.fixture
def F7():
    return FieldSpec.prime(7)


@pytest.fixture
def dual():
    """Parse a dual polynomial: dual("X1 - X2"), dual("X1*X2", field=F2, nvars=3)."""

    def parse(text, field=None, nvars=None):
        return parse_poly(text, field, nvars=nvars, role=Role.DUAL)

    return parse


@pytest.fixture
def ring():
    """Parse a ring polynomial with a given number of variables."""

    def parse(text, nvars, field=None):
        return parse_poly(text, field, nvars=nvars, role=Role.RING)

    return parse
