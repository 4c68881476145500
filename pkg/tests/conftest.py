"""
Pytest configuration and fixtures
"""
import os
import sys

import numpy as np
import pytest

# Add parent directory to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from triple_lines.grassmann import LineSpan, standard_line  # noqa: E402
from triple_lines.threefold import (  # noqa: E402
    double_fixture,
    fermat_cubic,
    first_type_fixture,
    triple_fixture,
)

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


@pytest.fixture
def fixtures_dir():
    """Directory of the cubic input files"""
    return FIXTURES


@pytest.fixture
def fermat():
    """x0^3 + x1^3 + x2^3 + x3^3 + x4^3"""
    return fermat_cubic()


@pytest.fixture
def triple_cubic():
    """Cubic with the standard line as a triple line"""
    return triple_fixture()


@pytest.fixture
def double_cubic():
    """Cubic with the standard line of the second type, not triple"""
    return double_fixture()


@pytest.fixture
def first_type_cubic():
    """Cubic with the standard line of the first type"""
    return first_type_fixture()


@pytest.fixture
def standard():
    """span(e0, e1)"""
    return standard_line()


@pytest.fixture
def fermat_triple_line():
    """The Fermat line with chart coordinates (0, -1, 0, 1, 0, 0)"""
    return LineSpan((1, 0, -1, 0, 0), (0, 1, 0, -1, 0))


@pytest.fixture
def rng():
    """Seeded generator; every random choice in the tests goes through one"""
    return np.random.default_rng(20240611)
