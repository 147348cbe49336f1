"""Shared fixtures for the LQF Logic tests."""

from pathlib import Path

import pytest

from lqf_logic.lattice import FiniteOml, boolean, mo, product

FIXTURES = Path(__file__).parent.parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    """Directory holding the JSON lattices, proofs and matrices."""
    return FIXTURES


@pytest.fixture
def mo2() -> FiniteOml:
    """MO_2: 0, a, a', b, b', 1."""
    return mo(2)


@pytest.fixture
def b2() -> FiniteOml:
    """The four-element Boolean algebra 0, a, b, 1."""
    return boolean(2)


@pytest.fixture
def b1_mo2() -> FiniteOml:
    """A decomposable lattice whose center has four elements."""
    return product(boolean(1), mo(2))
