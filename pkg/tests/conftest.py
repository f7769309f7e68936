"""
Shared fixtures for the test suite.
"""

import copy
import logging

import pytest

from berry_esseen.core.model import DiscreteFamily, DiscreteLaw, MomentProfile, derive_profile
from berry_esseen.utils.config import DEFAULT_CONFIG


@pytest.fixture(autouse=True)
def reset_package_logger():
    """Undo level changes made by setup_logger."""
    yield
    logging.getLogger("berry_esseen").setLevel(logging.NOTSET)


@pytest.fixture
def rademacher() -> DiscreteLaw:
    """The symmetric law on {-1, +1}."""
    return DiscreteLaw.rademacher()


@pytest.fixture
def clique_family(rademacher: DiscreteLaw) -> DiscreteFamily:
    """Four comonotone blocks of two Rademacher variables (N=8, D=1)."""
    laws = [rademacher] * 8
    blocks = [[0, 1], [2, 3], [4, 5], [6, 7]]
    return DiscreteFamily.from_blocks(laws, blocks)


@pytest.fixture
def independent_family(rademacher: DiscreteLaw) -> DiscreteFamily:
    """Four independent Rademacher variables (N=4, D=0)."""
    return DiscreteFamily.independent([rademacher] * 4)


@pytest.fixture
def clique_profile(clique_family: DiscreteFamily) -> MomentProfile:
    """Exact profile of `clique_family` at a few moment orders."""
    return derive_profile(clique_family, [2.0, 2.5, 3.0, 4.0])


@pytest.fixture
def large_block_profile() -> MomentProfile:
    """Bounded profile with N=10^6 in cliques of size 4 and unit atoms."""
    return MomentProfile(N=10 ** 6, D=3, v=2000.0, A={3.0: 1e6}, L=1.0)


@pytest.fixture
def config() -> dict:
    """A private copy of the default configuration."""
    return copy.deepcopy(DEFAULT_CONFIG)
