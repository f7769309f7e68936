"""
Unit tests for dependency-graph verification and the Lindeberg/Feller report.
"""

import logging

import numpy as np
import pytest

from berry_esseen.core.errors import WrongRegime
from berry_esseen.core.model import CouplingGroup, DependencyGraph, DiscreteFamily
from berry_esseen.generators import (
    CliqueBlocks,
    MDependentWindow,
    ThreePointFamily,
    check_dependency_graph,
    lindeberg_feller_report,
    random_block_family,
    three_point_lindeberg,
)
from berry_esseen.utils.rng import substream


def test_clique_graph_is_valid(clique_family):
    """Test that comonotone blocks with complete block graphs pass."""
    assert check_dependency_graph(clique_family) == []


@pytest.mark.parametrize("window", ["product", "sum", "max"])
def test_m_dependent_graph_is_valid(rademacher, window):
    """Test the window graph by exact factorization on six vertices."""
    family = MDependentWindow(6, 1, rademacher, window).to_family()
    assert check_dependency_graph(family) == []


def test_missing_edge_is_found(rademacher, caplog):
    """Test that two identical copies without an edge are reported."""
    group = CouplingGroup.comonotone([0, 1], [rademacher, rademacher])
    family = DiscreteFamily((group,), DependencyGraph(2))
    with caplog.at_level(logging.WARNING):
        failures = check_dependency_graph(family)
    assert failures == [((0,), (1,)), ((1,), (0,))]
    assert "dependent pairs" in caplog.text


def test_window_without_edges_is_found(rademacher):
    """Test that a 2-window family with the edges removed fails the check."""
    spec = MDependentWindow(4, 1, rademacher, "sum")
    family = spec.to_family()
    stripped = DiscreteFamily(family.groups, DependencyGraph(4), family.centering)
    assert check_dependency_graph(stripped)


def test_random_block_families_are_valid():
    """Test that random comonotone block families always carry a valid graph."""
    for index in range(50):
        family = random_block_family(substream(5, index))
        assert 2 <= family.N <= 8
        assert check_dependency_graph(family) == []


def test_random_block_family_is_seeded():
    """Test that equal substreams give equal families."""
    a = random_block_family(substream(9, 3))
    b = random_block_family(substream(9, 3))
    assert a.to_dict() == b.to_dict()


def test_lindeberg_rademacher_is_zero(rademacher):
    """Test that bounded atoms never exceed the threshold for N = 100."""
    report = lindeberg_feller_report(DiscreteFamily.independent([rademacher] * 100), 0.5)
    assert report.lindeberg == 0.0
    assert report.feller == pytest.approx(0.01)
    assert report.variance == pytest.approx(100.0)


def test_lindeberg_three_point_matches_closed_form():
    """Test the exact Lindeberg sum of the three-point family against its closed form."""
    spec = ThreePointFamily(3.0, 2000)
    report = lindeberg_feller_report(spec, 0.5)
    assert report.lindeberg == pytest.approx(three_point_lindeberg(3.0, 2000, 0.5))
    assert report.lindeberg == pytest.approx(0.75)
    assert report.feller == pytest.approx(2000 ** (-2 / 3))


def test_three_point_lindeberg_limit():
    """Test that the sum tends to 1/2 at eps = 2^(-1/2)."""
    value = three_point_lindeberg(3.0, 10 ** 8, 2 ** -0.5)
    assert value == pytest.approx(0.5, abs=1e-6)


def test_three_point_lindeberg_half_epsilon():
    """Test that eps = 1/2 keeps 3/4 of the variance in the limit, not 1/2."""
    value = three_point_lindeberg(3.0, 10 ** 8, 0.5)
    assert value == pytest.approx(0.75, abs=1e-6)


def test_three_point_lindeberg_large_epsilon():
    """Test that a threshold above every atom gives zero."""
    assert three_point_lindeberg(3.0, 100, 1.5) == 0.0


def test_three_point_feller_vanishes():
    """Test that the Feller ratio decreases as N grows."""
    ratios = [lindeberg_feller_report(ThreePointFamily(4.0, n), 0.5).feller for n in (10, 100, 1000)]
    assert ratios[0] > ratios[1] > ratios[2]
    assert ratios[2] == pytest.approx(1000 ** -0.5)


def test_lindeberg_rejects_dependent_family(clique_family):
    """Test that a dependent family is refused."""
    with pytest.raises(WrongRegime, match="independent family, got D=1"):
        lindeberg_feller_report(clique_family, 0.5)


def test_lindeberg_rejects_dependent_spec(rademacher):
    """Test that a dependent named spec is refused."""
    with pytest.raises(WrongRegime, match="independent family"):
        lindeberg_feller_report(CliqueBlocks(3, 2, rademacher), 0.5)


def test_lindeberg_rejects_non_positive_epsilon(independent_family):
    """Test that epsilon must be positive."""
    with pytest.raises(WrongRegime, match="epsilon must be positive"):
        lindeberg_feller_report(independent_family, 0.0)


def test_lindeberg_report_to_dict(independent_family):
    """Test the report's dictionary form."""
    doc = lindeberg_feller_report(independent_family, 0.25).to_dict()
    assert set(doc) == {"epsilon", "variance", "lindeberg", "feller"}
    assert np.isclose(doc["feller"], 0.25)
