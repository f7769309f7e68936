"""
Unit tests for the named family constructions.
"""

import logging
import math

import numpy as np
import pytest

from berry_esseen.core.errors import InvalidProfile, ScenarioError, WrongRegime
from berry_esseen.core.model import (
    CenteringChoice,
    CouplingGroup,
    DependencyGraph,
    DiscreteFamily,
    DiscreteLaw,
    derive_profile,
    parse_law,
    xi,
)
from berry_esseen.generators import (
    SPEC_KINDS,
    BernoulliDecay,
    CliqueBlocks,
    CustomSpec,
    MDependentWindow,
    ThreePointFamily,
    clique_blocks,
    m_dependent_window,
    spec_from_dict,
)


@pytest.fixture
def skewed() -> DiscreteLaw:
    """A skewed three-atom law."""
    return DiscreteLaw([-1.0, 0.0, 2.0], [0.3, 0.5, 0.2])


def test_registered_kinds():
    """Test that every named construction is registered."""
    assert set(SPEC_KINDS) == {"clique_blocks", "m_dependent_window", "three_point", "bernoulli_decay", "custom"}


def test_clique_blocks_rademacher(rademacher):
    """Test four blocks of two Rademacher copies."""
    spec = clique_blocks(4, 2, rademacher)
    assert (spec.N, spec.D) == (8, 1)
    assert spec.variance() == pytest.approx(16.0)
    family = spec.to_family()
    assert family.D == 1
    assert derive_profile(family, [3.0]).v == pytest.approx(4.0)


def test_clique_blocks_size_one_is_independent(rademacher):
    """Test that blocks of size one give an independent family."""
    spec = clique_blocks(5, 1, rademacher)
    assert spec.D == 0
    assert spec.to_family().graph.edges == ()


def test_clique_blocks_rejects_empty():
    """Test that at least one block of at least one vertex is needed."""
    with pytest.raises(WrongRegime, match="n_blocks, block_size >= 1"):
        CliqueBlocks(0, 2, parse_law("rademacher"))


def test_clique_blocks_profile_matches_exact(skewed):
    """Test the closed-form profile against the enumerated family."""
    spec = CliqueBlocks(3, 3, skewed)
    closed = spec.profile([2.5, 3.0])
    exact = derive_profile(spec.to_family(), [2.5, 3.0])
    assert closed.v == pytest.approx(exact.v)
    assert closed.A[2.5] == pytest.approx(exact.A[2.5])
    assert closed.M[3.0] == pytest.approx(exact.M[3.0])
    assert closed.L == pytest.approx(exact.L)
    assert closed.rho == pytest.approx(exact.rho)


def test_clique_blocks_dict_round_trip():
    """Test that a named law survives serialization by name."""
    spec = CliqueBlocks(4, 2, parse_law("rademacher"), law_name="rademacher")
    doc = spec.to_dict()
    assert doc["law"] == "rademacher"
    again = spec_from_dict(doc)
    assert isinstance(again, CliqueBlocks)
    assert again.to_dict() == doc


def test_spec_from_dict_unknown_kind():
    """Test that an unknown kind lists the known ones."""
    with pytest.raises(ScenarioError, match="Unknown family kind 'spiral'"):
        spec_from_dict({"kind": "spiral"})


def test_spec_from_dict_missing_parameter():
    """Test that a missing parameter is reported as malformed."""
    with pytest.raises(ScenarioError, match="Malformed 'three_point'"):
        spec_from_dict({"kind": "three_point", "n": 10})


def test_m_dependent_zero_is_independent(rademacher):
    """Test that a 0-dependent window gives an independent family."""
    spec = MDependentWindow(4, 0, rademacher)
    assert spec.D == 0
    assert spec.to_family().D == 0


@pytest.mark.parametrize("n, m, expected", [(2, 1, 1), (4, 1, 2), (6, 2, 4), (3, 2, 2)])
def test_m_dependent_degree(rademacher, n, m, expected):
    """Test D = min(2m, n - 1)."""
    spec = MDependentWindow(n, m, rademacher)
    assert spec.D == expected
    assert spec.graph().max_degree == expected


def test_m_dependent_rejects_short_sequence(rademacher):
    """Test that n must be at least m + 1."""
    with pytest.raises(WrongRegime, match="n >= m \\+ 1"):
        MDependentWindow(2, 2, rademacher)


def test_m_dependent_rejects_unknown_window(rademacher):
    """Test that the window name is checked."""
    with pytest.raises(ScenarioError, match="Unknown window function 'median'"):
        m_dependent_window(4, 1, rademacher, "median")


def test_m_dependent_callable_window(skewed):
    """Test that a window given as a function behaves like the registered one."""

    def largest(w):
        return np.max(w, axis=-1)

    spec = m_dependent_window(5, 1, skewed, largest)
    named = MDependentWindow(5, 1, skewed, "max")
    exact = derive_profile(spec.to_family(), [3.0])
    assert spec.profile([3.0]).v == pytest.approx(named.profile([3.0]).v, rel=1e-12)
    assert exact.v == pytest.approx(named.profile([3.0]).v, rel=1e-9)
    assert spec.to_dict()["window"] == "largest"
    with pytest.raises(ScenarioError, match="Unknown window function 'largest'"):
        spec_from_dict(spec.to_dict())


def test_m_dependent_product_uncorrelated(rademacher):
    """Test that products of neighbouring signs are centered and uncorrelated."""
    spec = MDependentWindow(6, 1, rademacher, "product")
    assert spec.marginal().mean() == pytest.approx(0.0)
    assert spec.autocovariance(1) == pytest.approx(0.0, abs=1e-15)
    assert spec.variance() == pytest.approx(6.0)


@pytest.mark.parametrize("window", ["sum", "max", "product"])
def test_m_dependent_profile_matches_exact(skewed, window):
    """Test variance, rho and A from the stationary formulas against enumeration."""
    spec = MDependentWindow(5, 1, skewed, window)
    closed = spec.profile([3.0])
    exact = derive_profile(spec.to_family(), [3.0])
    assert closed.v == pytest.approx(exact.v, rel=1e-9)
    assert closed.rho == pytest.approx(exact.rho, rel=1e-9, abs=1e-12)
    assert closed.A[3.0] == pytest.approx(exact.A[3.0], rel=1e-9)
    assert spec.mean() == pytest.approx(math.fsum(law.mean() for law in spec.to_family().laws))


def test_three_point_charge():
    """Test P[Y_2 = 2^(1/3)] at delta = 3."""
    spec = ThreePointFamily(3.0, 2)
    assert spec.charge()[1] / 2 == pytest.approx(0.184996, abs=1e-6)


@pytest.mark.parametrize("n", [2, 10, 50])
@pytest.mark.parametrize("delta", [3.0, 4.5])
def test_three_point_variance_exact(delta, n):
    """Test E[S] = 0 and V[S] = N^(2/delta) on the enumerated laws."""
    family = ThreePointFamily(delta, n).to_family()
    assert math.fsum(law.mean() for law in family.laws) == pytest.approx(0.0, abs=1e-12)
    assert math.fsum(law.variance() for law in family.laws) == pytest.approx(n ** (2 / delta))


def test_three_point_moments_bounded():
    """Test E|Y_k|^delta <= 1 for every k."""
    profile = ThreePointFamily(3.0, 200).profile([3.0])
    assert profile.M[3.0] <= 1.0
    assert profile.A[3.0] <= 200


@pytest.mark.parametrize("delta, n, message", [(2.5, 10, "delta >= 3"), (3.0, 1, "n >= 2")])
def test_three_point_preconditions(delta, n, message):
    """Test the three-point parameter range."""
    with pytest.raises(WrongRegime, match=message):
        ThreePointFamily(delta, n)


@pytest.mark.parametrize("delta", [2.5, 3.0, 4.0])
def test_bernoulli_decay_second_moment(delta):
    """Test E|Y_2 - 1/2|^delta = 2^(-delta)."""
    law = BernoulliDecay(5).to_family().laws[1]
    assert law.abs_moment(delta, 0.5) == pytest.approx(2.0 ** -delta)


def test_bernoulli_decay_profile_matches_exact():
    """Test the closed-form profile against the enumerated laws."""
    spec = BernoulliDecay(30)
    k = np.arange(1, 31)
    assert spec.variance() == pytest.approx(math.fsum((1 / k) * (1 - 1 / k)))
    closed = spec.profile([3.0])
    exact = derive_profile(spec.to_family(), [3.0])
    assert closed.A[3.0] == pytest.approx(exact.A[3.0])
    assert closed.L == pytest.approx(exact.L)
    assert closed.rho == pytest.approx(exact.rho)


def test_bernoulli_decay_xi_shrinks():
    """Test that xi_3 decreases along N = 2^10, 2^14, 2^18."""
    xis = [xi(BernoulliDecay(2 ** e).profile([3.0]), 3.0) for e in (10, 14, 18)]
    assert xis[0] > xis[1] > xis[2]


def test_bernoulli_decay_rejects_small_n():
    """Test that n must be at least 2."""
    with pytest.raises(WrongRegime, match="n >= 2"):
        BernoulliDecay(1)


def test_custom_spec_verified(clique_family):
    """Test that a small valid family is verified on construction."""
    spec = CustomSpec(clique_family)
    assert spec.graph_verified
    assert spec.variance() == pytest.approx(16.0)
    assert spec.mean() == pytest.approx(0.0)


def test_custom_spec_rejects_missing_edge(rademacher):
    """Test that two identical copies without an edge are refused."""
    group = CouplingGroup.comonotone([0, 1], [rademacher, rademacher])
    family = DiscreteFamily((group,), DependencyGraph(2), CenteringChoice())
    with pytest.raises(InvalidProfile, match="not a dependency graph"):
        CustomSpec(family)


def test_custom_spec_large_is_unverified(rademacher, caplog):
    """Test that families above the verification limit are flagged."""
    family = DiscreteFamily.independent([rademacher] * 10)
    with caplog.at_level(logging.WARNING):
        spec = CustomSpec(family)
    assert not spec.graph_verified
    assert "not verified" in caplog.text


def test_custom_spec_from_dict(clique_family):
    """Test that a custom spec is rebuilt from its family document."""
    spec = spec_from_dict(CustomSpec(clique_family).to_dict())
    assert isinstance(spec, CustomSpec)
    assert (spec.N, spec.D) == (8, 1)
