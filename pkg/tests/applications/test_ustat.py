"""
Unit tests for U-statistics, their tuple dependency graph and their bounds.
"""

import logging

import numpy as np
import pytest

from berry_esseen.applications import (
    UStatSpec,
    block_clique_adjacency,
    exact_ustat_variances,
    get_kernel,
    plug_in_moment,
    tuple_graph_max_degree,
    u_statistic,
    ustat_bound,
    ustat_graph_bounds,
)
from berry_esseen.core.errors import (
    DegenerateVariance,
    Insufficient,
    InvalidProfile,
    MissingMoment,
    OracleTooLarge,
    ScenarioError,
    WrongRegime,
)
from berry_esseen.core.model import DiscreteLaw
from berry_esseen.core.report import TheoremId
from berry_esseen.utils.rng import substream

N_LARGE = 10 ** 4


@pytest.fixture
def var_spec() -> UStatSpec:
    """Sample-variance kernel over 10^4 independent points."""
    return UStatSpec(get_kernel("var"), N_LARGE)


def test_mean_kernel():
    """Test the sample mean of [1, 2, 3] both ways."""
    spec = UStatSpec(get_kernel("mean"), 3)
    assert u_statistic(spec, [1, 2, 3]) == 2.0
    assert u_statistic(spec, [1, 2, 3], closed_form=False) == pytest.approx(2.0)


def test_variance_kernel():
    """Test (x - y)^2 / 2 on [1, 2, 3] both ways."""
    spec = UStatSpec(get_kernel("var"), 3)
    assert u_statistic(spec, [1, 2, 3]) == pytest.approx(1.0)
    assert u_statistic(spec, [1, 2, 3], closed_form=False) == pytest.approx(1.0)


def test_variance_representations_agree():
    """Test the pairwise and the closed sample-variance forms on 100 random samples."""
    spec = UStatSpec(get_kernel("var"), 12)
    for index in range(100):
        data = substream(21, index).normal(size=12)
        closed = u_statistic(spec, data)
        pairwise = u_statistic(spec, data, closed_form=False)
        assert pairwise == pytest.approx(closed, abs=1e-12)


def test_symmetric_kernel_permutation_invariance():
    """Test that permuting the data leaves a symmetric U-statistic unchanged."""
    spec = UStatSpec(get_kernel("gini"), 9)
    data = substream(22, 0).normal(size=9)
    shuffled = substream(22, 1).permutation(data)
    assert u_statistic(spec, shuffled) == pytest.approx(u_statistic(spec, data))


def test_combinations_beyond_cap(caplog):
    """Test that combinations reproduce the ordered average for symmetric kernels."""
    spec = UStatSpec(get_kernel("gini"), 8)
    data = substream(23, 0).normal(size=8)
    with caplog.at_level(logging.INFO):
        capped = u_statistic(spec, data, enumeration_cap=10)
    assert capped == pytest.approx(u_statistic(spec, data))
    assert "averaging over combinations" in caplog.text


def test_too_few_points():
    """Test that fewer data points than the order are refused."""
    spec = UStatSpec(get_kernel("var"), 2)
    with pytest.raises(Insufficient, match="at least 2 data points"):
        u_statistic(spec, [1.0])
    with pytest.raises(Insufficient, match="needs n >= 2"):
        UStatSpec(get_kernel("var"), 1)


def test_unknown_kernel():
    """Test that unknown kernel names are reported."""
    with pytest.raises(ScenarioError, match="Unknown kernel 'median'"):
        get_kernel("median")


def test_graph_bounds_pairs():
    """Test N and the degree bound for n=10, ell=2, m=0."""
    graph = ustat_graph_bounds(10, 2, 0)
    assert graph.N == 90
    assert graph.D_upper == 35
    assert graph.ND_upper == 4000.0


def test_graph_bounds_single_index():
    """Test that ell=1 on independent data gives an edgeless graph."""
    graph = ustat_graph_bounds(7, 1, 0)
    assert (graph.N, graph.D_upper) == (7, 0)


def test_graph_bounds_rejects_bad_order():
    """Test the parameter range."""
    with pytest.raises(WrongRegime, match="n >= ell >= 1"):
        ustat_graph_bounds(2, 3, 0)


def test_explicit_tuple_graph_pairs():
    """Test the explicit degree of the pair graph on six independent points."""
    degree = tuple_graph_max_degree(6, 2, block_clique_adjacency(6, 0))
    assert degree == 17
    assert degree <= ustat_graph_bounds(6, 2, 0).D_upper


@pytest.mark.parametrize("m", [0, 1, 2])
@pytest.mark.parametrize("ell", [1, 2, 3])
@pytest.mark.parametrize("n", [3, 5, 8])
def test_degree_bound_dominates_explicit_graph(n, ell, m):
    """Test that the closed-form degree bound covers the constructed tuple graph."""
    adjacency = block_clique_adjacency(n, m)
    assert max(len(a) for a in adjacency) <= m
    assert tuple_graph_max_degree(n, ell, adjacency) <= ustat_graph_bounds(n, ell, m).D_upper


def test_exact_variance_ratio():
    """Test V[V_n] / V[U_n] = (n!/(n-ell)!)^2 on a small exact sample."""
    laws = [DiscreteLaw([0.0, 1.0, 3.0], [0.2, 0.5, 0.3])] * 3 + [DiscreteLaw.rademacher()]
    variances = exact_ustat_variances(get_kernel("var"), laws)
    assert variances.var_U > 0
    assert variances.ratio == pytest.approx(144.0)


def test_moments_bound_interpolated(var_spec):
    """Test the delta = 2.5 bound at Xi = 1/2."""
    report = ustat_bound(var_spec, float(N_LARGE) ** 3, "moments", 2.5, A=float(var_spec.tuple_count))
    expected = 8.015 * (4e-4) ** (1 / 14) * 2 ** (5 / 7)
    assert report.theorem_id == TheoremId.USTAT_MOMENTS
    assert report.raw_value == pytest.approx(expected)
    assert report.metadata["Xi"] == pytest.approx(0.5)
    assert report.metadata["a_delta"] == pytest.approx(1.0)


def test_moments_bound_third_moment(var_spec):
    """Test that delta = 3 takes the larger of its two branches."""
    report = ustat_bound(var_spec, float(N_LARGE) ** 3, "moments", 3.0, A=float(var_spec.tuple_count))
    assert report.raw_value == pytest.approx(227.5 * 0.02 * 8)
    assert report.binding_branch == "sqrt_n"


def test_bounded_variant(var_spec):
    """Test 227.5 sqrt(ell^2 (m+1) / n) Xi^-3."""
    report = ustat_bound(var_spec, float(N_LARGE) ** 3, "bounded", L=1.0)
    assert report.theorem_id == TheoremId.USTAT_BOUNDED
    assert report.raw_value == pytest.approx(36.4)
    assert report.clamped_value == 1.0


def test_xi_above_one(var_spec):
    """Test that a normalized deviation above 1 is refused."""
    with pytest.raises(InvalidProfile, match="must lie in \\(0, 1\\]"):
        ustat_bound(var_spec, 16 * float(N_LARGE) ** 3, "bounded", L=1.0)


def test_zero_variance(var_spec):
    """Test that V[U_n] = 0 is refused."""
    with pytest.raises(DegenerateVariance):
        ustat_bound(var_spec, 0.0, "bounded", L=1.0)


def test_missing_inputs(var_spec):
    """Test the per-variant input checks."""
    with pytest.raises(MissingMoment, match="needs L"):
        ustat_bound(var_spec, 1.0, "bounded")
    with pytest.raises(MissingMoment, match="A_2.5"):
        ustat_bound(var_spec, 1.0, "moments", 2.5)
    with pytest.raises(WrongRegime, match="delta > 2"):
        ustat_bound(var_spec, 1.0, "moments", 2.0, A=1.0)
    with pytest.raises(ScenarioError, match="variant 'exact'"):
        ustat_bound(var_spec, 1.0, "exact", 3.0, A=1.0)


def test_stationary_variant():
    """Test the stationary bound and its validity flag."""
    spec = UStatSpec(get_kernel("mean"), 100)
    report = ustat_bound(spec, 100.0, "stationary", 2.5, A=100.0, K=1.0)
    assert report.theorem_id == TheoremId.USTAT_STATIONARY
    assert report.raw_value == pytest.approx(11.335 * 100 ** (-1 / 14))
    assert report.valid
    small = ustat_bound(spec, 10.0, "stationary", 2.5, A=100.0, K=1.0)
    assert not small.valid
    assert "not large enough" in small.validity_notes


def test_stationary_needs_k():
    """Test that the stationary variant needs a positive K."""
    spec = UStatSpec(get_kernel("mean"), 100)
    with pytest.raises(MissingMoment, match="K > 0"):
        ustat_bound(spec, 100.0, "stationary", 2.5, A=100.0)


def test_plug_in_moment(caplog):
    """Test the observed moment sum and its warning."""
    spec = UStatSpec(get_kernel("mean"), 3)
    with caplog.at_level(logging.WARNING):
        total = plug_in_moment(spec, [1.0, 2.0, 3.0], 2.0)
    assert total == pytest.approx(2.0)
    assert "not certified" in caplog.text


def test_plug_in_moment_cap():
    """Test that too many tuples are refused."""
    spec = UStatSpec(get_kernel("var"), 50)
    with pytest.raises(OracleTooLarge):
        plug_in_moment(spec, np.arange(50.0), 3.0, enumeration_cap=100)
