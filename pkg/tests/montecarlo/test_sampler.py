"""
Unit tests for seeded, chunked sampling of the standardized sum.
"""

import logging

import numpy as np
import pytest

from berry_esseen.core.errors import DegenerateVariance, Insufficient
from berry_esseen.core.model import parse_law
from berry_esseen.generators import BernoulliDecay, CliqueBlocks, ThreePointFamily
from berry_esseen.generators.sampling import iid_sums
from berry_esseen.montecarlo import sample_standardized_sum, sample_sums
from berry_esseen.utils.rng import substream


def test_same_seed_same_stream(rademacher):
    """Test that a seed fixes the samples."""
    spec = CliqueBlocks(50, 4, rademacher)
    a = sample_standardized_sum(spec, 7, 5000)
    b = sample_standardized_sum(spec, 7, 5000)
    np.testing.assert_array_equal(a, b)
    assert not np.array_equal(a, sample_standardized_sum(spec, 8, 5000))


@pytest.mark.parametrize("spec", [ThreePointFamily(3.0, 300), BernoulliDecay(300)])
def test_threads_do_not_change_samples(spec):
    """Test that threaded chunks reproduce the serial stream."""
    serial = sample_sums(spec, 3, 10000, chunk_size=1000, threads=1)
    threaded = sample_sums(spec, 3, 10000, chunk_size=1000, threads=4)
    np.testing.assert_array_equal(serial, threaded)


def test_chunk_zero_uses_first_substream(rademacher):
    """Test that a single chunk draws from substream(seed, 0)."""
    spec = CliqueBlocks(10, 1, rademacher)
    direct = iid_sums(substream(5, 0), rademacher, 10, 300)
    np.testing.assert_array_equal(sample_sums(spec, 5, 300), direct)


def test_standardization_is_exact(rademacher):
    """Test that W uses the exact mean and variance of S."""
    spec = CliqueBlocks(25, 4, rademacher)
    samples = sample_standardized_sum(spec, 1, 20000)
    assert set(np.round(np.unique(samples) * 10, 6)) <= {float(k) for k in range(-50, 51, 2)}
    assert abs(samples.mean()) <= 5 / np.sqrt(20000)
    assert samples.std() == pytest.approx(1.0, rel=0.05)


def test_zero_variance_is_refused():
    """Test that a point-mass family cannot be standardized."""
    spec = CliqueBlocks(3, 2, parse_law("point:1"))
    with pytest.raises(DegenerateVariance, match="zero variance"):
        sample_standardized_sum(spec, 0, 100)


def test_estimated_variance_is_flagged(rademacher, caplog):
    """Test that sample standardization logs a warning."""
    spec = CliqueBlocks(25, 2, rademacher)
    with caplog.at_level(logging.WARNING):
        samples = sample_standardized_sum(spec, 0, 1000, estimate_v=True)
    assert samples.mean() == pytest.approx(0.0, abs=1e-12)
    assert "not certified" in caplog.text


def test_no_samples_is_refused(rademacher):
    """Test that at least one sample is needed."""
    with pytest.raises(Insufficient, match="at least one sample"):
        sample_sums(CliqueBlocks(2, 2, rademacher), 0, 0)


@pytest.mark.slow
def test_large_clique_mean(rademacher):
    """Test the sample mean of W for 4 x 10^5 summands at the CLT scale."""
    spec = CliqueBlocks(10 ** 5, 4, rademacher)
    samples = sample_standardized_sum(spec, 11, 10 ** 6, threads=4)
    assert abs(samples.mean()) <= 5 / np.sqrt(10 ** 6)
