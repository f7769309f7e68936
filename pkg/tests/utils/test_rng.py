"""
Unit tests for seeded substreams.
"""

import numpy as np
import pytest

from berry_esseen.utils.rng import chunk_bounds, derived_seed, random_generator, substream


def test_substream_is_deterministic():
    """Test that a (seed, index) pair fixes the stream."""
    np.testing.assert_array_equal(substream(42, 3).random(10), substream(42, 3).random(10))


def test_substreams_differ():
    """Test that neighbouring indices and seeds give different streams."""
    base = substream(42, 3).random(10)
    assert not np.array_equal(base, substream(42, 4).random(10))
    assert not np.array_equal(base, substream(43, 3).random(10))


def test_substream_uses_philox():
    """Test the counter-based bit generator."""
    assert isinstance(substream(0, 0).bit_generator, np.random.Philox)


def test_random_generator_is_first_substream():
    """Test that one-off generators use substream 0."""
    np.testing.assert_array_equal(random_generator(9).random(5), substream(9, 0).random(5))


@pytest.mark.parametrize("seed, index", [(-1, 0), (0, -1)])
def test_negative_arguments(seed, index):
    """Test that negative seeds and indices are refused."""
    with pytest.raises(ValueError, match="must be non-negative"):
        substream(seed, index)


def test_chunk_bounds_cover_range():
    """Test that chunks tile the sample range in order."""
    assert list(chunk_bounds(10, 4)) == [(0, 0, 4), (1, 4, 8), (2, 8, 10)]
    assert not list(chunk_bounds(0, 4))


def test_chunk_bounds_rejects_zero_size():
    """Test that the chunk size must be positive."""
    with pytest.raises(ValueError, match="Chunk size must be positive"):
        list(chunk_bounds(10, 0))


def test_derived_seed_depends_on_both_arguments():
    """Test that derived seeds are fixed by (seed, key) and differ across keys and seeds."""
    assert derived_seed(3, 64) == derived_seed(3, 64)
    assert len({derived_seed(3, 64), derived_seed(3, 32), derived_seed(4, 64), derived_seed(4, 32)}) == 4
    assert derived_seed(3, 64) >= 0


def test_derived_seed_rejects_negative_key():
    """Test that negative keys are refused."""
    with pytest.raises(ValueError, match="must be non-negative"):
        derived_seed(0, -1)
