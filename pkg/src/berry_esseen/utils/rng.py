"""Seeded, counter-based random streams.

Every random draw in the package goes through `substream(seed, index)`. The
stream for a given `(seed, index)` pair is fixed: it does not depend on how
many workers run, in which order chunks are processed, or what was drawn
before. Monte Carlo code assigns one index per sample chunk, so serial and
threaded runs produce the same samples bit for bit.
"""

from typing import Iterator, Tuple

import numpy as np

__all__ = ["substream", "derived_seed", "chunk_bounds", "random_generator"]


def substream(seed: int, index: int) -> np.random.Generator:
    """
    Returns the generator for substream `index` of `seed`.

    The bit generator is Philox (counter-based) keyed by a `SeedSequence`
    whose spawn key is the substream index.

    Args:
        seed (int): Non-negative master seed.
        index (int): Non-negative substream index.

    Returns:
        numpy.random.Generator: A fresh generator positioned at the start of
            the substream.

    Raises:
        ValueError: If `seed` or `index` is negative.
    """
    if seed < 0 or index < 0:
        raise ValueError(f"Seed and substream index must be non-negative, got {seed}, {index}.")
    sequence = np.random.SeedSequence(entropy=int(seed), spawn_key=(int(index),))
    return np.random.Generator(np.random.Philox(sequence))


def derived_seed(seed: int, key: int) -> int:
    """
    A master seed for the run labelled `key` under `seed`.

    Runs keyed by different labels draw from unrelated streams, and a run's
    seed depends only on `(seed, key)`, not on which other runs exist.

    Raises:
        ValueError: If `seed` or `key` is negative.
    """
    if seed < 0 or key < 0:
        raise ValueError(f"Seed and key must be non-negative, got {seed}, {key}.")
    sequence = np.random.SeedSequence(entropy=int(seed), spawn_key=(int(key),))
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


def random_generator(seed: int) -> np.random.Generator:
    """Generator for one-off randomized constructions (substream 0)."""
    return substream(seed, 0)


def chunk_bounds(n_samples: int, chunk_size: int) -> Iterator[Tuple[int, int, int]]:
    """Yields `(chunk_index, start, stop)` covering `range(n_samples)`."""
    if chunk_size <= 0:
        raise ValueError(f"Chunk size must be positive, got {chunk_size}.")
    for index, start in enumerate(range(0, n_samples, chunk_size)):
        yield index, start, min(start + chunk_size, n_samples)
