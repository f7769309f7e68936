"""Seeded, chunked sampling of the standardized sum W = (S - E S)/sqrt(V S)."""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import List, Tuple

import numpy as np

from berry_esseen.core.errors import DegenerateVariance, Insufficient
from berry_esseen.generators.base import FamilySpec
from berry_esseen.utils.rng import chunk_bounds, substream

logger = logging.getLogger(__name__)

DEFAULT_CHUNK_SIZE = 65_536


def sample_sums(spec: FamilySpec, seed: int, n_samples: int, chunk_size: int = DEFAULT_CHUNK_SIZE,
                threads: int = 1) -> np.ndarray:
    """
    Draws of S. Chunk j is drawn from substream(seed, j), so the result does
    not depend on `threads`.
    """
    if n_samples < 1:
        raise Insufficient(f"Need at least one sample, got {n_samples}.")
    chunks: List[Tuple[int, int, int]] = list(chunk_bounds(n_samples, chunk_size))
    out = np.empty(n_samples)

    def draw(chunk: Tuple[int, int, int]) -> None:
        index, start, stop = chunk
        out[start:stop] = spec.sample_sums(substream(seed, index), stop - start)

    if threads > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(draw, chunks))
    else:
        for chunk in chunks:
            draw(chunk)
    return out


def sample_standardized_sum(
    spec: FamilySpec,
    seed: int,
    n_samples: int,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
    threads: int = 1,
    estimate_v: bool = False,
) -> np.ndarray:
    """
    Draws of W standardized with the exact mean and variance of the spec.

    Args:
        spec (FamilySpec): The family.
        seed (int): Master seed.
        n_samples (int): Number of draws.
        chunk_size (int): Draws per substream.
        threads (int): Worker threads; the output is identical for any value.
        estimate_v (bool): Standardize with the sample mean and deviation
            instead. The theorems concern exact standardization, so this is
            only for families without a closed-form variance.

    Raises:
        DegenerateVariance: If V[S] = 0.
    """
    sums = sample_sums(spec, seed, n_samples, chunk_size, threads)
    if estimate_v:
        logger.warning("Standardizing with the sample mean and deviation; results are not certified.")
        mean, scale = float(np.mean(sums)), float(np.std(sums))
    else:
        mean, scale = spec.mean(), math.sqrt(max(spec.variance(), 0.0))
    if scale <= 0:
        logger.error("Cannot standardize a sum with zero variance")
        raise DegenerateVariance("The sum S has zero variance.")
    return (sums - mean) / scale
