"""Exact-in-law samplers for sums of discrete variables."""

import logging
import math
from typing import Callable, Tuple

import numpy as np

from berry_esseen.core.model import DiscreteLaw

logger = logging.getLogger(__name__)

# Upper bound on the number of array elements materialized at once.
MAX_BATCH_ELEMENTS = 1 << 22


def iid_sums(generator: np.random.Generator, law: DiscreteLaw, count: int, size: int) -> np.ndarray:
    """Draws of the sum of `count` i.i.d. copies of `law`, via multinomial atom counts."""
    atoms = generator.multinomial(count, law.probs, size=size)
    return atoms @ law.values


def bernoulli_positions(generator: np.random.Generator, size: int, length: int,
                        p: float) -> Tuple[np.ndarray, np.ndarray]:
    """
    Success positions of `size` independent Bernoulli(p) sequences of `length`.

    Positions are cumulative sums of geometric gaps, so the work is
    proportional to the number of successes rather than to `length`.

    Returns:
        Tuple[np.ndarray, np.ndarray]: (row index, position) of every success.
    """
    if p >= 1.0:
        return np.repeat(np.arange(size), length), np.tile(np.arange(length), size)
    if p <= 0.0 or length == 0:
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)

    mu = length * p
    width = int(mu + 10 * math.sqrt(mu) + 10)
    rows_out, positions_out = [], []
    active = np.arange(size)
    base = np.full(size, -1, dtype=np.int64)
    while active.size:
        positions = base[:, None] + np.cumsum(generator.geometric(p, size=(active.size, width)), axis=1)
        inside = positions < length
        r, c = np.nonzero(inside)
        rows_out.append(active[r])
        positions_out.append(positions[r, c])
        unfinished = inside[:, -1]
        base = positions[unfinished, -1]
        active = active[unfinished]
    return np.concatenate(rows_out), np.concatenate(positions_out)


def sparse_sums(
    generator: np.random.Generator,
    size: int,
    probs: np.ndarray,
    values: Callable[[np.ndarray, np.random.Generator], np.ndarray],
) -> np.ndarray:
    """
    Draws of sum_k Y_k for independent Y_k that vanish except with probability probs[k].

    Indices are split into dyadic blocks [2^j - 1, 2^(j+1) - 1). Inside a block,
    candidates are drawn at the block's largest rate with geometric gaps and
    then thinned to each index's own rate.

    Args:
        generator (np.random.Generator): Source of randomness.
        size (int): Number of draws.
        probs (np.ndarray): P[Y_k != 0] for k = 0..N-1.
        values (Callable): Maps an array of indices k to the non-zero values
            of the corresponding Y_k, drawn from their conditional laws.

    Returns:
        np.ndarray: Array of shape (size,).
    """
    totals = np.zeros(size)
    n = probs.size
    start = 0
    while start < n:
        stop = min(n, 2 * start + 1)
        block = probs[start:stop]
        p_max = float(block.max())
        if p_max > 0:
            rows, offsets = bernoulli_positions(generator, size, stop - start, p_max)
            keep = generator.random(offsets.size) * p_max < block[offsets]
            rows, index = rows[keep], offsets[keep] + start
            np.add.at(totals, rows, values(index, generator))
        start = stop
    return totals


def batched(size: int, row_width: int):
    """Yields (start, stop) row ranges whose arrays stay under MAX_BATCH_ELEMENTS."""
    rows = max(1, MAX_BATCH_ELEMENTS // max(row_width, 1))
    for start in range(0, size, rows):
        yield start, min(start + rows, size)
