"""Log-log trend fitting for sequences indexed by a growing size N."""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

import numpy as np
from scipy import stats

from berry_esseen.core.errors import Insufficient

logger = logging.getLogger(__name__)

DEFAULT_SLOPE_THRESHOLD = -0.05


class Verdict(str, Enum):
    YES = "yes"
    NO = "no"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class TrendFit:
    """Least-squares slope of log(value) against log(N)."""

    slope: Optional[float]
    intercept: Optional[float]
    verdict: Verdict
    threshold: float

    def to_dict(self) -> dict:
        return {
            "slope": self.slope,
            "intercept": self.intercept,
            "verdict": self.verdict.value,
            "threshold": self.threshold,
        }


def fit_log_slope(
    sizes: Sequence[float],
    values: Sequence[float],
    threshold: float = DEFAULT_SLOPE_THRESHOLD,
    min_points: int = 3,
) -> TrendFit:
    """
    Fits log(value) = slope * log(N) + intercept and classifies the trend.

    The verdict is "yes" (trending to 0) when the slope is below `threshold`,
    "no" otherwise, and "inconclusive" when the sizes do not vary or some
    value is non-positive or non-finite.

    Args:
        sizes (Sequence[float]): Increasing sizes N.
        values (Sequence[float]): The quantity evaluated at each size.
        threshold (float): Slope below which the quantity is judged to vanish.
        min_points (int): Minimum number of points.

    Returns:
        TrendFit: The fitted slope and verdict.

    Raises:
        Insufficient: If fewer than `min_points` points are given.
    """
    n_arr = np.asarray(sizes, dtype=float)
    q_arr = np.asarray(values, dtype=float)
    if n_arr.shape != q_arr.shape:
        raise ValueError("Sizes and values must have the same length.")
    if n_arr.size < min_points:
        raise Insufficient(f"Need at least {min_points} points for a trend, got {n_arr.size}.")

    if (
        not np.all(np.isfinite(q_arr))
        or np.any(q_arr <= 0)
        or np.any(n_arr <= 0)
        or np.ptp(n_arr) == 0
    ):
        return TrendFit(None, None, Verdict.INCONCLUSIVE, threshold)

    fit = stats.linregress(np.log(n_arr), np.log(q_arr))
    slope = float(fit.slope)
    verdict = Verdict.YES if slope < threshold else Verdict.NO
    logger.debug(f"Fitted log-slope {slope:.4f} over {n_arr.size} points: {verdict.value}")
    return TrendFit(slope, float(fit.intercept), verdict, threshold)
