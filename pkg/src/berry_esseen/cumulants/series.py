"""
Exact cumulants of the sum S on enumerable families.

Cumulants are obtained from the central moments of the exact law of S via
the moment-cumulant recursion. High orders suffer from alternating
cancellation, so the order is capped.
"""

import logging
import math
from typing import List, Sequence

import numpy as np

from berry_esseen.core.errors import WrongRegime
from berry_esseen.core.model import DiscreteFamily, law_of_sum

logger = logging.getLogger(__name__)

MAX_CUMULANT_ORDER = 12
WARN_CUMULANT_ORDER = 8


def moments_to_cumulants(moments: Sequence[float]) -> List[float]:
    """
    Converts raw moments (m_1, ..., m_r) into cumulants (k_1, ..., k_r).

    Uses k_n = m_n - sum_{k=1}^{n-1} binom(n-1, k-1) k_k m_{n-k}.
    """
    m = [1.0] + [float(x) for x in moments]
    kappa = [0.0]
    for n in range(1, len(m)):
        acc = [m[n]]
        acc.extend(-math.comb(n - 1, k - 1) * kappa[k] * m[n - k] for k in range(1, n))
        kappa.append(math.fsum(acc))
    return kappa[1:]


def cumulants_to_moments(cumulants: Sequence[float]) -> List[float]:
    """Inverse of `moments_to_cumulants`: m_n = sum_{k=1}^{n} binom(n-1, k-1) k_k m_{n-k}."""
    kappa = [0.0] + [float(x) for x in cumulants]
    m = [1.0]
    for n in range(1, len(kappa)):
        m.append(math.fsum(math.comb(n - 1, k - 1) * kappa[k] * m[n - k] for k in range(1, n + 1)))
    return m[1:]


def _check_order(r: int, max_order: int, warn_order: int) -> None:
    if r < 1:
        raise WrongRegime(f"Cumulant order must be at least 1, got {r}.")
    if r > max_order:
        raise WrongRegime(f"Cumulant order {r} exceeds the supported maximum {max_order}.")
    if r > warn_order:
        logger.warning(f"Cumulant of order {r} is computed through an ill-conditioned recursion.")


def cumulants_of_law(values: np.ndarray, probs: np.ndarray, r_max: int,
                     max_order: int = MAX_CUMULANT_ORDER,
                     warn_order: int = WARN_CUMULANT_ORDER) -> List[float]:
    """Cumulants k_1..k_{r_max} of a finite law given by atoms."""
    _check_order(r_max, max_order, warn_order)
    values = np.asarray(values, dtype=float)
    probs = np.asarray(probs, dtype=float)
    mu = math.fsum(probs * values)
    dev = values - mu
    central = [0.0] + [math.fsum(probs * dev ** j) for j in range(2, r_max + 1)]
    kappa = moments_to_cumulants(central)
    kappa[0] = mu
    return kappa


def cumulants_of_sum(family: DiscreteFamily, r_max: int,
                     max_order: int = MAX_CUMULANT_ORDER,
                     warn_order: int = WARN_CUMULANT_ORDER) -> List[float]:
    """
    Exact cumulants k_1(S), ..., k_{r_max}(S).

    Raises:
        OracleTooLarge: If the law of S cannot be enumerated within the cap.
        WrongRegime: If `r_max` is outside 1..max_order.
    """
    _check_order(r_max, max_order, warn_order)
    values, probs = law_of_sum(family)
    return cumulants_of_law(values, probs, r_max, max_order, warn_order)


def cumulant_of_sum(family: DiscreteFamily, r: int) -> float:
    """Exact r-th cumulant of S; k_1 = E[S], k_2 = V[S]."""
    return cumulants_of_sum(family, r)[r - 1]
