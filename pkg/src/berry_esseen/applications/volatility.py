"""
Volatility estimation from returns over unevenly spaced epochs.

With increments X_k over [t_{k-1}, t_k], E[X_k] = e kappa_k and
V[X_k] = nu kappa_k, the least-squares estimators are

    e_hat = (1/t_n) sum_k X_k,
    nu_hat = (1/n) sum_k X_k^2 / kappa_k - (t_n/n) e_hat^2.

n t_n nu_hat is the sum of Y_{i,j} = (X_i/kappa_i)((t_n/n) X_i - kappa_i X_j)
over all pairs, which carries a dependency graph of degree at most 4(m+1)n - 1.
"""

import logging
import math
from dataclasses import dataclass
from typing import Any, Callable, Dict, Optional, Sequence

import numpy as np

from berry_esseen.core.errors import Insufficient, InvalidProfile, MissingMoment, WrongRegime
from berry_esseen.core.model import DiscreteLaw
from berry_esseen.core.report import BoundReport, TheoremId
from berry_esseen.utils.rng import substream

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class VolatilitySpec:
    """
    Observation epochs and model parameters.

    Attributes:
        times (np.ndarray): t_1 < ... < t_n; t_0 = 0 is implicit and a
            leading zero is dropped.
        delta (Optional[float]): Moment order, > 4 for the bound.
        m (int): Maximum degree of the dependency graph of the increments.
        K (Optional[float]): Constant with V[nu_hat] >= K^2 / n.
        nu (Optional[float]): True variance rate, when known.
    """

    times: np.ndarray
    delta: Optional[float] = None
    m: int = 0
    K: Optional[float] = None  # pylint: disable=invalid-name
    nu: Optional[float] = None

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float).ravel()
        if times.size and times[0] == 0:
            times = times[1:]
        if times.size == 0:
            raise InvalidProfile("At least one observation time is required.")
        if np.any(np.diff(np.concatenate([[0.0], times])) <= 0):
            raise InvalidProfile("Observation times must be strictly increasing from t_0 = 0.")
        if self.m < 0:
            raise InvalidProfile(f"The dependency degree m must be non-negative, got {self.m}.")
        times.setflags(write=False)
        object.__setattr__(self, "times", times)

    @property
    def n(self) -> int:
        return int(self.times.size)

    @property
    def t_n(self) -> float:
        return float(self.times[-1])

    @property
    def kappas(self) -> np.ndarray:
        return np.diff(np.concatenate([[0.0], self.times]))


@dataclass(frozen=True)
class VolatilityEstimates:
    e_hat: float
    nu_hat: float
    unbiased: bool

    def to_dict(self) -> Dict[str, Any]:
        return dict(self.__dict__)


def volatility_estimators(spec: VolatilitySpec, increments: Sequence[float], unbiased: bool = False) -> VolatilityEstimates:
    """
    Least-squares estimates of the drift and the variance rate.

    Args:
        spec (VolatilitySpec): Observation epochs.
        increments (Sequence[float]): X_1..X_n.
        unbiased (bool): Use n - 1 in the denominators of nu_hat.

    Raises:
        Insufficient: If n < 2 or the increments do not match the epochs.
    """
    x = np.asarray(increments, dtype=float)
    if x.size != spec.n:
        raise Insufficient(f"Expected {spec.n} increments, got {x.size}.")
    if spec.n < 2:
        raise Insufficient("Volatility estimation needs at least two increments.")
    denominator = spec.n - 1 if unbiased else spec.n
    e_hat = math.fsum(x) / spec.t_n
    nu_hat = math.fsum(x ** 2 / spec.kappas) / denominator - spec.t_n / denominator * e_hat ** 2
    return VolatilityEstimates(e_hat, nu_hat, unbiased)


def tail_constant(spec: VolatilitySpec, scaled_moments: Sequence[float], delta: Optional[float] = None) -> float:
    """
    T = (2^((delta-1)/2)/n) sum_i (kappa_i^delta + (t_n/n)^delta / 2) E|X_i/kappa_i|^delta.

    Args:
        spec (VolatilitySpec): Epochs, and delta unless given.
        scaled_moments (Sequence[float]): E|X_i/kappa_i|^delta for each i.
    """
    delta = spec.delta if delta is None else delta
    if delta is None:
        raise MissingMoment("The moment order delta is required.")
    moments = np.asarray(scaled_moments, dtype=float)
    if moments.size != spec.n:
        raise Insufficient(f"Expected {spec.n} moments, got {moments.size}.")
    weights = spec.kappas ** delta + 0.5 * (spec.t_n / spec.n) ** delta
    return 2 ** ((delta - 1) / 2) / spec.n * math.fsum(weights * moments)


def scaled_moments_of(spec: VolatilitySpec, laws: Sequence[DiscreteLaw], delta: float) -> np.ndarray:
    """E|X_i/kappa_i|^delta for discrete increment laws."""
    return np.array([law.abs_moment(delta) / kappa ** delta for law, kappa in zip(laws, spec.kappas)])


def volatility_bound(spec: VolatilitySpec, scaled_moments: Sequence[float]) -> BoundReport:
    """
    Bound on the Kolmogorov distance of (nu_hat - nu)/sqrt(V[nu_hat]) to N(0, 1).

    With d = delta/2 and
        B = (n/(K t_n))^(d/(d+1)) T^(1/(d+1)) (4(m+1))^((d-1)/(d+1)) n^(-(d-2)/(2(d+1))),
    the bound is 8.015 B for delta in (4, 6) and
    max{18.96 B, 227.5 (n/(K t_n))^3 T^(3/d) (4(m+1))^2 / sqrt(n)} for delta >= 6.

    Raises:
        WrongRegime: If delta <= 4.
        MissingMoment: If K is missing or not positive.
    """
    delta = spec.delta
    if delta is None or delta <= 4:
        raise WrongRegime(f"The volatility bound needs delta > 4, got {delta}.")
    if spec.K is None or not spec.K > 0:
        raise MissingMoment("The volatility bound needs a constant K > 0 with V[nu_hat] >= K^2/n.")
    tail = tail_constant(spec, scaled_moments)
    n = spec.n
    d = delta / 2
    ratio = n / (spec.K * spec.t_n)
    degree = 4 * (spec.m + 1)
    base = (ratio ** (d / (d + 1)) * tail ** (1 / (d + 1)) * degree ** ((d - 1) / (d + 1))
            * n ** (-(d - 2) / (2 * (d + 1))))

    if delta < 6:
        raw, branch = 8.015 * base, "interpolated"
        condition = f"m+1 = o(n^{(d - 2) / (2 * d - 2):.4g})"
    else:
        second = 227.5 * ratio ** 3 * tail ** (3 / d) * degree ** 2 / math.sqrt(n)
        raw = max(18.96 * base, second)
        branch = "interpolated" if 18.96 * base >= second else "sqrt_n"
        condition = "m+1 = o(n^(1/4))"
    note = f"convergence to N(0,1) needs bounded T, bounded n/t_n and {condition}"
    return BoundReport(
        TheoremId.VOLATILITY, raw, branch, True, note, delta,
        {"T": tail, "half_delta": d, "N": n * n, "D_upper": degree * n - 1},
    )


def pair_moment_sum(spec: VolatilitySpec, laws: Sequence[DiscreteLaw], delta: float) -> float:
    """
    sum_{i,j} E|Y_{i,j}|^(delta/2) for independent discrete increments, exactly.
    Bounded by n^2 T.
    """
    if len(laws) != spec.n:
        raise Insufficient(f"Expected {spec.n} laws, got {len(laws)}.")
    scale = spec.t_n / spec.n
    half = delta / 2
    terms = []
    for i, (law_i, kappa_i) in enumerate(zip(laws, spec.kappas)):
        for j, law_j in enumerate(laws):
            if i == j:
                y = law_i.values / kappa_i * (scale - kappa_i) * law_i.values
                terms.append(math.fsum(law_i.probs * np.abs(y) ** half))
            else:
                xi_ = law_i.values[:, None]
                xj = law_j.values[None, :]
                y = xi_ / kappa_i * (scale * xi_ - kappa_i * xj)
                terms.append(math.fsum((np.outer(law_i.probs, law_j.probs) * np.abs(y) ** half).ravel()))
    return math.fsum(terms)


@dataclass(frozen=True)
class KEstimate:
    value: float
    reps: int
    variance: float
    estimated: bool = True

    def to_dict(self) -> Dict[str, Any]:
        return dict(self.__dict__)


def estimate_K(  # pylint: disable=invalid-name
    spec: VolatilitySpec,
    sampler: Callable[[np.random.Generator], np.ndarray],
    reps: int,
    seed: int,
) -> KEstimate:
    """
    Pilot estimate of K as sqrt(n V[nu_hat]) over `reps` simulated paths.

    Args:
        spec (VolatilitySpec): Epochs.
        sampler (Callable): Draws one vector of increments X_1..X_n.
        reps (int): Number of pilot paths; each uses its own substream.
        seed (int): Master seed.
    """
    if reps < 2:
        raise Insufficient(f"Estimating K needs at least 2 pilot paths, got {reps}.")
    estimates = np.array([
        volatility_estimators(spec, sampler(substream(seed, rep))).nu_hat for rep in range(reps)
    ])
    variance = float(np.var(estimates, ddof=1))
    logger.warning(f"K estimated from {reps} pilot paths; the resulting bound is not certified.")
    return KEstimate(math.sqrt(spec.n * variance), reps, variance)
