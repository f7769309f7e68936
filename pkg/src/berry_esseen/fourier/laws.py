"""Exact characteristic functions and Kolmogorov distances of finite laws."""

import logging
import math
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np
from scipy import special

from berry_esseen.core.errors import DegenerateVariance, InvalidProfile
from berry_esseen.core.model import PROB_TOL, DiscreteFamily, aggregate_atoms, law_of_sum

logger = logging.getLogger(__name__)

STANDARDIZED_TOL = 1e-10


def normal_cdf(t: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
    """Standard normal CDF, accurate to double precision in both tails."""
    result = special.ndtr(t)
    return float(result) if np.ndim(result) == 0 else result


@dataclass(frozen=True)
class StandardizedLaw:
    """
    Finite law given by atoms sorted by value.

    Built through `from_atoms` or `from_family`, the law is that of
    W = (S - E[S]) / v and has mean 0 and variance 1. The bare constructor
    only sorts and merges atoms, so degenerate laws (a point mass) can be
    handled by the same distance routines.
    """

    values: np.ndarray
    probs: np.ndarray

    def __post_init__(self):
        values, probs = aggregate_atoms(self.values, self.probs)
        if values.size == 0 or np.any(probs < 0) or abs(math.fsum(probs) - 1.0) > PROB_TOL:
            raise InvalidProfile("A law needs non-negative probabilities summing to 1.")
        values.setflags(write=False)
        probs.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "probs", probs)

    @classmethod
    def from_atoms(cls, values, probs) -> "StandardizedLaw":
        """
        Standardizes an arbitrary finite law.

        Raises:
            DegenerateVariance: If the law is a point mass.
        """
        values = np.asarray(values, dtype=float)
        probs = np.asarray(probs, dtype=float)
        mean = math.fsum(probs * values)
        variance = math.fsum(probs * (values - mean) ** 2)
        if variance <= 0:
            raise DegenerateVariance("Cannot standardize a law with zero variance.")
        return cls((values - mean) / math.sqrt(variance), probs)

    @classmethod
    def from_family(cls, family: DiscreteFamily) -> "StandardizedLaw":
        """
        Exact law of the standardized sum of `family`.

        Raises:
            OracleTooLarge: If the law of S exceeds the family's support cap.
        """
        values, probs = law_of_sum(family)
        return cls.from_atoms(values, probs)

    @property
    def mean(self) -> float:
        return math.fsum(self.probs * self.values)

    @property
    def variance(self) -> float:
        mu = self.mean
        return math.fsum(self.probs * (self.values - mu) ** 2)

    def is_standardized(self, tol: float = STANDARDIZED_TOL) -> bool:
        return abs(self.mean) <= tol and abs(self.variance - 1.0) <= tol

    def abs_moment(self, order: float) -> float:
        return math.fsum(self.probs * np.abs(self.values) ** order)

    def cdf_pairs(self) -> Tuple[np.ndarray, np.ndarray]:
        """F(x) and F(x-) at every atom."""
        upper = np.minimum(np.cumsum(self.probs), 1.0)
        lower = np.maximum(upper - self.probs, 0.0)
        return upper, lower


def exact_cf(law: StandardizedLaw, s: float) -> complex:
    """E[exp(i s W)], summed with compensation."""
    phase = s * law.values
    return complex(math.fsum(law.probs * np.cos(phase)), math.fsum(law.probs * np.sin(phase)))


def cf_error(law: StandardizedLaw, s: float) -> float:
    """|E[exp(i s W)] - exp(-s^2/2)|."""
    return abs(exact_cf(law, s) - math.exp(-0.5 * s * s))


def exact_dkol(law: StandardizedLaw) -> float:
    """
    Kolmogorov distance between the law and N(0, 1).

    The supremum of |F - Phi| is attained at an atom, either at F(x) or at
    the left limit F(x-).
    """
    phi = normal_cdf(law.values)
    upper, lower = law.cdf_pairs()
    return float(max(np.max(np.abs(upper - phi)), np.max(np.abs(lower - phi))))
