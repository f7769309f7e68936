"""
Empirical certification of the bounds.

A bound passes when empirical_dkol - dkw_margin <= clamped bound, the margin
being the Dvoretzky-Kiefer-Wolfowitz band at the requested confidence. This
criterion is a construction of this package: at the given confidence, a
failure means the bound is violated by the true distribution.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Sequence, Union

import numpy as np
import pandas as pd

from berry_esseen.bounds.registry import BoundRegistry, default_registry
from berry_esseen.core.errors import Insufficient, WrongRegime
from berry_esseen.core.model import DiscreteLaw
from berry_esseen.core.report import TheoremId
from berry_esseen.fourier.laws import normal_cdf
from berry_esseen.generators.base import FamilySpec
from berry_esseen.generators.families import clique_blocks
from berry_esseen.montecarlo.sampler import DEFAULT_CHUNK_SIZE, sample_standardized_sum
from berry_esseen.utils.rng import derived_seed
from berry_esseen.utils.trend import TrendFit, fit_log_slope

logger = logging.getLogger(__name__)

# Upper bound on the best constant in the reverse inequality for lattice sums.
REVERSE_BE_CONSTANT = (math.sqrt(10) + 3) / (6 * math.sqrt(2 * math.pi))
PROFILE_DELTAS = (2.0, 3.0, 4.0)


def empirical_dkol(samples: Sequence[float]) -> float:
    """
    sup_t |F_n(t) - Phi(t)| for the empirical CDF F_n of the samples:
    max over sorted x_(i) of max(|i/n - Phi(x_(i))|, |(i-1)/n - Phi(x_(i))|).

    Raises:
        Insufficient: If there are no samples.
    """
    x = np.sort(np.asarray(samples, dtype=float).ravel(), kind="mergesort")
    n = x.size
    if n == 0:
        raise Insufficient("The empirical Kolmogorov distance needs at least one sample.")
    phi = normal_cdf(x)
    upper = np.arange(1, n + 1) / n
    lower = np.arange(0, n) / n
    return float(max(np.max(np.abs(upper - phi)), np.max(np.abs(lower - phi))))


def dkw_margin(n_samples: int, confidence: float) -> float:
    """sqrt(ln(2/(1 - confidence)) / (2 n))."""
    if not 0 < confidence < 1:
        raise WrongRegime(f"Confidence must lie in (0, 1), got {confidence}.")
    if n_samples < 1:
        raise Insufficient(f"Need at least one sample, got {n_samples}.")
    return math.sqrt(math.log(2 / (1 - confidence)) / (2 * n_samples))


@dataclass(frozen=True)
class VerificationReport:
    spec: Dict[str, Any]
    theorem: str
    n_samples: int
    empirical_dkol: float
    dkw_margin: float
    theoretical_bound: float
    confidence: float
    seed: int
    estimated_v: bool = False
    bound_notes: str = ""
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.empirical_dkol - self.dkw_margin <= self.theoretical_bound

    def to_dict(self) -> Dict[str, Any]:
        return {
            "spec": self.spec,
            "theorem": self.theorem,
            "n_samples": self.n_samples,
            "empirical_dkol": self.empirical_dkol,
            "dkw_margin": self.dkw_margin,
            "theoretical_bound": self.theoretical_bound,
            "pass": self.passed,
            "confidence": self.confidence,
            "seed": self.seed,
            "estimated_v": self.estimated_v,
            "bound_notes": self.bound_notes,
            "metadata": dict(self.metadata),
        }


def verify_bound(
    spec: FamilySpec,
    theorem_id: Union[TheoremId, str],
    n_samples: int = 1_000_000,
    confidence: float = 0.99,
    seed: int = 0,
    delta: Optional[float] = None,
    threads: int = 1,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
    estimate_v: bool = False,
    registry: Optional[BoundRegistry] = None,
) -> VerificationReport:
    """
    Compares the empirical Kolmogorov distance of W with a theoretical bound.

    Args:
        spec (FamilySpec): The family; its analytic profile feeds the bound.
        theorem_id (Union[TheoremId, str]): Bound to check.
        n_samples (int): Monte Carlo draws of W.
        confidence (float): Confidence level of the DKW margin.
        seed (int): Master seed.
        delta (Optional[float]): Moment order for indexed bounds.
        threads (int): Sampling threads.
        chunk_size (int): Draws per substream.
        estimate_v (bool): Standardize with sample moments (flagged).
        registry (Optional[BoundRegistry]): Bound evaluators; defaults to
            `default_registry()`.

    Returns:
        VerificationReport: Pass iff empirical - margin <= clamped bound.
    """
    registry = registry or default_registry()
    deltas = sorted(set(PROFILE_DELTAS) | ({float(delta)} if delta is not None else set()))
    profile = spec.profile(deltas)
    report = registry.evaluate(theorem_id, profile, delta)
    margin = dkw_margin(n_samples, confidence)

    logger.info(f"Verifying {report.label} on {spec.kind} (N={spec.N}, D={spec.D}) with {n_samples} samples")
    samples = sample_standardized_sum(spec, seed, n_samples, chunk_size, threads, estimate_v)
    result = VerificationReport(
        spec=spec.to_dict(),
        theorem=report.label,
        n_samples=n_samples,
        empirical_dkol=empirical_dkol(samples),
        dkw_margin=margin,
        theoretical_bound=report.clamped_value,
        confidence=confidence,
        seed=seed,
        estimated_v=estimate_v,
        bound_notes=report.validity_notes,
        metadata={"graph_verified": spec.graph_verified, "raw_bound": report.raw_value},
    )
    if not result.passed:
        logger.warning(
            f"{report.label} failed: empirical {result.empirical_dkol:.6g} - margin {margin:.6g} "
            f"> bound {result.theoretical_bound:.6g}"
        )
    return result


@dataclass(frozen=True)
class RateScan:
    """Empirical dkol of clique families against sqrt((D+1)/N)."""

    frame: pd.DataFrame
    fit: TrendFit
    reverse_constant: float = REVERSE_BE_CONSTANT


def rate_scan(
    block_size: int,
    base_law: DiscreteLaw,
    sizes: Sequence[int],
    n_samples: int,
    seed: int = 0,
    confidence: float = 0.99,
    threads: int = 1,
) -> RateScan:
    """
    Tabulates empirical dkol and dkol * sqrt(N/(D+1)) for clique families of
    growing size N with fixed block size, and fits the log-slope of dkol in N.
    """
    rows = []
    margin = dkw_margin(n_samples, confidence)
    for size in sizes:
        spec = clique_blocks(max(1, size // block_size), block_size, base_law)
        # Keyed on N, so a row does not depend on the other sizes scanned.
        samples = sample_standardized_sum(spec, derived_seed(seed, spec.N), n_samples, threads=threads)
        dkol = empirical_dkol(samples)
        rows.append({
            "N": spec.N,
            "D": spec.D,
            "empirical_dkol": dkol,
            "dkw_margin": margin,
            "scaled": dkol * math.sqrt(spec.N / (spec.D + 1)),
        })
    frame = pd.DataFrame(rows, columns=["N", "D", "empirical_dkol", "dkw_margin", "scaled"])
    fit = fit_log_slope(frame["N"], frame["empirical_dkol"], threshold=-0.25)
    logger.info(f"Rate scan slope {fit.slope} over {len(sizes)} sizes")
    return RateScan(frame, fit)
