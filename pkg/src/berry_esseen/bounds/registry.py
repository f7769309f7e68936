"""
Bound Registry

Maps theorem ids to evaluator functions so that callers (the CLI table, the
verification harness, `best_bound`) can evaluate bounds by name. Evaluators
take a `MomentProfile` and, for delta-indexed results, a moment order.
"""

import logging
from typing import Callable, Dict, List, Optional, Sequence

from berry_esseen.bounds import baselines, theorems
from berry_esseen.core.errors import (
    DegenerateVariance,
    MissingMoment,
    NoApplicableBound,
    WrongRegime,
)
from berry_esseen.core.model import MomentProfile
from berry_esseen.core.report import BoundReport, TheoremId

logger = logging.getLogger(__name__)

Evaluator = Callable[..., BoundReport]

# Precondition failures that turn into an "inapplicable" row instead of an error.
PRECONDITION_ERRORS = (MissingMoment, WrongRegime)


class BoundRegistry:
    """
    A named collection of bound evaluators.

    Attributes:
        _evaluators (Dict[TheoremId, Evaluator]): Registered evaluators.
        _indexed (Dict[TheoremId, bool]): Whether an evaluator takes delta.
    """

    def __init__(self):
        self._evaluators: Dict[TheoremId, Evaluator] = {}
        self._indexed: Dict[TheoremId, bool] = {}

    def register(self, theorem_id, evaluator: Evaluator, indexed: bool = False) -> None:
        """
        Registers an evaluator.

        Args:
            theorem_id (TheoremId | str): Identifier of the bound.
            evaluator (Evaluator): `evaluator(profile)` or, when `indexed`,
                `evaluator(profile, delta)`.
            indexed (bool): Whether the bound is indexed by a moment order.

        Raises:
            ValueError: If `theorem_id` is not a known id.
        """
        key = TheoremId(theorem_id)
        if key in self._evaluators:
            logger.warning(f"Evaluator for '{key.value}' is being replaced.")
        self._evaluators[key] = evaluator
        self._indexed[key] = indexed
        logger.debug(f"Registered evaluator '{key.value}'.")

    def ids(self) -> List[TheoremId]:
        return list(self._evaluators)

    def is_indexed(self, theorem_id) -> bool:
        return self._indexed[TheoremId(theorem_id)]

    def evaluate(self, theorem_id, profile: MomentProfile, delta: Optional[float] = None) -> BoundReport:
        """
        Evaluates one registered bound.

        Raises:
            ValueError: If no evaluator is registered under `theorem_id`.
            WrongRegime: If an indexed bound is called without delta.
        """
        try:
            key = TheoremId(theorem_id)
        except ValueError:
            key = None
        if key not in self._evaluators:
            raise ValueError(f"Theorem '{getattr(theorem_id, 'value', theorem_id)}' not found.")
        evaluator = self._evaluators[key]
        if self._indexed[key]:
            if delta is None:
                raise WrongRegime(f"Bound '{key.value}' needs a moment order delta.")
            return evaluator(profile, delta)
        return evaluator(profile)

    def evaluate_all(self, profile: MomentProfile, deltas: Optional[Sequence[float]] = None) -> List[BoundReport]:
        """
        Evaluates every registered bound, once per stored delta for indexed ones.

        Precondition failures become invalid rows (raw = +inf) carrying the
        error message. A zero variance is not a precondition failure and
        propagates.

        Args:
            profile (MomentProfile): The profile.
            deltas (Optional[Sequence[float]]): Moment orders for indexed
                bounds. Defaults to the orders stored in `profile.A`.
        """
        profile.require_variance()
        deltas = sorted(profile.A) if deltas is None else sorted(deltas)
        reports = []
        for key, evaluator in self._evaluators.items():
            orders = deltas if self._indexed[key] else [None]
            for delta in orders:
                try:
                    reports.append(self.evaluate(key, profile, delta))
                except PRECONDITION_ERRORS as e:
                    logger.debug(f"'{key.value}' not applicable at delta={delta}: {e}")
                    reports.append(BoundReport.inapplicable(key, str(e), delta))
        return reports


def default_registry() -> BoundRegistry:
    """Registry holding the four theorem bounds followed by every baseline."""
    registry = BoundRegistry()
    registry.register(TheoremId.LINFTY, theorems.bound_linfty)
    registry.register(TheoremId.LINFTY_REFINED, theorems.bound_linfty_refined)
    registry.register(TheoremId.DELTA_GE3, theorems.bound_delta_ge3, indexed=True)
    registry.register(TheoremId.DELTA_2_3, theorems.bound_delta_2_3, indexed=True)
    for theorem_id in baselines.BASELINES:
        registry.register(
            theorem_id,
            lambda profile, delta=None, theorem_id=theorem_id: baselines.baseline(profile, theorem_id, delta),
            indexed=theorem_id in (TheoremId.CHEN_SHAO, TheoremId.FMN_THM39),
        )
    return registry


def theorem_candidates(profile: MomentProfile) -> List[BoundReport]:
    """
    All four theorem bounds, in the fixed order linfty, linfty_refined,
    delta_ge3 (ascending delta), delta_2_3 (ascending delta).
    """
    candidates: List[BoundReport] = []

    def attempt(theorem_id: TheoremId, fn: Callable[[], BoundReport], delta: Optional[float] = None) -> None:
        try:
            candidates.append(fn())
        except PRECONDITION_ERRORS as e:
            candidates.append(BoundReport.inapplicable(theorem_id, str(e), delta))

    attempt(TheoremId.LINFTY, lambda: theorems.bound_linfty(profile))
    attempt(TheoremId.LINFTY_REFINED, lambda: theorems.bound_linfty_refined(profile))
    deltas = sorted(profile.A)
    for delta in (d for d in deltas if d >= 3):
        attempt(TheoremId.DELTA_GE3, lambda d=delta: theorems.bound_delta_ge3(profile, d), delta)
    for delta in (d for d in deltas if 2 < d < 3):
        attempt(TheoremId.DELTA_2_3, lambda d=delta: theorems.bound_delta_2_3(profile, d), delta)
    return candidates


def best_bound(profile: MomentProfile) -> BoundReport:
    """
    The smallest clamped theorem bound applicable to the profile.

    Ties keep the first candidate in the order of `theorem_candidates`.
    Baselines are never selected. The returned report carries every
    candidate as a sub-report.

    Raises:
        DegenerateVariance: If v = 0.
        NoApplicableBound: If no theorem applies to the stored moments.
    """
    if profile.v <= 0:
        raise DegenerateVariance("The profile has v = 0.")
    candidates = theorem_candidates(profile)
    valid = [r for r in candidates if r.valid]
    if not valid:
        logger.error("No theorem applies to the stored moments.")
        raise NoApplicableBound(
            "No theorem applies: need L with A_3 (or A_4 and rho), or A_delta for some delta > 2."
        )
    best = min(valid, key=lambda r: r.clamped_value)
    logger.debug(f"Best bound {best.label} = {best.clamped_value:.6g} among {len(valid)} candidates.")
    return best.with_sub_reports(tuple(candidates))
