"""
Literature bounds evaluated on the same moment profile.

Each baseline evaluates its published formula as written. Formulas published
only up to an unspecified absolute constant are evaluated with constant 1
and reported with `valid=False` and a note, so they can be compared for
their rate but never selected as a certified bound.
"""

import logging
import math
from typing import Callable, Dict, Optional, Sequence

from berry_esseen.core.errors import MissingMoment, WrongRegime
from berry_esseen.core.model import CenteringMode, MomentProfile
from berry_esseen.core.report import BoundReport, TheoremId
from berry_esseen.utils.trend import TrendFit, fit_log_slope

logger = logging.getLogger(__name__)

UP_TO_CONSTANT = "up to absolute constant"


def _classical_be(profile: MomentProfile, delta: Optional[float]) -> BoundReport:
    if profile.D != 0:
        raise WrongRegime(f"The classical Berry-Esseen bound needs independent summands (D=0), got D={profile.D}.")
    v = profile.require_variance()
    return BoundReport(TheoremId.CLASSICAL_BE, 0.5583 * profile.moment(3) / v ** 3, "single")


def _fmn_corollary30(profile: MomentProfile, delta: Optional[float]) -> BoundReport:
    v = profile.require_variance()
    L = profile.require_L()  # pylint: disable=invalid-name
    raw = 76.36 * L ** 3 * profile.N * (profile.D + 1) ** 2 / v ** 3
    return BoundReport(TheoremId.FMN_COROLLARY30, raw, "single")


def _rinott(profile: MomentProfile, delta: Optional[float]) -> BoundReport:
    v = profile.require_variance()
    L = profile.require_L()  # pylint: disable=invalid-name
    d1 = profile.D + 1
    ratio = profile.N / v ** 2
    terms = (d1 * L, math.sqrt(ratio) * d1 ** 1.5 * L ** 2, ratio * d1 ** 2 * L ** 3)
    return BoundReport(
        TheoremId.RINOTT,
        sum(terms) / v,
        "single",
        valid=False,
        validity_notes=f"{UP_TO_CONSTANT}; n read as N",
    )


def _penrose(profile: MomentProfile, delta: Optional[float]) -> BoundReport:
    if profile.centering.mode != CenteringMode.MEAN:
        raise WrongRegime("The Stein-method bound needs mean-centered moments.")
    v = profile.require_variance()
    d1 = profile.D + 1
    third = 6 * d1 / v ** 1.5 * math.sqrt(profile.moment(3))
    fourth = 6 * d1 ** 1.5 / v ** 2 * math.sqrt(profile.moment(4))
    return BoundReport(
        TheoremId.PENROSE,
        third + fourth,
        "third" if third >= fourth else "fourth",
        metadata={"third_moment_term": third, "fourth_moment_term": fourth},
    )


def _chen_shao(profile: MomentProfile, delta: Optional[float]) -> BoundReport:
    delta = 3.0 if delta is None else float(delta)
    if not 2 < delta <= 3:
        raise WrongRegime(f"The Chen-Shao bound needs delta in (2, 3], got {delta}.")
    mode = profile.centering.mode
    if mode == CenteringMode.CUSTOM:
        raise WrongRegime("The Chen-Shao bound needs centered summands; custom centering is not accepted.")
    v = profile.require_variance()
    theta = profile.max_norm(delta)
    raw = 75 * profile.N * (profile.D + 1) ** (5 * (delta - 1)) * theta ** delta / v ** delta
    notes = "" if mode == CenteringMode.MEAN else "assumes the summands have mean zero"
    return BoundReport(TheoremId.CHEN_SHAO, raw, "single", validity_notes=notes, delta=delta)


def _fmn_thm39(profile: MomentProfile, delta: Optional[float]) -> BoundReport:
    if delta is None or delta <= 6:
        raise WrongRegime(f"The mod-phi moment bound needs delta > 6, got {delta}.")
    v = profile.require_variance()
    base = fmn_condition_quantity(profile, delta)
    raw = (profile.max_norm(delta) * base) ** (3 * delta / (delta + 3))
    return BoundReport(
        TheoremId.FMN_THM39,
        raw,
        "single",
        valid=False,
        validity_notes=UP_TO_CONSTANT,
        delta=float(delta),
        metadata={"condition_quantity": base, "v": v},
    )


def _stein_w1(profile: MomentProfile, delta: Optional[float]) -> BoundReport:
    v = profile.require_variance()
    d = profile.D + 1
    w1 = d ** 2 * profile.moment(3) / v ** 3 + math.sqrt(26 / math.pi) * d ** 1.5 * math.sqrt(profile.moment(4)) / v ** 2
    raw = 2 * math.sqrt(w1 / math.sqrt(2 * math.pi))
    return BoundReport(
        TheoremId.STEIN_W1,
        raw,
        "wasserstein",
        validity_notes="Kolmogorov bound derived from W1; neighbourhood size read as D+1",
        metadata={"w1": w1},
    )


BASELINES: Dict[TheoremId, Callable[[MomentProfile, Optional[float]], BoundReport]] = {
    TheoremId.CLASSICAL_BE: _classical_be,
    TheoremId.FMN_COROLLARY30: _fmn_corollary30,
    TheoremId.RINOTT: _rinott,
    TheoremId.PENROSE: _penrose,
    TheoremId.CHEN_SHAO: _chen_shao,
    TheoremId.FMN_THM39: _fmn_thm39,
    TheoremId.STEIN_W1: _stein_w1,
}


def baseline(profile: MomentProfile, which, delta: Optional[float] = None) -> BoundReport:
    """
    Evaluates one literature baseline.

    Args:
        profile (MomentProfile): The moment profile.
        which (TheoremId | str): One of classical_be, fmn_corollary30, rinott,
            penrose, chen_shao, fmn_thm39, stein_w1.
        delta (Optional[float]): Moment order, used by chen_shao (default 3)
            and fmn_thm39 (required, > 6).

    Returns:
        BoundReport: The evaluated baseline.

    Raises:
        ValueError: If `which` does not name a baseline.
        WrongRegime: If a baseline precondition fails.
        MissingMoment: If a required moment is not stored.
    """
    theorem_id = TheoremId(which)
    evaluator = BASELINES.get(theorem_id)
    if evaluator is None:
        raise ValueError(f"'{theorem_id.value}' is not a baseline.")
    report = evaluator(profile, delta)
    logger.debug(f"Baseline {report.label}: raw={report.raw_value:.6g}")
    return report


def fmn_condition_quantity(profile: MomentProfile, delta: float) -> float:
    """N^((3+delta)/(3 delta)) (D+1)^(2/3) / v, the quantity required to vanish."""
    v = profile.require_variance()
    return profile.N ** ((3 + delta) / (3 * delta)) * (profile.D + 1) ** (2 / 3) / v


def fmn_condition_trend(profiles: Sequence[MomentProfile], delta: float,
                        threshold: float = -0.05) -> TrendFit:
    """
    Fits the log-log trend in N of `fmn_condition_quantity` over a sequence.

    Raises:
        Insufficient: With fewer than three profiles.
    """
    sizes = [p.N for p in profiles]
    values = [fmn_condition_quantity(p, delta) for p in profiles]
    return fit_log_slope(sizes, values, threshold=threshold)


def applicable_baselines(profile: MomentProfile, deltas: Sequence[float] = ()) -> list:
    """Every baseline whose preconditions hold, one report per applicable delta."""
    reports = []
    for theorem_id in BASELINES:
        candidates = [None]
        if theorem_id == TheoremId.CHEN_SHAO:
            candidates = [d for d in deltas if 2 < d <= 3] or [None]
        elif theorem_id == TheoremId.FMN_THM39:
            candidates = [d for d in deltas if d > 6]
        for delta in candidates:
            try:
                reports.append(baseline(profile, theorem_id, delta))
            except (WrongRegime, MissingMoment) as e:
                reports.append(BoundReport.inapplicable(theorem_id, str(e), delta))
    return reports
