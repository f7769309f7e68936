"""CLT and weak-law conditions evaluated along a sequence of profiles."""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from berry_esseen.bounds.baselines import fmn_condition_quantity, fmn_condition_trend
from berry_esseen.core.errors import Insufficient, WrongRegime
from berry_esseen.core.model import CenteringChoice, CenteringMode, MomentProfile, xi
from berry_esseen.utils.trend import DEFAULT_SLOPE_THRESHOLD, TrendFit, Verdict, fit_log_slope

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ConditionTrend:
    """One quantity that must vanish, evaluated at every N, with its fitted trend."""

    name: str
    condition: str
    sizes: List[int]
    values: List[float]
    fit: TrendFit

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "condition": self.condition,
            "sizes": list(self.sizes),
            "values": list(self.values),
            **self.fit.to_dict(),
        }


@dataclass(frozen=True)
class CLTReport:
    quantities: List[ConditionTrend]
    conditions: Dict[str, str]
    clt: str
    wlln: str
    notes: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "quantities": [q.to_dict() for q in self.quantities],
            "conditions": dict(self.conditions),
            "clt": self.clt,
            "wlln": self.wlln,
            "notes": list(self.notes),
        }


def _combine(verdicts: Sequence[Verdict]) -> str:
    """All quantities must vanish: yes if all yes, no if any no."""
    if any(v == Verdict.NO for v in verdicts):
        return Verdict.NO.value
    if all(v == Verdict.YES for v in verdicts):
        return Verdict.YES.value
    return Verdict.INCONCLUSIVE.value


def clt_condition_check(
    profiles: Sequence[MomentProfile],
    delta: Optional[float] = None,
    threshold: float = DEFAULT_SLOPE_THRESHOLD,
) -> CLTReport:
    """
    Evaluates the sufficient conditions for W_N -> N(0, 1) along the sequence.

    Conditions:
        finite_delta: delta > 2 and xi_delta^-1 ((D+1)/N)^(1/2 - 1/delta) -> 0,
            plus xi_3^-3 sqrt((D+1)/N) -> 0 when delta >= 3.
        bounded: sup L < inf, (D+1)/v -> 0 and N(D+1)^2/v^3 -> 0.

    The weak law additionally needs liminf A_delta > 0 under finite_delta.

    Args:
        profiles (Sequence[MomentProfile]): Profiles ordered by increasing N.
        delta (Optional[float]): Moment order for finite_delta; skipped when None.
        threshold (float): Log-slope below which a quantity is judged to vanish.

    Raises:
        Insufficient: If fewer than 3 profiles are given.
    """
    if len(profiles) < 3:
        raise Insufficient(f"A trend needs at least 3 profiles, got {len(profiles)}.")
    sizes = [p.N for p in profiles]
    quantities: List[ConditionTrend] = []
    conditions: Dict[str, str] = {}
    notes: List[str] = []

    def track(name: str, condition: str, values: List[float]) -> ConditionTrend:
        trend = ConditionTrend(name, condition, sizes, values, fit_log_slope(sizes, values, threshold))
        quantities.append(trend)
        return trend

    if delta is not None:
        if delta <= 2:
            raise WrongRegime(f"The moment condition needs delta > 2, got {delta}.")
        trends = [track("xi_rate", "finite_delta", [
            xi(p, delta) ** -1 * ((p.D + 1) / p.N) ** (0.5 - 1 / delta) for p in profiles
        ])]
        if delta >= 3:
            trends.append(track("xi3_rate", "finite_delta", [
                xi(p, 3) ** -3 * math.sqrt((p.D + 1) / p.N) for p in profiles
            ]))
        conditions["finite_delta"] = _combine([t.fit.verdict for t in trends])

    if all(p.L is not None for p in profiles):
        trends = [
            track("degree_over_v", "bounded", [(p.D + 1) / p.require_variance() for p in profiles]),
            track("cubic_ratio", "bounded", [p.N * (p.D + 1) ** 2 / p.require_variance() ** 3 for p in profiles]),
        ]
        conditions["bounded"] = _combine([t.fit.verdict for t in trends])
        notes.append(f"largest L along the sequence: {max(p.L for p in profiles):.6g}")

    if delta is not None and all(p.D == 0 for p in profiles):
        track("lyapunov_ratio", "lyapunov", [p.moment(delta) / p.require_variance() ** delta for p in profiles])

    if delta is not None and delta > 6:
        # Literature comparison only; it does not enter the verdicts.
        quantities.append(ConditionTrend(
            "fmn_condition", "fmn_thm39", sizes, [fmn_condition_quantity(p, delta) for p in profiles],
            fmn_condition_trend(profiles, delta, threshold),
        ))

    verdicts = list(conditions.values())
    if Verdict.YES.value in verdicts:
        clt = Verdict.YES.value
    elif verdicts and all(v == Verdict.NO.value for v in verdicts):
        clt = Verdict.NO.value
    else:
        clt = Verdict.INCONCLUSIVE.value

    wlln = Verdict.INCONCLUSIVE.value
    if conditions.get("bounded") == Verdict.YES.value:
        wlln = Verdict.YES.value
    elif conditions.get("finite_delta") == Verdict.YES.value:
        moments = [p.moment(delta) for p in profiles]
        # A_delta must stay away from 0; a vanishing trend rules that out.
        fit = fit_log_slope(sizes, moments, threshold)
        wlln = Verdict.YES.value if fit.verdict == Verdict.NO and min(moments) > 0 else Verdict.INCONCLUSIVE.value
        notes.append(f"smallest A_delta along the sequence: {min(moments):.6g}")

    logger.info(f"CLT conditions: {conditions}; CLT {clt}, WLLN {wlln}")
    return CLTReport(quantities, conditions, clt, wlln, notes)


@dataclass(frozen=True)
class VarianceBranch:
    branch: str
    slope: Optional[float]
    K_estimate: Optional[float]  # pylint: disable=invalid-name

    def to_dict(self) -> Dict[str, Any]:
        return dict(self.__dict__)


def variance_growth_branch(ns: Sequence[int], var_v: Sequence[float], ell: int, min_points: int = 3) -> VarianceBranch:
    """
    Which side of the dichotomy V[V_n] = O(n^(2 ell - 2)) versus
    V[V_n] / n^(2 ell - 1) -> K^2 > 0 the supplied variances are consistent with.

    The log-slope of V[V_n] / n^(2 ell - 1) is near 0 in the second case and
    near -1 or below in the first; the cut is placed at -1/2.
    """
    sizes = np.asarray(ns, dtype=float)
    ratios = np.asarray(var_v, dtype=float) / sizes ** (2 * ell - 1)
    fit = fit_log_slope(sizes, ratios, threshold=-0.5, min_points=min_points)
    if fit.verdict == Verdict.INCONCLUSIVE:
        return VarianceBranch("inconclusive", None, None)
    if fit.verdict == Verdict.YES:
        return VarianceBranch("degenerate", fit.slope, None)
    return VarianceBranch("nondegenerate", fit.slope, float(math.sqrt(ratios[-1])))


def shared_prefix_profiles(sizes: Sequence[int], exponent: float = 2 / 3) -> List[MomentProfile]:
    """
    Profiles of S_N = f(N) X_0 + X_{f+1} + ... + X_N with Rademacher X and
    f(N) = floor(N^exponent): the first f summands are copies of one variable.

    Then v_N^2 = f^2 + N - f and D + 1 = f, so (D+1)/v_N -> 1.
    """
    profiles = []
    for n in sizes:
        f = max(1, int(math.floor(n ** exponent)))
        moments = {delta: float(n) for delta in (2.0, 3.0, 4.0)}
        profiles.append(MomentProfile(
            N=n, D=f - 1, v=math.sqrt(f * f + n - f), A=moments, M={d: 1.0 for d in moments}, L=1.0,
            rho=0.0, centering=CenteringChoice(CenteringMode.MEAN),
        ))
    return profiles
