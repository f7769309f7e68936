"""Explicit cumulant bounds and truncation shift estimates."""

import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, Optional

from berry_esseen.core.errors import WrongRegime
from berry_esseen.core.model import DiscreteFamily, MomentProfile
from berry_esseen.cumulants.series import cumulants_of_sum

logger = logging.getLogger(__name__)


def lemma_cumulant_bound(profile: MomentProfile, r: int, delta: float, L: float) -> float:  # pylint: disable=invalid-name
    """
    Upper bound r^(r-2) (2(D+1))^(r-1) L^r A_delta / L^delta on |k_r(S^(L))|.

    Args:
        profile (MomentProfile): Supplies D and A_delta.
        r (int): Cumulant order, r > 1 and r >= delta.
        delta (float): Moment order, at least 1.
        L (float): Truncation level, positive.

    Returns:
        float: The bound.

    Raises:
        WrongRegime: On parameter-range violations.
        MissingMoment: If A_delta is not stored.
    """
    if delta < 1 or r <= 1 or r < max(delta, 1) or L <= 0:
        raise WrongRegime(f"Cumulant bound needs delta >= 1, r > 1, r >= delta, L > 0; got r={r}, delta={delta}, L={L}.")
    a = profile.moment(delta)
    return r ** (r - 2) * (2 * (profile.D + 1)) ** (r - 1) * L ** r * a / L ** delta


@dataclass(frozen=True)
class TruncationContext:
    """
    A family together with a truncation level L.

    The truncated variables are Y_k^(L) = (Y_k - c_k) 1{|Y_k - c_k| <= L}.
    `truncated_family` keeps the constants c_k added back, so its sum is
    S^(L) + sum_k c_k; cumulants of order 2 and above are unaffected.
    """

    family: DiscreteFamily
    level: float

    def __post_init__(self):
        if self.level <= 0:
            raise WrongRegime(f"Truncation level must be positive, got {self.level}.")

    @property
    def truncated_family(self) -> DiscreteFamily:
        cached = self.__dict__.get("_truncated")
        if cached is None:
            cached = self.family.truncated(self.level)
            object.__setattr__(self, "_truncated", cached)
        return cached

    @property
    def v_L(self) -> float:  # pylint: disable=invalid-name
        return math.sqrt(max(cumulants_of_sum(self.truncated_family, 2)[1], 0.0))

    def moment(self, delta: float) -> float:
        """A_delta of the untruncated family."""
        c = self.family.centers()
        return math.fsum(law.abs_moment(delta, ck) for law, ck in zip(self.family.laws, c))


@dataclass(frozen=True)
class TruncationShifts:
    mean_shift_bound: float
    variance_shift_bound: float
    third_cumulant_shift_bound: Optional[float]
    true_mean_shift: float
    true_variance_shift: float
    true_third_cumulant_shift: float
    notes: str = ""

    def dominates(self) -> bool:
        """True when every explicit bound covers the corresponding true shift."""
        ok = self.true_mean_shift <= self.mean_shift_bound and self.true_variance_shift <= self.variance_shift_bound
        if self.third_cumulant_shift_bound is not None:
            ok = ok and self.true_third_cumulant_shift <= self.third_cumulant_shift_bound
        return ok

    def to_dict(self) -> Dict[str, Any]:
        return dict(self.__dict__)


def truncation_shifts(ctx: TruncationContext, delta: float) -> TruncationShifts:
    """
    Explicit bounds on how much truncation at L moves E[S], V[S] and k_3(S),
    alongside the exact shifts.

    Raises:
        WrongRegime: If delta <= 2.
    """
    if delta <= 2:
        raise WrongRegime(f"Truncation shift bounds need delta > 2, got {delta}.")
    L = ctx.level  # pylint: disable=invalid-name
    d1 = ctx.family.D + 1
    a = ctx.moment(delta)

    notes = ""
    third_bound: Optional[float] = 21 * d1 ** 2 * L ** 3 * a / L ** delta
    if delta <= 3:
        third_bound = None
        notes = "third-cumulant shift bound requires delta > 3; branch omitted"
        logger.debug(notes)

    original = cumulants_of_sum(ctx.family, 3)
    truncated = cumulants_of_sum(ctx.truncated_family, 3)
    return TruncationShifts(
        mean_shift_bound=L ** (1 - delta) * a,
        variance_shift_bound=3 * L ** (2 - delta) * d1 * a,
        third_cumulant_shift_bound=third_bound,
        true_mean_shift=abs(original[0] - truncated[0]),
        true_variance_shift=abs(original[1] - truncated[1]),
        true_third_cumulant_shift=abs(original[2] - truncated[2]),
        notes=notes,
    )
