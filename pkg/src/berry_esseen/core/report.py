"""Bound reports shared by the theorem, baseline and application evaluators."""

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from types import MappingProxyType
from typing import Any, Dict, Mapping, Optional, Tuple

from berry_esseen.core.errors import InvalidProfile


class TheoremId(str, Enum):
    LINFTY = "linfty"
    LINFTY_REFINED = "linfty_refined"
    DELTA_GE3 = "delta_ge3"
    DELTA_2_3 = "delta_2_3"
    CLASSICAL_BE = "classical_be"
    FMN_COROLLARY30 = "fmn_corollary30"
    RINOTT = "rinott"
    PENROSE = "penrose"
    CHEN_SHAO = "chen_shao"
    FMN_THM39 = "fmn_thm39"
    STEIN_W1 = "stein_w1"
    USTAT_BOUNDED = "ustat_bounded"
    USTAT_MOMENTS = "ustat_moments"
    USTAT_STATIONARY = "ustat_stationary"
    VOLATILITY = "volatility"


@dataclass(frozen=True)
class BoundReport:
    """
    Result of evaluating one bound on one profile.

    `clamped_value` is always min(raw_value, 1): a Kolmogorov distance never
    exceeds 1. Comparisons between bounds use the clamped value.
    """

    theorem_id: TheoremId
    raw_value: float
    binding_branch: str = ""
    valid: bool = True
    validity_notes: str = ""
    delta: Optional[float] = None
    metadata: Mapping[str, Any] = field(default_factory=dict)
    sub_reports: Tuple["BoundReport", ...] = ()

    def __post_init__(self):
        raw = float(self.raw_value)
        if math.isnan(raw) or raw < 0:
            raise InvalidProfile(f"Bound value must be non-negative, got {raw} for {self.theorem_id}.")
        object.__setattr__(self, "theorem_id", TheoremId(self.theorem_id))
        object.__setattr__(self, "raw_value", raw)
        object.__setattr__(self, "metadata", MappingProxyType(dict(self.metadata)))
        object.__setattr__(self, "sub_reports", tuple(self.sub_reports))

    @property
    def clamped_value(self) -> float:
        return min(self.raw_value, 1.0)

    @property
    def label(self) -> str:
        """Theorem id, suffixed with delta when the bound is indexed by one."""
        if self.delta is None:
            return self.theorem_id.value
        return f"{self.theorem_id.value}@{self.delta:g}"

    @classmethod
    def inapplicable(cls, theorem_id: TheoremId, reason: str, delta: Optional[float] = None) -> "BoundReport":
        """Placeholder row for a theorem whose hypotheses are not met."""
        return cls(theorem_id, math.inf, "", False, reason, delta)

    def with_sub_reports(self, sub_reports: Tuple["BoundReport", ...], note: str = "") -> "BoundReport":
        notes = "; ".join(n for n in (self.validity_notes, note) if n)
        return replace(self, sub_reports=tuple(sub_reports), validity_notes=notes)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "theorem_id": self.theorem_id.value,
            "delta": self.delta,
            "raw": self.raw_value,
            "clamped": self.clamped_value,
            "branch": self.binding_branch,
            "valid": self.valid,
            "notes": self.validity_notes,
            "metadata": dict(self.metadata),
            "sub_reports": [r.to_dict() for r in self.sub_reports],
        }
