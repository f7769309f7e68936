"""
Zones of control: explicit bounds on the characteristic function of a
standardized sum near the origin, and exact checks of those bounds on
enumerable families.

Lemma-type bounds use the upper end of the enclosures of C and C''.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Sequence

import numpy as np

from berry_esseen.core.errors import WrongRegime
from berry_esseen.core.model import DiscreteFamily, MomentProfile, law_of_sum, xi
from berry_esseen.cumulants.bounds import TruncationContext
from berry_esseen.cumulants.constants import constant_C, constant_C_second
from berry_esseen.cumulants.series import cumulants_of_law
from berry_esseen.fourier.laws import StandardizedLaw, exact_cf

logger = logging.getLogger(__name__)

E = math.e


@dataclass(frozen=True)
class ZoneRow:
    point: float
    lhs: float
    rhs: float

    @property
    def slack(self) -> float:
        return self.rhs - self.lhs


@dataclass(frozen=True)
class ZoneReport:
    """Exact left-hand sides against the lemma bound on a grid of points."""

    name: str
    rows: List[ZoneRow]
    parameters: Dict[str, Any] = field(default_factory=dict)

    @property
    def max_violation(self) -> float:
        """max(lhs - rhs); non-positive when the bound holds everywhere."""
        return max((r.lhs - r.rhs for r in self.rows), default=-math.inf)

    @property
    def violations(self) -> int:
        return sum(1 for r in self.rows if r.lhs > r.rhs)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "parameters": dict(self.parameters),
            "max_violation": self.max_violation,
            "rows": [{"point": r.point, "lhs": r.lhs, "rhs": r.rhs, "slack": r.slack} for r in self.rows],
        }


@dataclass(frozen=True)
class ZoneCondition:
    name: str
    value: float
    threshold: float
    holds: bool

    def to_dict(self) -> Dict[str, Any]:
        return dict(self.__dict__)


# ---------------------------------------------------------------------------
# Bounded (truncated) sums
# ---------------------------------------------------------------------------


class _TruncatedSum:
    """Exact law, centered cf, v_L and |k_3| of S^(L)."""

    def __init__(self, family: DiscreteFamily, level: float):
        self.ctx = TruncationContext(family, level)
        values, probs = law_of_sum(self.ctx.truncated_family)
        kappa = cumulants_of_law(values, probs, 3)
        self.v = math.sqrt(max(kappa[1], 0.0))
        if self.v <= 0:
            raise WrongRegime(f"Truncation at L={level} leaves a sum with zero variance.")
        self.rho = abs(kappa[2])
        self.law = StandardizedLaw(values - kappa[0], probs)

    def zone_radius(self) -> float:
        return self.v / (2 * E * self.ctx.level * (self.ctx.family.D + 1))

    def lhs(self, point: float) -> float:
        """|E[exp(i xi (S^(L) - E S^(L)) / v_L)] exp(xi^2/2) - 1|."""
        return abs(exact_cf(self.law, point / self.v) * math.exp(0.5 * point * point) - 1.0)

    def check_in_zone(self, grid: Sequence[float]) -> None:
        radius = self.zone_radius()
        for point in grid:
            if abs(point) > radius * (1 + 1e-12):
                raise WrongRegime(f"|xi|={abs(point):.6g} lies outside the zone of control |xi| <= {radius:.6g}.")


def zone_check_bounded(family: DiscreteFamily, L: float, xi_grid: Sequence[float],  # pylint: disable=invalid-name
                       delta: float = 3.0) -> ZoneReport:
    """
    Checks |E[e^{i xi (S^(L) - E S^(L))/v_L}] e^{xi^2/2} - 1| <= K_L |xi|^3 e^{K_L |xi|^3}
    with K_L = C (D+1)^2 (L/v_L)^3 A_{delta'} / L^{delta'}, delta' = min(delta, 3).

    Raises:
        WrongRegime: If some grid point lies outside |xi| <= v_L / (2e L (D+1)).
    """
    truncated = _TruncatedSum(family, L)
    truncated.check_in_zone(xi_grid)
    d_prime = min(delta, 3.0)
    k = constant_C().hi * (family.D + 1) ** 2 * (L / truncated.v) ** 3 * truncated.ctx.moment(d_prime) / L ** d_prime

    rows = []
    for point in xi_grid:
        cubic = k * abs(point) ** 3
        rows.append(ZoneRow(float(point), truncated.lhs(point), cubic * math.exp(cubic)))
    report = ZoneReport("bounded", rows, {"L": L, "v_L": truncated.v, "K_L": k, "delta_prime": d_prime})
    logger.debug(f"Bounded zone check: max violation {report.max_violation:.3g}")
    return report


def zone_check_refined(family: DiscreteFamily, L: float, xi_grid: Sequence[float],  # pylint: disable=invalid-name
                       delta: float = 4.0) -> ZoneReport:
    """
    Checks the same left-hand side against xi^2 x(xi) e^{xi^2 x(xi)} with
    x(xi) = rho_L |xi| / (6 v_L^3) + C'' (D+1)^3 (L/v_L)^4 A_{delta''} / L^{delta''} xi^2,
    delta'' = min(delta, 4) and rho_L = |k_3(S^(L))|.
    """
    truncated = _TruncatedSum(family, L)
    truncated.check_in_zone(xi_grid)
    d_second = min(delta, 4.0)
    v = truncated.v
    quartic = (constant_C_second().hi * (family.D + 1) ** 3 * (L / v) ** 4
               * truncated.ctx.moment(d_second) / L ** d_second)

    rows = []
    for point in xi_grid:
        x = truncated.rho * abs(point) / (6 * v ** 3) + quartic * point ** 2
        scaled = point ** 2 * x
        rows.append(ZoneRow(float(point), truncated.lhs(point), scaled * math.exp(scaled)))
    return ZoneReport("refined", rows, {"L": L, "v_L": v, "rho_L": truncated.rho, "delta_second": d_second})


# ---------------------------------------------------------------------------
# Unbounded sums
# ---------------------------------------------------------------------------


def zone_bound_unbounded(profile: MomentProfile, s: float, L: float, delta: float) -> float:  # pylint: disable=invalid-name
    """
    Bound on |E e^{isW} - e^{-s^2/2}| obtained by truncating at level L.

    With w = L(D+1)|s|/v and delta' = min(3, delta), the bound is

        [(2w + 1.5 w^2) A_delta/L^delta + C A_delta'/L^delta' w^3
         exp(-w^2/(2(D+1)^2) (v^2/L^2 - 3(D+1) A_delta/L^delta - 2C(D+1) A_delta'/L^delta' w))] / (D+1).

    Raises:
        WrongRegime: If s = 0, L > v/(2e|s|(D+1)) or v^2 <= 3(D+1) L^2 A_delta/L^delta.
    """
    if s == 0:
        raise WrongRegime("The truncation bound is only defined for s != 0.")
    v = profile.require_variance()
    d1 = profile.D + 1
    if L <= 0 or L > v / (2 * E * abs(s) * d1):
        raise WrongRegime(f"Truncation level must satisfy 0 < L <= v/(2e|s|(D+1)), got L={L}.")
    a_delta = profile.moment(delta) / L ** delta
    d_prime = min(3.0, delta)
    a_prime = profile.moment(d_prime) / L ** d_prime
    if v ** 2 <= 3 * d1 * L ** 2 * a_delta:
        raise WrongRegime("Truncation condition v^2 > 3(D+1) L^2 A_delta / L^delta fails.")

    c = constant_C().hi
    w = L * d1 * abs(s) / v
    exponent = -(w ** 2) / (2 * d1 ** 2) * (v ** 2 / L ** 2 - 3 * d1 * a_delta - 2 * c * d1 * a_prime * w)
    return ((2 * w + 1.5 * w ** 2) * a_delta + c * a_prime * w ** 3 * math.exp(exponent)) / d1


def zone_conditions(profile: MomentProfile, s: float, delta: float) -> List[ZoneCondition]:
    """
    The conditions on s under which `fourier_bound_unbounded` applies.

    For delta >= 3:
        |s| <= (1/(6C)) sqrt(N/(D+1)) xi_3^3 and
        |s| <= (1/(2e)) sqrt(N/(D+1)) (xi_delta^delta / 9)^(1/(delta-2)).
    For delta in (2, 3):
        |s| <= (xi/(2e))^(delta/(delta-2)) (4e^2/(3 + C/e))^(1/(delta-2)) sqrt(N/(D+1)).

    Raises:
        WrongRegime: If delta <= 2.
    """
    if delta <= 2:
        raise WrongRegime(f"Fourier bounds need delta > 2, got {delta}.")
    c = constant_C().hi
    scale = math.sqrt(profile.N / (profile.D + 1))
    x = xi(profile, delta)
    if delta >= 3:
        x3 = xi(profile, 3)
        thresholds = {
            "cumulant_zone": scale * x3 ** 3 / (6 * c),
            "truncation_zone": scale * (x ** delta / 9) ** (1 / (delta - 2)) / (2 * E),
        }
    else:
        thresholds = {
            "truncation_zone": ((x / (2 * E)) ** (delta / (delta - 2))
                                * (4 * E ** 2 / (3 + c / E)) ** (1 / (delta - 2)) * scale),
        }
    return [ZoneCondition(name, abs(s), t, abs(s) <= t) for name, t in thresholds.items()]


def fourier_bound_unbounded(profile: MomentProfile, s: float, delta: float) -> float:
    """
    Bound on |E e^{isW} - e^{-s^2/2}| under a finite moment of order delta > 2.

    For delta >= 3:
        (1/e + 3/(8e^2)) (2e|s|/xi_delta)^delta ((D+1)/N)^((delta-2)/2)
            + C (|s|/xi_3)^3 sqrt((D+1)/N) e^{-s^2/6}.
    For delta in (2, 3):
        (N/(D+1))^(1-delta/2) (C + 3e + 8e^2)/(8e^3) (2e|s|/xi_delta)^delta.

    Raises:
        WrongRegime: If a zone condition fails; the message names it.
    """
    failed = [cond for cond in zone_conditions(profile, s, delta) if not cond.holds]
    if failed:
        names = ", ".join(f"{cond.name} (|s|={cond.value:.6g} > {cond.threshold:.6g})" for cond in failed)
        logger.error(f"Zone condition failed: {names}")
        raise WrongRegime(f"s lies outside the zone of control: {names}.")
    if s == 0:
        return 0.0

    c = constant_C().hi
    ratio = (profile.D + 1) / profile.N
    x = xi(profile, delta)
    if delta >= 3:
        x3 = xi(profile, 3)
        first = (1 / E + 3 / (8 * E ** 2)) * (2 * E * abs(s) / x) ** delta * ratio ** ((delta - 2) / 2)
        second = c * (abs(s) / x3) ** 3 * math.sqrt(ratio) * math.exp(-s * s / 6)
        return first + second
    return ratio ** (delta / 2 - 1) * (c + 3 * E + 8 * E ** 2) / (8 * E ** 3) * (2 * E * abs(s) / x) ** delta


def in_zone_grid(profile: MomentProfile, delta: float, points: int = 20) -> np.ndarray:
    """`points` evenly spaced positive s values up to the tightest zone threshold."""
    radius = min(cond.threshold for cond in zone_conditions(profile, 0.0, delta))
    return np.linspace(radius / points, radius, points)
