"""
Kolmogorov-distance bounds for sums with a dependency graph.

Each evaluator takes a `MomentProfile` and returns a `BoundReport` carrying
the raw value, the clamped value, and the branch of the maximum that was
attained. Hypotheses are checked strictly: a missing moment raises
`MissingMoment`, an out-of-range delta raises `WrongRegime`, and v = 0
raises `DegenerateVariance`.
"""

import logging
import math

from berry_esseen.core.errors import MissingMoment, WrongRegime
from berry_esseen.core.model import CenteringMode, MomentProfile, sigma, xi
from berry_esseen.core.report import BoundReport, TheoremId

logger = logging.getLogger(__name__)

# Factor by which the refined bound may exceed the bounded-case bound.
REFINED_FACTOR_GENERAL = 1.06164
REFINED_FACTOR_MEAN_CENTERED = 0.85771


def bound_linfty(profile: MomentProfile) -> BoundReport:
    """
    Bound for uniformly bounded variables:
    max{68.5 (D+1)^2 A_3 / v^3, 22.88 L (D+1) / v}.

    Args:
        profile (MomentProfile): Needs L and A_3.

    Returns:
        BoundReport: Branch "cumulant" or "sup_norm".

    Raises:
        DegenerateVariance: If v = 0.
        MissingMoment: If L or A_3 is missing.
    """
    v = profile.require_variance()
    L = profile.require_L()  # pylint: disable=invalid-name
    a3 = profile.moment(3)
    d1 = profile.D + 1
    cumulant_term = 68.5 * d1 ** 2 * a3 / v ** 3
    sup_term = 22.88 * L * d1 / v
    branch = "cumulant" if cumulant_term >= sup_term else "sup_norm"
    return BoundReport(
        TheoremId.LINFTY,
        max(cumulant_term, sup_term),
        branch,
        metadata={"cumulant_term": cumulant_term, "sup_norm_term": sup_term},
    )


def bound_linfty_refined(profile: MomentProfile) -> BoundReport:
    """
    Bound for bounded variables using the third central moment rho of S:

        0.607148 rho/v^3 + 116.84 (D+1)^3 A_4/v^4
            + max{16.57 L(D+1)/v, 22.47 sqrt((D+1)^3 A_4/v^4) + 1.596 rho/v^3}.

    Raises:
        DegenerateVariance: If v = 0.
        MissingMoment: If L, A_4 or rho is missing.
    """
    v = profile.require_variance()
    L = profile.require_L()  # pylint: disable=invalid-name
    a4 = profile.moment(4)
    rho = profile.require_rho()
    d1 = profile.D + 1

    skew = rho / v ** 3
    kurt = d1 ** 3 * a4 / v ** 4
    sup_term = 16.57 * L * d1 / v
    moment_term = 22.47 * math.sqrt(kurt) + 1.596 * skew
    raw = 0.607148 * skew + 116.84 * kurt + max(sup_term, moment_term)

    mean_centered = profile.centering.mode == CenteringMode.MEAN
    factor = REFINED_FACTOR_MEAN_CENTERED if mean_centered else REFINED_FACTOR_GENERAL
    return BoundReport(
        TheoremId.LINFTY_REFINED,
        raw,
        "sup_norm" if sup_term >= moment_term else "moment",
        metadata={"comparison_factor": factor, "mean_centered": mean_centered},
    )


def _first_branch(constant: float, x: float, ratio: float, delta: float) -> float:
    return constant * x ** (-delta / (delta + 1)) * ratio ** ((delta - 2) / (2 * (delta + 1)))


def _sigma_metadata(profile: MomentProfile, delta: float, constant: float) -> dict:
    """Same first branch with sigma_delta in place of xi_delta, when M_delta is stored."""
    try:
        s = sigma(profile, delta)
    except MissingMoment:
        return {}
    ratio = (profile.D + 1) / profile.N
    return {"sigma": s, "sigma_form_first_branch": _first_branch(constant, s, ratio, delta)}


def bound_delta_ge3(profile: MomentProfile, delta: float) -> BoundReport:
    """
    Bound under a finite moment of order delta >= 3:

        max{18.96 xi^(-delta/(delta+1)) ((D+1)/N)^((delta-2)/(2(delta+1))),
            227.5 xi^(-3) sqrt((D+1)/N)}.

    Raises:
        WrongRegime: If delta < 3.
        MissingMoment: If A_delta is missing.
        DegenerateVariance: If v = 0.
    """
    if delta < 3:
        raise WrongRegime(f"The delta >= 3 bound does not apply at delta={delta}.")
    x = xi(profile, delta)
    ratio = (profile.D + 1) / profile.N
    first = _first_branch(18.96, x, ratio, delta)
    second = 227.5 * x ** -3 * math.sqrt(ratio)
    metadata = {"xi": x, "first_branch": first, "second_branch": second}
    metadata.update(_sigma_metadata(profile, delta, 18.96))
    return BoundReport(
        TheoremId.DELTA_GE3,
        max(first, second),
        "first" if first >= second else "second",
        delta=float(delta),
        metadata=metadata,
    )


def bound_delta_2_3(profile: MomentProfile, delta: float) -> BoundReport:
    """
    Bound under a finite moment of order delta in (2, 3):
    8.015 xi^(-delta/(delta+1)) ((D+1)/N)^((delta-2)/(2(delta+1))).

    Raises:
        WrongRegime: If delta is not strictly between 2 and 3.
    """
    if not 2 < delta < 3:
        raise WrongRegime(f"The delta in (2,3) bound does not apply at delta={delta}.")
    x = xi(profile, delta)
    ratio = (profile.D + 1) / profile.N
    metadata = {"xi": x}
    metadata.update(_sigma_metadata(profile, delta, 8.015))
    return BoundReport(
        TheoremId.DELTA_2_3,
        _first_branch(8.015, x, ratio, delta),
        "single",
        delta=float(delta),
        metadata=metadata,
    )
