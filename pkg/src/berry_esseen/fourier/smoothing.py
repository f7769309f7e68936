"""
Fourier-to-Kolmogorov smoothing inequality.

For a centered X and any T > 0,

    dkol(X, N(0,1)) <= (1/pi) int_{-T}^{T} |E e^{isX} - e^{-s^2/2}| / |s| ds + 24 / (T pi sqrt(2 pi)).

The integrand is even in s, so the integral is twice the one over (0, T].
Near 0 the integrand vanishes like s^2 and the interval [0, cutoff] is
replaced by the analytic majorant (E|X|^3/6 + 1/6) s^2.
"""

import logging
import math
import warnings

from scipy import integrate

from berry_esseen.core.errors import QuadratureFailure, WrongRegime
from berry_esseen.fourier.laws import STANDARDIZED_TOL, StandardizedLaw, cf_error

logger = logging.getLogger(__name__)

DEFAULT_EPSABS = 1e-9
DEFAULT_LIMIT = 10_000
DEFAULT_CUTOFF = 1e-4


def smoothing_tail(T: float) -> float:  # pylint: disable=invalid-name
    """The additive term 24 / (T pi sqrt(2 pi))."""
    return 24.0 / (T * math.pi * math.sqrt(2 * math.pi))


def small_s_majorant(law: StandardizedLaw, cutoff: float) -> float:
    """(2/pi) int_0^cutoff (E|W|^3/6 + 1/6) s^2 ds."""
    return (2 / math.pi) * (law.abs_moment(3) / 6 + 1 / 6) * cutoff ** 3 / 3


def feller_rhs(
    law: StandardizedLaw,
    T: float,  # pylint: disable=invalid-name
    epsabs: float = DEFAULT_EPSABS,
    limit: int = DEFAULT_LIMIT,
    cutoff: float = DEFAULT_CUTOFF,
) -> float:
    """
    Right-hand side of the smoothing inequality for `law` at `T`.

    Args:
        law (StandardizedLaw): A centered law.
        T (float): Integration half-width, positive.
        epsabs (float): Absolute tolerance of the adaptive quadrature.
        limit (int): Maximum number of subintervals.
        cutoff (float): Below this |s| the analytic majorant is used.

    Returns:
        float: An upper bound on exact_dkol(law).

    Raises:
        WrongRegime: If T <= 0 or the law is not centered.
        QuadratureFailure: If the quadrature does not reach `epsabs`.
    """
    if T <= 0:
        raise WrongRegime(f"Smoothing parameter T must be positive, got {T}.")
    if abs(law.mean) > STANDARDIZED_TOL:
        raise WrongRegime(f"The smoothing inequality needs a centered law, got mean {law.mean:.3g}.")

    lower = min(cutoff, T)
    head = small_s_majorant(law, lower)
    body = 0.0
    if T > lower:
        with warnings.catch_warnings():
            warnings.simplefilter("error", integrate.IntegrationWarning)
            try:
                body, abserr = integrate.quad(
                    lambda s: cf_error(law, s) / s, lower, T, epsabs=epsabs, epsrel=0.0, limit=limit,
                )
            except integrate.IntegrationWarning as e:
                logger.error(f"Smoothing integral failed on [{lower}, {T}]: {e}")
                raise QuadratureFailure(f"Adaptive quadrature did not converge on [{lower}, {T}]: {e}") from e
        logger.debug(f"Smoothing integral on [{lower}, {T}] = {body:.12g} (error {abserr:.2g})")
    return head + (2 / math.pi) * body + smoothing_tail(T)
