from berry_esseen.montecarlo.sampler import sample_standardized_sum, sample_sums
from berry_esseen.montecarlo.verification import (
    REVERSE_BE_CONSTANT,
    RateScan,
    VerificationReport,
    dkw_margin,
    empirical_dkol,
    rate_scan,
    verify_bound,
)

__all__ = [
    "REVERSE_BE_CONSTANT",
    "RateScan",
    "VerificationReport",
    "dkw_margin",
    "empirical_dkol",
    "rate_scan",
    "sample_standardized_sum",
    "sample_sums",
    "verify_bound",
]
