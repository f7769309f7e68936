from berry_esseen.cumulants.bounds import (
    TruncationContext,
    TruncationShifts,
    lemma_cumulant_bound,
    truncation_shifts,
)
from berry_esseen.cumulants.constants import (
    Enclosure,
    ProofConstants,
    constant_C,
    constant_C_second,
    derived_theorem_constants,
    proof_constants,
)
from berry_esseen.cumulants.series import (
    cumulant_of_sum,
    cumulants_of_law,
    cumulants_of_sum,
    cumulants_to_moments,
    moments_to_cumulants,
)

__all__ = [
    "Enclosure",
    "ProofConstants",
    "TruncationContext",
    "TruncationShifts",
    "constant_C",
    "constant_C_second",
    "cumulant_of_sum",
    "cumulants_of_law",
    "cumulants_of_sum",
    "cumulants_to_moments",
    "derived_theorem_constants",
    "lemma_cumulant_bound",
    "moments_to_cumulants",
    "proof_constants",
    "truncation_shifts",
]
