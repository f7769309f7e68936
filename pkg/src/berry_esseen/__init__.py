"""
Berry-Esseen bounds for sums of random variables with a dependency graph.

The package evaluates non-asymptotic Kolmogorov-distance bounds from a
moment profile, and certifies them on small instances with exact oracles
(cumulants, characteristic functions, Kolmogorov distances) and on large
ones with seeded Monte Carlo runs.
"""

from berry_esseen.bounds import best_bound, default_registry
from berry_esseen.core import (
    BerryEsseenError,
    BoundReport,
    DiscreteFamily,
    DiscreteLaw,
    MomentProfile,
    TheoremId,
    derive_profile,
)

__version__ = "0.1.0"

__all__ = [
    "BerryEsseenError",
    "BoundReport",
    "DiscreteFamily",
    "DiscreteLaw",
    "MomentProfile",
    "TheoremId",
    "best_bound",
    "default_registry",
    "derive_profile",
]
