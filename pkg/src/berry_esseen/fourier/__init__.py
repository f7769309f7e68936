from berry_esseen.fourier.laws import StandardizedLaw, cf_error, exact_cf, exact_dkol, normal_cdf
from berry_esseen.fourier.smoothing import feller_rhs, smoothing_tail
from berry_esseen.fourier.zones import (
    ZoneCondition,
    ZoneReport,
    fourier_bound_unbounded,
    in_zone_grid,
    zone_bound_unbounded,
    zone_check_bounded,
    zone_check_refined,
    zone_conditions,
)

__all__ = [
    "StandardizedLaw",
    "ZoneCondition",
    "ZoneReport",
    "cf_error",
    "exact_cf",
    "exact_dkol",
    "feller_rhs",
    "fourier_bound_unbounded",
    "in_zone_grid",
    "normal_cdf",
    "smoothing_tail",
    "zone_bound_unbounded",
    "zone_check_bounded",
    "zone_check_refined",
    "zone_conditions",
]
