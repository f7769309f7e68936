from berry_esseen.bounds.baselines import baseline, fmn_condition_quantity, fmn_condition_trend
from berry_esseen.bounds.registry import BoundRegistry, best_bound, default_registry
from berry_esseen.bounds.regimes import (
    ExponentTable,
    RegimePoint,
    RegionMap,
    crossover_curves,
    exponents,
    render_svg,
)
from berry_esseen.bounds.theorems import (
    bound_delta_2_3,
    bound_delta_ge3,
    bound_linfty,
    bound_linfty_refined,
)

__all__ = [
    "BoundRegistry",
    "ExponentTable",
    "RegimePoint",
    "RegionMap",
    "baseline",
    "best_bound",
    "bound_delta_2_3",
    "bound_delta_ge3",
    "bound_linfty",
    "bound_linfty_refined",
    "crossover_curves",
    "default_registry",
    "exponents",
    "fmn_condition_quantity",
    "fmn_condition_trend",
    "render_svg",
]
