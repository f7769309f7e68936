from berry_esseen.applications.clt import (
    CLTReport,
    ConditionTrend,
    VarianceBranch,
    clt_condition_check,
    shared_prefix_profiles,
    variance_growth_branch,
)
from berry_esseen.applications.ustat import (
    KERNELS,
    Kernel,
    UStatGraph,
    UStatSpec,
    UStatVariances,
    block_clique_adjacency,
    exact_ustat_variances,
    get_kernel,
    plug_in_moment,
    tuple_graph_max_degree,
    u_statistic,
    ustat_bound,
    ustat_graph_bounds,
)
from berry_esseen.applications.volatility import (
    KEstimate,
    VolatilityEstimates,
    VolatilitySpec,
    estimate_K,
    pair_moment_sum,
    scaled_moments_of,
    tail_constant,
    volatility_bound,
    volatility_estimators,
)

__all__ = [
    "CLTReport",
    "ConditionTrend",
    "KERNELS",
    "KEstimate",
    "Kernel",
    "UStatGraph",
    "UStatSpec",
    "UStatVariances",
    "VarianceBranch",
    "VolatilityEstimates",
    "VolatilitySpec",
    "block_clique_adjacency",
    "clt_condition_check",
    "estimate_K",
    "exact_ustat_variances",
    "get_kernel",
    "pair_moment_sum",
    "plug_in_moment",
    "scaled_moments_of",
    "shared_prefix_profiles",
    "tail_constant",
    "tuple_graph_max_degree",
    "u_statistic",
    "ustat_bound",
    "ustat_graph_bounds",
    "variance_growth_branch",
    "volatility_bound",
    "volatility_estimators",
]
