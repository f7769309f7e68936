"""
U-statistics as sums over a tuple dependency graph.

The summands f(X_alpha), alpha ranging over ordered tuples of distinct
indices, are dependent whenever two tuples share an index or touch adjacent
data points. The bounds below follow from the dependency-graph theorems
applied to that family.
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence

import numpy as np

from berry_esseen.core.errors import (
    DegenerateVariance,
    Insufficient,
    InvalidProfile,
    MissingMoment,
    OracleTooLarge,
    ScenarioError,
    WrongRegime,
)
from berry_esseen.core.model import DiscreteLaw
from berry_esseen.core.report import BoundReport, TheoremId

logger = logging.getLogger(__name__)

DEFAULT_ENUMERATION_CAP = 10_000_000
CHUNK_TUPLES = 65_536
XI_SLACK = 1e-9


@dataclass(frozen=True)
class Kernel:
    """
    A kernel f of `ell` arguments, vectorized over rows.

    Attributes:
        name (str): Registry name.
        ell (int): Number of arguments.
        fn (Callable): Maps an array (K, ell) to an array (K,).
        symmetric (bool): Whether f is invariant under permuting its arguments.
    """

    name: str
    ell: int
    fn: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    symmetric: bool = True


KERNELS: Dict[str, Kernel] = {
    "mean": Kernel("mean", 1, lambda x: x[:, 0]),
    "var": Kernel("var", 2, lambda x: 0.5 * (x[:, 0] - x[:, 1]) ** 2),
    "gini": Kernel("gini", 2, lambda x: np.abs(x[:, 0] - x[:, 1])),
    "product": Kernel("product", 2, lambda x: x[:, 0] * x[:, 1]),
}


def get_kernel(name: str) -> Kernel:
    if name not in KERNELS:
        raise ScenarioError(f"Unknown kernel '{name}'. Known kernels: {sorted(KERNELS)}.")
    return KERNELS[name]


@dataclass(frozen=True)
class UStatSpec:
    """
    A U-statistic of order ell over n data points whose dependency graph has
    maximum degree m.

    Attributes:
        kernel (Kernel): The kernel f.
        n (int): Sample size.
        m (int): Maximum degree of the data dependency graph.
        centering (float): Common centering constant c_alpha.
    """

    kernel: Kernel
    n: int
    m: int = 0
    centering: float = 0.0

    def __post_init__(self):
        if self.kernel.ell < 1 or self.m < 0:
            raise WrongRegime(f"Need ell >= 1 and m >= 0, got ell={self.kernel.ell}, m={self.m}.")
        if self.n < self.kernel.ell:
            raise Insufficient(f"A U-statistic of order {self.kernel.ell} needs n >= {self.kernel.ell}, got {self.n}.")

    @property
    def ell(self) -> int:
        return self.kernel.ell

    @property
    def tuple_count(self) -> int:
        """|Lambda_{n,ell}| = n!/(n-ell)!."""
        return math.perm(self.n, self.ell)

    @property
    def degree_scale(self) -> float:
        """ell^2 (m+1), the tuple-degree factor."""
        return self.ell ** 2 * (self.m + 1)


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------


def _index_chunks(n: int, ell: int, ordered: bool, chunk: int = CHUNK_TUPLES) -> Iterator[np.ndarray]:
    tuples = itertools.permutations(range(n), ell) if ordered else itertools.combinations(range(n), ell)
    while True:
        block = list(itertools.islice(tuples, chunk))
        if not block:
            return
        yield np.asarray(block, dtype=np.int64).reshape(-1, ell)


def u_statistic(spec: UStatSpec, data: Sequence[float], closed_form: bool = True,
                enumeration_cap: int = DEFAULT_ENUMERATION_CAP) -> float:
    """
    Averages the kernel over ordered tuples of distinct indices.

    The sample mean and the (n-1)-denominator sample variance are used
    directly for the `mean` and `var` kernels unless `closed_form` is False.
    Symmetric kernels beyond `enumeration_cap` ordered tuples are averaged
    over combinations, each standing for ell! ordered tuples.

    Args:
        spec (UStatSpec): Kernel and dependency parameters.
        data (Sequence[float]): The sample X_1..X_n.
        closed_form (bool): Allow the closed forms for `mean` and `var`.
        enumeration_cap (int): Largest ordered-tuple count enumerated as is.

    Returns:
        float: U_n.

    Raises:
        Insufficient: If the sample has fewer than ell points.
    """
    x = np.asarray(data, dtype=float)
    ell = spec.ell
    if x.size < ell:
        raise Insufficient(f"A U-statistic of order {ell} needs at least {ell} data points, got {x.size}.")

    if closed_form and spec.kernel.name == "mean":
        return float(np.mean(x))
    if closed_form and spec.kernel.name == "var":
        return float(np.var(x, ddof=1))

    count = math.perm(x.size, ell)
    ordered = not (spec.kernel.symmetric and count > enumeration_cap)
    if not ordered:
        logger.info(f"{count} ordered tuples exceed the cap; averaging over combinations.")
    partials: List[float] = []
    seen = 0
    for index in _index_chunks(x.size, ell, ordered):
        partials.append(math.fsum(spec.kernel.fn(x[index])))
        seen += index.shape[0]
    return math.fsum(partials) / seen


def plug_in_moment(spec: UStatSpec, data: Sequence[float], delta: float, center: Optional[float] = None,
                   enumeration_cap: int = DEFAULT_ENUMERATION_CAP) -> float:
    """
    Observed sum_alpha |f(X_alpha) - c|^delta over ordered tuples, c = U_n by
    default. A stand-in for A_delta when the data law is unknown.

    Raises:
        OracleTooLarge: If there are more ordered tuples than `enumeration_cap`.
    """
    x = np.asarray(data, dtype=float)
    count = math.perm(x.size, spec.ell)
    if count > enumeration_cap:
        raise OracleTooLarge(count, enumeration_cap)
    c = u_statistic(spec, x, closed_form=False) if center is None else center
    total = math.fsum(
        math.fsum(np.abs(spec.kernel.fn(x[index]) - c) ** delta) for index in _index_chunks(x.size, spec.ell, True)
    )
    logger.warning(f"A_{delta:g} replaced by its observed value {total:.6g}; the bound is not certified.")
    return total


# ---------------------------------------------------------------------------
# Tuple dependency graph
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class UStatGraph:
    N: int  # pylint: disable=invalid-name
    D_upper: int  # pylint: disable=invalid-name
    ND_upper: float  # pylint: disable=invalid-name

    def to_dict(self) -> Dict[str, Any]:
        return dict(self.__dict__)


def ustat_graph_bounds(n: int, ell: int, m: int) -> UStatGraph:
    """
    Size and degree bound of the tuple dependency graph:
    N = n!/(n-ell)!, D <= ell^2 (m+1) (n-1)!/(n-ell)! - 1 and
    N(D+1) <= ell^2 (m+1) n^(2 ell - 1).
    """
    if not n >= ell >= 1 or m < 0:
        raise WrongRegime(f"Need n >= ell >= 1 and m >= 0, got n={n}, ell={ell}, m={m}.")
    d_upper = ell ** 2 * (m + 1) * math.perm(n - 1, ell - 1) - 1
    return UStatGraph(math.perm(n, ell), d_upper, float(ell ** 2 * (m + 1) * n ** (2 * ell - 1)))


def block_clique_adjacency(n: int, m: int) -> List[frozenset]:
    """Data graph made of consecutive cliques of m+1 points; maximum degree m."""
    adjacency = []
    for k in range(n):
        start = (k // (m + 1)) * (m + 1)
        adjacency.append(frozenset(j for j in range(start, min(start + m + 1, n)) if j != k))
    return adjacency


def tuple_graph_max_degree(n: int, ell: int, data_adjacency: Sequence[frozenset]) -> int:
    """
    Maximum degree of the tuple graph, built explicitly: alpha and beta are
    adjacent when some alpha_i equals or neighbours some beta_k.
    """
    tuples = np.asarray(list(itertools.permutations(range(n), ell)), dtype=np.int64).reshape(-1, ell)
    reach = np.zeros((tuples.shape[0], n), dtype=bool)
    for row, alpha in enumerate(tuples):
        for a in alpha:
            reach[row, a] = True
            reach[row, list(data_adjacency[a])] = True
    adjacent = reach[:, tuples].any(axis=2)
    np.fill_diagonal(adjacent, False)
    return int(adjacent.sum(axis=1).max())


@dataclass(frozen=True)
class UStatVariances:
    var_U: float  # pylint: disable=invalid-name
    var_V: float  # pylint: disable=invalid-name

    @property
    def ratio(self) -> float:
        return self.var_V / self.var_U


def exact_ustat_variances(kernel: Kernel, laws: Sequence[DiscreteLaw], support_cap: int = 1 << 20) -> UStatVariances:
    """
    Exact V[U_n] and V[V_n] for independent discrete data, by enumerating every
    joint outcome of the sample.
    """
    n = len(laws)
    size = math.prod(law.support_size for law in laws)
    if size > support_cap:
        raise WrongRegime(f"Sample space of {size} outcomes exceeds the cap {support_cap}.")
    grids = np.meshgrid(*[law.values for law in laws], indexing="ij")
    weights = np.meshgrid(*[law.probs for law in laws], indexing="ij")
    rows = np.column_stack([g.ravel() for g in grids])
    probs = np.prod(np.column_stack([w.ravel() for w in weights]), axis=1)

    v_n = np.zeros(size)
    for index in _index_chunks(n, kernel.ell, ordered=True):
        for alpha in index:
            v_n += kernel.fn(rows[:, alpha])
    u_n = v_n / math.perm(n, kernel.ell)

    def variance(values: np.ndarray) -> float:
        mu = math.fsum(probs * values)
        return math.fsum(probs * (values - mu) ** 2)

    return UStatVariances(variance(u_n), variance(v_n))


# ---------------------------------------------------------------------------
# Bounds
# ---------------------------------------------------------------------------


def _big_xi(spec: UStatSpec, var_v: float, scale: float) -> float:
    """(1/scale) sqrt(V[V_n] / (ell^2 (m+1) n^(2 ell - 1))), required in (0, 1]."""
    if var_v <= 0:
        raise DegenerateVariance("V[U_n] = 0.")
    value = math.sqrt(var_v / (spec.degree_scale * float(spec.n) ** (2 * spec.ell - 1))) / scale
    if value > 1 + XI_SLACK:
        logger.error(f"Normalized deviation {value:.6g} exceeds 1")
        raise InvalidProfile(f"Normalized deviation must lie in (0, 1], got {value:.6g}.")
    return value


def _moment_scale(spec: UStatSpec, A: float, delta: float) -> float:  # pylint: disable=invalid-name
    """a_delta = (A_delta (n-ell)!/n!)^(1/delta)."""
    if A is None:
        raise MissingMoment(f"The U-statistic bound needs A_{delta}.")
    if not A > 0:
        raise InvalidProfile(f"A_delta must be positive, got {A}.")
    return (A / spec.tuple_count) ** (1.0 / delta)


def ustat_bound(
    spec: UStatSpec,
    var_V: float,  # pylint: disable=invalid-name
    variant: str = "moments",
    delta: Optional[float] = None,
    A: Optional[float] = None,  # pylint: disable=invalid-name
    L: Optional[float] = None,  # pylint: disable=invalid-name
    K: Optional[float] = None,  # pylint: disable=invalid-name
) -> BoundReport:
    """
    Kolmogorov-distance bound for (U_n - E U_n)/sqrt(V[U_n]).

    Variants:
        bounded: 227.5 sqrt(ell^2(m+1)/n) Xi_inf^-3, Xi_inf computed with L.
        moments: with Xi_delta computed with a_delta, for delta in (2, 3)
            8.015 (ell^2(m+1)/n)^((delta-2)/(2(delta+1))) Xi^(-delta/(delta+1)),
            for delta >= 3 the max of the same term with 18.96 and
            227.5 sqrt(ell^2(m+1)/n) Xi^-3.
        stationary: stationary m-dependent data with V[V_n]/n^(2 ell - 1) -> K^2;
            for delta in (2, 3)
            11.335 K (ell^2(m+1))^((delta-1)/(delta+1)) a^(delta/(delta+1)) n^(-(delta-2)/(2(delta+1))),
            for delta >= 3 the max of the same term with 26.672 and
            643.5 (ell^2(m+1))^2 a^3 n^(-1/2).

    Args:
        spec (UStatSpec): The U-statistic.
        var_V (float): V[V_n] = (n!/(n-ell)!)^2 V[U_n].
        variant (str): "bounded", "moments" or "stationary".
        delta (Optional[float]): Moment order, > 2 for the moment variants.
        A (Optional[float]): sum_alpha E|f(X_alpha) - c_alpha|^delta.
        L (Optional[float]): max_alpha ||f(X_alpha) - c_alpha||_inf.
        K (Optional[float]): Limit constant of the stationary variant.

    Returns:
        BoundReport: The bound with Xi and a_delta in its metadata.

    Raises:
        DegenerateVariance: If V[U_n] = 0.
        InvalidProfile: If Xi falls outside (0, 1].
        MissingMoment: If the variant's inputs are missing.
        WrongRegime: If delta <= 2 for a moment variant.
    """
    ratio = spec.degree_scale / spec.n
    graph = ustat_graph_bounds(spec.n, spec.ell, spec.m)
    metadata: Dict[str, Any] = {"N": graph.N, "D_upper": graph.D_upper}

    if variant == "bounded":
        if L is None:
            raise MissingMoment("The bounded U-statistic bound needs L.")
        big_xi = _big_xi(spec, var_V, L)
        metadata["Xi"] = big_xi
        return BoundReport(TheoremId.USTAT_BOUNDED, 227.5 * math.sqrt(ratio) * big_xi ** -3, "sqrt_n",
                           metadata=metadata)

    if variant not in ("moments", "stationary"):
        raise ScenarioError(f"Unknown U-statistic bound variant '{variant}'.")
    if delta is None or delta <= 2:
        raise WrongRegime(f"Moment variants need delta > 2, got {delta}.")
    a = _moment_scale(spec, A, delta)
    metadata["a_delta"] = a
    exponent = (delta - 2) / (2 * (delta + 1))

    if variant == "moments":
        big_xi = _big_xi(spec, var_V, a)
        metadata["Xi"] = big_xi
        first = ratio ** exponent * big_xi ** (-delta / (delta + 1))
        if delta < 3:
            return BoundReport(TheoremId.USTAT_MOMENTS, 8.015 * first, "interpolated", delta=delta,
                               metadata=metadata)
        tail = 227.5 * math.sqrt(ratio) * big_xi ** -3
        branch = "interpolated" if 18.96 * first >= tail else "sqrt_n"
        return BoundReport(TheoremId.USTAT_MOMENTS, max(18.96 * first, tail), branch, delta=delta,
                           metadata=metadata)

    if K is None or not K > 0:
        raise MissingMoment("The stationary U-statistic bound needs K > 0.")
    if var_V <= 0:
        raise DegenerateVariance("V[U_n] = 0.")
    scale = spec.degree_scale
    first = scale ** ((delta - 1) / (delta + 1)) * a ** (delta / (delta + 1)) * spec.n ** -exponent
    large_enough = var_V >= float(spec.n) ** (2 * spec.ell - 1) * K ** 2 / 2
    notes = ["K enters as a factor, as displayed"] if delta < 3 else []
    if not large_enough:
        notes.append("n is not large enough: V[V_n] < n^(2 ell - 1) K^2 / 2")
    metadata["K"] = K
    if delta < 3:
        raw, branch = 11.335 * K * first, "interpolated"
    else:
        head = 26.672 * first
        tail = 643.5 * scale ** 2 * a ** 3 / math.sqrt(spec.n)
        raw, branch = max(head, tail), ("interpolated" if head >= tail else "sqrt_n")
    return BoundReport(TheoremId.USTAT_STATIONARY, raw, branch, large_enough, "; ".join(notes), delta,
                       metadata)
