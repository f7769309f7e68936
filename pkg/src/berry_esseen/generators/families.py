"""Named family constructions."""

import itertools
import logging
import math
from typing import Any, Callable, Dict, Mapping, Optional, Sequence, Union

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from berry_esseen.core.errors import InvalidProfile, ScenarioError, WrongRegime
from berry_esseen.core.model import (
    DEFAULT_SUPPORT_CAP,
    CenteringChoice,
    CenteringMode,
    CouplingGroup,
    DependencyGraph,
    DiscreteFamily,
    DiscreteLaw,
    MomentProfile,
    derive_profile,
    parse_json,
    parse_law,
    three_point_law,
)
from berry_esseen.generators.base import FamilySpec, register_kind
from berry_esseen.generators.checks import check_dependency_graph
from berry_esseen.generators.sampling import batched, iid_sums, sparse_sums

logger = logging.getLogger(__name__)

# Symmetric window functions: array (..., m+1) -> array (...).
WINDOW_FUNCTIONS: Dict[str, Callable[[np.ndarray], np.ndarray]] = {
    "product": lambda w: np.prod(w, axis=-1),
    "sum": lambda w: np.sum(w, axis=-1),
    "max": lambda w: np.max(w, axis=-1),
    "mean": lambda w: np.mean(w, axis=-1),
}

# A window is a registered name or a function of the same shape.
WindowArg = Union[str, Callable[[np.ndarray], np.ndarray]]

# Families up to this size have their declared graph checked on construction.
VERIFY_LIMIT = 8


def _center(law: DiscreteLaw, centering: CenteringChoice) -> float:
    if centering.mode == CenteringMode.ZERO:
        return 0.0
    if centering.mode == CenteringMode.MEAN:
        return law.mean()
    raise InvalidProfile("Named family kinds support zero or mean centering only.")


def _law_name(law: DiscreteLaw, name: Optional[str]) -> Any:
    return name if name is not None else law.to_pairs()


def _law_from_doc(value: Any) -> DiscreteLaw:
    if isinstance(value, str):
        return parse_law(value)
    return DiscreteLaw.from_pairs(value)


def _moment_maps(per_vertex: Callable[[float], np.ndarray], deltas: Sequence[float]):
    """A and M from per-vertex absolute moments E|Y_k - c_k|^delta."""
    A, M = {}, {}  # pylint: disable=invalid-name
    for delta in deltas:
        if delta < 1:
            raise WrongRegime(f"Moment orders must be at least 1, got {delta}.")
        moments = np.asarray(per_vertex(delta), dtype=float)
        A[delta] = math.fsum(moments)
        M[delta] = float(moments.max()) ** (1.0 / delta)
    return A, M


# ---------------------------------------------------------------------------
# Clique blocks
# ---------------------------------------------------------------------------


@register_kind
class CliqueBlocks(FamilySpec):
    """
    `n_blocks` independent draws Z_k, each copied `block_size` times.

    The graph is a disjoint union of complete blocks, so D = block_size - 1
    and S = block_size * sum_k Z_k.
    """

    kind = "clique_blocks"

    def __init__(self, n_blocks: int, block_size: int, base_law: DiscreteLaw,
                 centering: Optional[CenteringChoice] = None, law_name: Optional[str] = None):
        if n_blocks < 1 or block_size < 1:
            raise WrongRegime(f"Need n_blocks, block_size >= 1, got {n_blocks}, {block_size}.")
        self.n_blocks = int(n_blocks)
        self.block_size = int(block_size)
        self.base_law = base_law
        self.centering = centering or CenteringChoice()
        self.law_name = law_name

    @property
    def N(self) -> int:
        return self.n_blocks * self.block_size

    @property
    def D(self) -> int:
        return self.block_size - 1

    def blocks(self):
        b = self.block_size
        return [list(range(k * b, (k + 1) * b)) for k in range(self.n_blocks)]

    def to_family(self, support_cap: int = DEFAULT_SUPPORT_CAP) -> DiscreteFamily:
        return DiscreteFamily.from_blocks(
            [self.base_law] * self.N, self.blocks(), centering=self.centering, support_cap=support_cap,
        )

    def profile(self, deltas: Sequence[float]) -> MomentProfile:
        c = _center(self.base_law, self.centering)
        A, M = _moment_maps(lambda d: np.full(self.N, self.base_law.abs_moment(d, c)), deltas)  # pylint: disable=invalid-name
        L = self.base_law.sup_deviation(c)  # pylint: disable=invalid-name
        b = self.block_size
        return MomentProfile(
            N=self.N, D=self.D, v=self.standard_deviation(), A=A, M=M, L=L if L > 0 else None,
            rho=abs(self.n_blocks * b ** 3 * self.base_law.central_moment(3)), centering=self.centering,
        )

    def mean(self) -> float:
        return self.N * self.base_law.mean()

    def variance(self) -> float:
        return self.n_blocks * self.block_size ** 2 * self.base_law.variance()

    def sample_sums(self, generator: np.random.Generator, size: int) -> np.ndarray:
        return self.block_size * iid_sums(generator, self.base_law, self.n_blocks, size)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "n_blocks": self.n_blocks,
            "block_size": self.block_size,
            "law": _law_name(self.base_law, self.law_name),
            "centering": self.centering.to_dict(),
        }

    @classmethod
    def from_dict(cls, doc: Mapping[str, Any]) -> "CliqueBlocks":
        law = doc["law"]
        return cls(int(doc["n_blocks"]), int(doc["block_size"]), _law_from_doc(law),
                   CenteringChoice.from_dict(doc.get("centering")), law if isinstance(law, str) else None)


def clique_blocks(n_blocks: int, block_size: int, base_law: DiscreteLaw) -> CliqueBlocks:
    return CliqueBlocks(n_blocks, block_size, base_law)


# ---------------------------------------------------------------------------
# m-dependent windows
# ---------------------------------------------------------------------------


def _joint_table(law: DiscreteLaw, length: int):
    """All outcomes of `length` i.i.d. copies of `law` with their probabilities."""
    values = np.array(list(itertools.product(law.values, repeat=length)), dtype=float).reshape(-1, length)
    probs = np.prod(np.array(list(itertools.product(law.probs, repeat=length)), dtype=float).reshape(-1, length),
                    axis=1)
    return values, probs


@register_kind
class MDependentWindow(FamilySpec):
    """
    Y_k = window(X_k, ..., X_{k+m}) for i.i.d. X_0, ..., X_{n+m-1}.

    The declared graph joins i and j whenever 1 <= |i - j| <= m.
    """

    kind = "m_dependent_window"

    def __init__(self, n: int, m: int, base_law: DiscreteLaw, window: WindowArg = "product",
                 centering: Optional[CenteringChoice] = None, law_name: Optional[str] = None):
        if m < 0 or n < m + 1:
            raise WrongRegime(f"Need m >= 0 and n >= m + 1, got n={n}, m={m}.")
        if callable(window):
            self.window_fn = window
        elif window in WINDOW_FUNCTIONS:
            self.window_fn = WINDOW_FUNCTIONS[window]
        else:
            raise ScenarioError(f"Unknown window function '{window}'. Known: {sorted(WINDOW_FUNCTIONS)}.")
        self.n = int(n)
        self.m = int(m)
        self.base_law = base_law
        self.window = window
        self.centering = centering or CenteringChoice()
        self.law_name = law_name

    @property
    def N(self) -> int:
        return self.n

    @property
    def D(self) -> int:
        return min(2 * self.m, self.n - 1)

    def apply_window(self, rows: np.ndarray) -> np.ndarray:
        """Maps source rows of shape (K, L + m) to window values of shape (K, L)."""
        return self.window_fn(sliding_window_view(rows, self.m + 1, axis=-1))

    def graph(self) -> DependencyGraph:
        edges = [(i, j) for i in range(self.n) for j in range(i + 1, min(i + self.m + 1, self.n))]
        return DependencyGraph(self.n, tuple(edges))

    def to_family(self, support_cap: int = DEFAULT_SUPPORT_CAP) -> DiscreteFamily:
        group = CouplingGroup.from_sources(
            tuple(range(self.n)), [self.base_law] * (self.n + self.m), self.apply_window, support_cap,
        )
        return DiscreteFamily((group,), self.graph(), self.centering, support_cap)

    def marginal(self) -> DiscreteLaw:
        """Law of a single Y_k (the sequence is stationary)."""
        rows, probs = _joint_table(self.base_law, self.m + 1)
        group = CouplingGroup((0,), self.apply_window(rows).reshape(-1, 1), probs)
        return group.marginal(0)

    def _centered_product_moment(self, lags: Sequence[int]) -> float:
        """E[prod_j (Y_{lag_j} - E Y)] for lags starting at 0."""
        span = max(lags) + self.m + 1
        rows, probs = _joint_table(self.base_law, span)
        windows = self.apply_window(rows)
        mu = math.fsum(probs * windows[:, 0])
        product = np.prod(windows[:, list(lags)] - mu, axis=1)
        return math.fsum(probs * product)

    def autocovariance(self, h: int) -> float:
        return self._centered_product_moment([0, h])

    def variance(self) -> float:
        """n gamma_0 + 2 sum_{h=1}^{m} (n - h) gamma_h."""
        terms = [self.n * self.autocovariance(0)]
        terms.extend(2 * (self.n - h) * self.autocovariance(h) for h in range(1, min(self.m, self.n - 1) + 1))
        return math.fsum(terms)

    def third_central_moment(self) -> float:
        """
        E[(S - E S)^3] summed over index triples i <= j <= k with gaps a = j - i
        and b = k - j; triples with a gap larger than m contribute zero.
        """
        terms = []
        for a in range(self.m + 1):
            for b in range(self.m + 1):
                count = self.n - a - b
                if count <= 0:
                    continue
                multiplicity = 6 if a and b else (3 if a or b else 1)
                terms.append(multiplicity * count * self._centered_product_moment([0, a, a + b]))
        return math.fsum(terms)

    def profile(self, deltas: Sequence[float]) -> MomentProfile:
        law = self.marginal()
        c = _center(law, self.centering)
        A, M = _moment_maps(lambda d: np.full(self.n, law.abs_moment(d, c)), deltas)  # pylint: disable=invalid-name
        L = law.sup_deviation(c)  # pylint: disable=invalid-name
        return MomentProfile(
            N=self.n, D=self.D, v=self.standard_deviation(), A=A, M=M, L=L if L > 0 else None,
            rho=abs(self.third_central_moment()), centering=self.centering,
        )

    def mean(self) -> float:
        return self.n * self.marginal().mean()

    def sample_sums(self, generator: np.random.Generator, size: int) -> np.ndarray:
        width = self.n + self.m
        out = np.empty(size)
        for start, stop in batched(size, width):
            rows = generator.choice(self.base_law.values, p=self.base_law.probs, size=(stop - start, width))
            out[start:stop] = self.apply_window(rows).sum(axis=1)
        return out

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "n": self.n,
            "m": self.m,
            "law": _law_name(self.base_law, self.law_name),
            "window": self.window if isinstance(self.window, str) else getattr(self.window, "__name__", "custom"),
            "centering": self.centering.to_dict(),
        }

    @classmethod
    def from_dict(cls, doc: Mapping[str, Any]) -> "MDependentWindow":
        law = doc["law"]
        return cls(int(doc["n"]), int(doc["m"]), _law_from_doc(law), doc.get("window", "product"),
                   CenteringChoice.from_dict(doc.get("centering")), law if isinstance(law, str) else None)


def m_dependent_window(n: int, m: int, base_law: DiscreteLaw, window_fn: WindowArg = "product") -> MDependentWindow:
    return MDependentWindow(n, m, base_law, window_fn)


# ---------------------------------------------------------------------------
# Sparse independent families
# ---------------------------------------------------------------------------


@register_kind
class ThreePointFamily(FamilySpec):
    """
    Independent Y_k on {-k^(1/delta), 0, k^(1/delta)}, k = 1..n, with
    V[S_n] = n^(2/delta) and E|Y_k|^delta <= 1.
    """

    kind = "three_point"

    def __init__(self, delta: float, n: int):
        if delta < 3:
            raise WrongRegime(f"The three-point family needs delta >= 3, got {delta}.")
        if n < 2:
            raise WrongRegime(f"The three-point family needs n >= 2, got {n}.")
        self.delta = float(delta)
        self.n = int(n)
        self.centering = CenteringChoice(CenteringMode.MEAN)

    @property
    def N(self) -> int:
        return self.n

    @property
    def D(self) -> int:
        return 0

    def _k(self) -> np.ndarray:
        return np.arange(1, self.n + 1, dtype=float)

    def charge(self) -> np.ndarray:
        """P[Y_k != 0] = 1 - (k-1)^(2/delta) / k^(2/delta)."""
        k = self._k()
        return (k ** (2 / self.delta) - (k - 1) ** (2 / self.delta)) / k ** (2 / self.delta)

    def to_family(self, support_cap: int = DEFAULT_SUPPORT_CAP) -> DiscreteFamily:
        laws = [three_point_law(self.delta, k) for k in range(1, self.n + 1)]
        return DiscreteFamily.independent(laws, self.centering)

    def profile(self, deltas: Sequence[float]) -> MomentProfile:
        k = self._k()
        charge = self.charge()
        A, M = _moment_maps(lambda d: charge * k ** (d / self.delta), deltas)  # pylint: disable=invalid-name
        return MomentProfile(
            N=self.n, D=0, v=self.standard_deviation(), A=A, M=M, L=self.n ** (1 / self.delta), rho=0.0,
            centering=self.centering,
        )

    def mean(self) -> float:
        return 0.0

    def variance(self) -> float:
        return self.n ** (2 / self.delta)

    def sample_sums(self, generator: np.random.Generator, size: int) -> np.ndarray:
        def values(index: np.ndarray, gen: np.random.Generator) -> np.ndarray:
            signs = np.where(gen.random(index.size) < 0.5, -1.0, 1.0)
            return signs * (index + 1.0) ** (1 / self.delta)

        return sparse_sums(generator, size, self.charge(), values)

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind, "delta": self.delta, "n": self.n}

    @classmethod
    def from_dict(cls, doc: Mapping[str, Any]) -> "ThreePointFamily":
        return cls(float(doc["delta"]), int(doc["n"]))


def three_point_family(delta: float, n: int) -> ThreePointFamily:
    return ThreePointFamily(delta, n)


@register_kind
class BernoulliDecay(FamilySpec):
    """Independent Y_k ~ Ber(1/k), k = 1..n, centered at their means."""

    kind = "bernoulli_decay"

    def __init__(self, n: int):
        if n < 2:
            raise WrongRegime(f"The Bernoulli decay family needs n >= 2, got {n}.")
        self.n = int(n)
        self.centering = CenteringChoice(CenteringMode.MEAN)

    @property
    def N(self) -> int:
        return self.n

    @property
    def D(self) -> int:
        return 0

    def success(self) -> np.ndarray:
        return 1.0 / np.arange(1, self.n + 1, dtype=float)

    def to_family(self, support_cap: int = DEFAULT_SUPPORT_CAP) -> DiscreteFamily:
        laws = [DiscreteLaw.bernoulli(1.0 / k) for k in range(1, self.n + 1)]
        return DiscreteFamily.independent(laws, self.centering)

    def profile(self, deltas: Sequence[float]) -> MomentProfile:
        p = self.success()
        A, M = _moment_maps(lambda d: p * (1 - p) ** d + (1 - p) * p ** d, deltas)  # pylint: disable=invalid-name
        # Y_1 is the constant 1; from k = 2 on the largest deviation is 1 - 1/k.
        L = 1.0 - 1.0 / self.n  # pylint: disable=invalid-name
        rho = abs(math.fsum(p * (1 - p) * (1 - 2 * p)))
        return MomentProfile(
            N=self.n, D=0, v=self.standard_deviation(), A=A, M=M, L=L, rho=rho, centering=self.centering,
        )

    def mean(self) -> float:
        return math.fsum(self.success())

    def variance(self) -> float:
        p = self.success()
        return math.fsum(p * (1 - p))

    def sample_sums(self, generator: np.random.Generator, size: int) -> np.ndarray:
        return sparse_sums(generator, size, self.success(), lambda index, gen: np.ones(index.size))

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind, "n": self.n}

    @classmethod
    def from_dict(cls, doc: Mapping[str, Any]) -> "BernoulliDecay":
        return cls(int(doc["n"]))


def bernoulli_decay(n: int) -> BernoulliDecay:
    return BernoulliDecay(n)


# ---------------------------------------------------------------------------
# Custom families
# ---------------------------------------------------------------------------


@register_kind
class CustomSpec(FamilySpec):
    """
    A user-supplied family in the JSON family format.

    Families with at most VERIFY_LIMIT vertices have their declared graph
    checked against the joint law; larger ones are flagged as unverified.
    """

    kind = "custom"

    def __init__(self, family: DiscreteFamily, verify_limit: int = VERIFY_LIMIT):
        self.family = family
        if family.N <= verify_limit:
            failures = check_dependency_graph(family)
            if failures:
                a, b = failures[0]
                raise InvalidProfile(f"Declared graph is not a dependency graph: {list(a)} and {list(b)} are dependent.")
            self.graph_verified = True
        else:
            self.graph_verified = False
            logger.warning(f"Custom family with N={family.N} > {verify_limit}: dependency graph not verified.")

    @property
    def N(self) -> int:
        return self.family.N

    @property
    def D(self) -> int:
        return self.family.D

    def to_family(self, support_cap: int = DEFAULT_SUPPORT_CAP) -> DiscreteFamily:
        return self.family

    def profile(self, deltas: Sequence[float]) -> MomentProfile:
        return derive_profile(self.family, deltas)

    def mean(self) -> float:
        return math.fsum(law.mean() for law in self.family.laws)

    def variance(self) -> float:
        parts = []
        for group in self.family.groups:
            values, probs = group.sum_law()
            mu = math.fsum(probs * values)
            parts.append(math.fsum(probs * (values - mu) ** 2))
        return math.fsum(parts)

    def sample_sums(self, generator: np.random.Generator, size: int) -> np.ndarray:
        totals = np.zeros(size)
        for group in self.family.groups:
            rows = generator.choice(group.size, p=group.probs, size=size)
            totals += group.outcomes.sum(axis=1)[rows]
        return totals

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind, "family": self.family.to_dict()}

    @classmethod
    def from_dict(cls, doc: Mapping[str, Any]) -> "CustomSpec":
        family = doc["family"]
        if isinstance(family, str):
            family = parse_json(family)
        return cls(DiscreteFamily.from_dict(family))
