"""
Core Model

Shared data types for every other module:

-   `DiscreteLaw`: a finite law given by value/probability atoms.
-   `DependencyGraph`: undirected (multi)graph on the vertex set, with its
    maximum degree D.
-   `CenteringChoice`: the constants c_k subtracted from each Y_k.
-   `CouplingGroup` / `DiscreteFamily`: an exactly enumerable family of
    discrete random variables. Groups are mutually independent; inside a
    group the joint law is an explicit outcome table.
-   `MomentProfile`: the summary (N, D, v, A_delta, M_delta, L, rho) that all
    bound evaluators consume.

All values are immutable after construction.
"""

import itertools
import json
import logging
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from types import MappingProxyType
from typing import Any, Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from berry_esseen.core.errors import (
    DegenerateVariance,
    InvalidProfile,
    MissingMoment,
    OracleTooLarge,
    ScenarioError,
    WrongRegime,
)

logger = logging.getLogger(__name__)

PROB_TOL = 1e-12
DEFAULT_SUPPORT_CAP = 2 ** 24
# Relative slack for checking profile invariants built from floating sums.
PROFILE_SLACK = 1e-9


def _readonly(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=float, copy=True)
    array.setflags(write=False)
    return array


def aggregate_atoms(values: np.ndarray, probs: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Merges equal values and returns atoms sorted by value."""
    unique, inverse = np.unique(np.asarray(values, dtype=float), return_inverse=True)
    merged = np.bincount(inverse.ravel(), weights=np.asarray(probs, dtype=float), minlength=unique.size)
    return unique, merged


# ---------------------------------------------------------------------------
# Laws
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DiscreteLaw:
    """A finite discrete law on the real line."""

    values: np.ndarray
    probs: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float).ravel()
        probs = np.asarray(self.probs, dtype=float).ravel()
        if values.size == 0 or values.size != probs.size:
            raise InvalidProfile("A law needs at least one atom and one probability per value.")
        if not np.all(np.isfinite(values)) or not np.all(np.isfinite(probs)):
            raise InvalidProfile("Law atoms and probabilities must be finite.")
        if np.any(probs < 0):
            raise InvalidProfile("Law probabilities must be non-negative.")
        total = math.fsum(probs)
        if abs(total - 1.0) > PROB_TOL:
            raise InvalidProfile(f"Law probabilities sum to {total!r}, not 1.")
        object.__setattr__(self, "values", _readonly(values))
        object.__setattr__(self, "probs", _readonly(probs))

    @classmethod
    def from_pairs(cls, pairs: Iterable[Mapping[str, float]]) -> "DiscreteLaw":
        pairs = list(pairs)
        try:
            return cls([float(a["x"]) for a in pairs], [float(a["p"]) for a in pairs])
        except (KeyError, TypeError) as e:
            raise ScenarioError(f"Each atom needs numeric 'x' and 'p' fields: {e}") from e

    @classmethod
    def point_mass(cls, x: float = 0.0) -> "DiscreteLaw":
        return cls([x], [1.0])

    @classmethod
    def rademacher(cls) -> "DiscreteLaw":
        return cls([-1.0, 1.0], [0.5, 0.5])

    @classmethod
    def bernoulli(cls, p: float) -> "DiscreteLaw":
        if not 0.0 <= p <= 1.0:
            raise InvalidProfile(f"Bernoulli parameter must lie in [0, 1], got {p}.")
        return cls([0.0, 1.0], [1.0 - p, p])

    @classmethod
    def uniform(cls, values: Sequence[float]) -> "DiscreteLaw":
        values = [float(x) for x in values]
        return cls(values, [1.0 / len(values)] * len(values))

    def to_pairs(self) -> List[Dict[str, float]]:
        return [{"x": float(x), "p": float(p)} for x, p in zip(self.values, self.probs)]

    @property
    def support_size(self) -> int:
        return int(self.values.size)

    def expect(self, fn: Callable[[np.ndarray], np.ndarray]) -> float:
        """E[fn(X)] with compensated summation."""
        return math.fsum(self.probs * fn(self.values))

    def mean(self) -> float:
        return self.expect(lambda x: x)

    def variance(self) -> float:
        mu = self.mean()
        return self.expect(lambda x: (x - mu) ** 2)

    def central_moment(self, order: int) -> float:
        mu = self.mean()
        return self.expect(lambda x: (x - mu) ** order)

    def abs_moment(self, order: float, center: float = 0.0) -> float:
        return self.expect(lambda x: np.abs(x - center) ** order)

    def sup_deviation(self, center: float = 0.0) -> float:
        """max |x - center| over atoms of positive probability."""
        charged = self.values[self.probs > 0]
        return float(np.max(np.abs(charged - center)))

    def cdf_breaks(self) -> Tuple[np.ndarray, np.ndarray]:
        """Sorted values and cumulative probabilities."""
        order = np.argsort(self.values, kind="mergesort")
        cum = np.cumsum(self.probs[order])
        return self.values[order], np.minimum(cum, 1.0)


def parse_law(name: str) -> DiscreteLaw:
    """
    Builds a named base law.

    Recognised names: `rademacher`, `bernoulli:p`, `three_point:delta:k`,
    `uniform:a,b,...` and `point:x`.

    Raises:
        ScenarioError: If the name is not recognised.
    """
    kind, _, arg = name.strip().partition(":")
    kind = kind.lower()
    try:
        if kind == "rademacher":
            return DiscreteLaw.rademacher()
        if kind == "bernoulli":
            return DiscreteLaw.bernoulli(float(arg))
        if kind == "uniform":
            return DiscreteLaw.uniform([float(x) for x in arg.split(",")])
        if kind == "point":
            return DiscreteLaw.point_mass(float(arg or 0.0))
        if kind == "three_point":
            delta_str, _, k_str = arg.partition(":")
            return three_point_law(float(delta_str), int(k_str))
    except ValueError as e:
        raise ScenarioError(f"Malformed law specification '{name}': {e}") from e
    raise ScenarioError(f"Unknown law '{name}'.")


def three_point_law(delta: float, k: int) -> DiscreteLaw:
    """Atoms {-k^(1/delta), 0, k^(1/delta)} with variance k^(2/delta) - (k-1)^(2/delta)."""
    if k < 1:
        raise WrongRegime(f"Three-point index must be at least 1, got {k}.")
    a = k ** (1.0 / delta)
    q = (k ** (2.0 / delta) - (k - 1) ** (2.0 / delta)) / (2.0 * k ** (2.0 / delta))
    return DiscreteLaw([-a, 0.0, a], [q, 1.0 - 2.0 * q, q])


# ---------------------------------------------------------------------------
# Graphs and centering
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DependencyGraph:
    """Undirected graph on vertices 0..N-1. Loops and multi-edges are allowed."""

    vertex_count: int
    edges: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.vertex_count < 1:
            raise InvalidProfile(f"A graph needs at least one vertex, got {self.vertex_count}.")
        normalized = []
        for edge in self.edges:
            i, j = (int(x) for x in edge)
            if not (0 <= i < self.vertex_count and 0 <= j < self.vertex_count):
                raise InvalidProfile(f"Edge ({i}, {j}) references a vertex outside 0..{self.vertex_count - 1}.")
            normalized.append((min(i, j), max(i, j)))
        object.__setattr__(self, "edges", tuple(normalized))

    @classmethod
    def from_blocks(cls, vertex_count: int, blocks: Iterable[Sequence[int]],
                    extra_edges: Iterable[Sequence[int]] = ()) -> "DependencyGraph":
        """Complete graph inside each block plus any extra edges."""
        edges = [tuple(e) for e in extra_edges]
        for block in blocks:
            edges.extend(itertools.combinations(sorted(block), 2))
        return cls(vertex_count, tuple(edges))

    @property
    def degrees(self) -> np.ndarray:
        counts = np.zeros(self.vertex_count, dtype=np.int64)
        for i, j in self.edges:
            counts[i] += 1
            if j != i:
                counts[j] += 1
        return counts

    @property
    def max_degree(self) -> int:
        return int(self.degrees.max()) if self.edges else 0

    def neighbors(self, vertex: int) -> frozenset:
        """Distinct neighbours of `vertex`, excluding itself."""
        out = set()
        for i, j in self.edges:
            if i == vertex and j != vertex:
                out.add(j)
            elif j == vertex and i != vertex:
                out.add(i)
        return frozenset(out)

    def adjacency_sets(self) -> List[frozenset]:
        sets: List[set] = [set() for _ in range(self.vertex_count)]
        for i, j in self.edges:
            if i != j:
                sets[i].add(j)
                sets[j].add(i)
        return [frozenset(s) for s in sets]


class CenteringMode(str, Enum):
    ZERO = "zero"
    MEAN = "mean"
    CUSTOM = "custom"


@dataclass(frozen=True)
class CenteringChoice:
    mode: CenteringMode = CenteringMode.MEAN
    custom_values: Optional[Tuple[float, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "mode", CenteringMode(self.mode))
        if (self.mode == CenteringMode.CUSTOM) != (self.custom_values is not None):
            raise InvalidProfile("Custom centering values are required for, and only for, mode 'custom'.")
        if self.custom_values is not None:
            object.__setattr__(self, "custom_values", tuple(float(c) for c in self.custom_values))

    def resolve(self, laws: Sequence[DiscreteLaw]) -> np.ndarray:
        """The constants c_k for the given marginal laws."""
        if self.mode == CenteringMode.ZERO:
            return np.zeros(len(laws))
        if self.mode == CenteringMode.MEAN:
            return np.array([law.mean() for law in laws])
        if len(self.custom_values) != len(laws):
            raise InvalidProfile(
                f"Custom centering has {len(self.custom_values)} values for {len(laws)} vertices."
            )
        return np.array(self.custom_values)

    def to_dict(self) -> Dict[str, Any]:
        doc: Dict[str, Any] = {"mode": self.mode.value}
        if self.custom_values is not None:
            doc["values"] = list(self.custom_values)
        return doc

    @classmethod
    def from_dict(cls, doc: Optional[Mapping[str, Any]]) -> "CenteringChoice":
        if not doc:
            return cls()
        try:
            values = doc.get("values")
            return cls(CenteringMode(doc.get("mode", "mean")), tuple(values) if values is not None else None)
        except ValueError as e:
            raise ScenarioError(f"Invalid centering specification {dict(doc)}: {e}") from e


# ---------------------------------------------------------------------------
# Families
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CouplingGroup:
    """
    A set of vertices with an explicit joint law.

    Attributes:
        members (Tuple[int, ...]): Vertex indices, in column order of `outcomes`.
        outcomes (np.ndarray): Shape (K, len(members)); row r is one joint outcome.
        probs (np.ndarray): Shape (K,); probability of each row.
    """

    members: Tuple[int, ...]
    outcomes: np.ndarray
    probs: np.ndarray

    def __post_init__(self):
        members = tuple(int(m) for m in self.members)
        outcomes = np.asarray(self.outcomes, dtype=float)
        probs = np.asarray(self.probs, dtype=float).ravel()
        if outcomes.ndim == 1:
            outcomes = outcomes.reshape(-1, 1)
        if outcomes.shape != (probs.size, len(members)):
            raise InvalidProfile(
                f"Outcome table of shape {outcomes.shape} does not match {probs.size} rows x {len(members)} members."
            )
        if np.any(probs < 0) or abs(math.fsum(probs) - 1.0) > PROB_TOL:
            raise InvalidProfile("Group outcome probabilities must be non-negative and sum to 1.")
        object.__setattr__(self, "members", members)
        object.__setattr__(self, "outcomes", _readonly(outcomes))
        object.__setattr__(self, "probs", _readonly(probs))

    @property
    def size(self) -> int:
        return int(self.probs.size)

    @classmethod
    def single(cls, member: int, law: DiscreteLaw) -> "CouplingGroup":
        return cls((member,), law.values.reshape(-1, 1), law.probs)

    @classmethod
    def comonotone(cls, members: Sequence[int], laws: Sequence[DiscreteLaw]) -> "CouplingGroup":
        """
        Couples the laws through one shared uniform draw, Y_j = F_j^{-1}(U).

        Identical laws yield identical copies.
        """
        breaks = [law.cdf_breaks() for law in laws]
        cuts = np.unique(np.concatenate([[0.0, 1.0]] + [np.minimum(cum, 1.0) for _, cum in breaks]))
        widths = np.diff(cuts)
        keep = widths > 0
        mids = (cuts[:-1] + cuts[1:])[keep] / 2.0
        columns = []
        for values, cum in breaks:
            index = np.minimum(np.searchsorted(cum, mids, side="left"), values.size - 1)
            columns.append(values[index])
        outcomes = np.column_stack(columns)
        probs = widths[keep]
        return cls(tuple(members), outcomes, probs / math.fsum(probs))

    @classmethod
    def from_sources(
        cls,
        members: Sequence[int],
        sources: Sequence[DiscreteLaw],
        fn: Callable[[np.ndarray], np.ndarray],
        support_cap: int = DEFAULT_SUPPORT_CAP,
    ) -> "CouplingGroup":
        """
        Builds a group whose members are a deterministic function of
        independent source variables.

        Args:
            members (Sequence[int]): Vertex indices produced by `fn`.
            sources (Sequence[DiscreteLaw]): Independent source laws.
            fn (Callable): Maps an array of source rows, shape (K, len(sources)),
                to member values, shape (K, len(members)).
            support_cap (int): Maximum number of enumerated outcomes.

        Raises:
            OracleTooLarge: If the product of source supports exceeds the cap.
        """
        size = math.prod(law.support_size for law in sources)
        if size > support_cap:
            raise OracleTooLarge(size, support_cap)
        grids = np.meshgrid(*[law.values for law in sources], indexing="ij")
        weights = np.meshgrid(*[law.probs for law in sources], indexing="ij")
        rows = np.column_stack([g.ravel() for g in grids])
        probs = np.prod(np.column_stack([w.ravel() for w in weights]), axis=1)
        outcomes = np.asarray(fn(rows), dtype=float).reshape(size, len(members))
        return cls(tuple(members), outcomes, probs / math.fsum(probs))

    def marginal(self, column: int) -> DiscreteLaw:
        values, probs = aggregate_atoms(self.outcomes[:, column], self.probs)
        return DiscreteLaw(values, probs / math.fsum(probs))

    def sum_law(self, columns: Optional[Sequence[int]] = None) -> Tuple[np.ndarray, np.ndarray]:
        """Law of the sum over the selected columns (all by default)."""
        table = self.outcomes if columns is None else self.outcomes[:, list(columns)]
        return aggregate_atoms(table.sum(axis=1), self.probs)

    def mapped(self, fn: Callable[[np.ndarray], np.ndarray]) -> "CouplingGroup":
        """Same coupling with every outcome table passed through `fn`."""
        return CouplingGroup(self.members, fn(self.outcomes), self.probs)


@dataclass(frozen=True)
class DiscreteFamily:
    """
    An exactly enumerable family (Y_k) with a declared dependency graph.

    Groups are mutually independent and partition the vertex set. The graph
    must connect every pair of dependent vertices; `check_dependency_graph`
    in the generators package verifies this on small instances.
    """

    groups: Tuple[CouplingGroup, ...]
    graph: DependencyGraph
    centering: CenteringChoice = field(default_factory=CenteringChoice)
    support_cap: int = DEFAULT_SUPPORT_CAP

    def __post_init__(self):
        object.__setattr__(self, "groups", tuple(self.groups))
        seen = sorted(m for g in self.groups for m in g.members)
        if seen != list(range(self.graph.vertex_count)):
            raise InvalidProfile("Coupling groups must partition the vertices 0..N-1 exactly once.")
        for group in self.groups:
            if group.size > self.support_cap:
                raise OracleTooLarge(group.size, self.support_cap)
        # Resolve once so that custom centering length mismatches fail early.
        self.centering.resolve(self.laws)

    @property
    def N(self) -> int:  # pylint: disable=invalid-name
        return self.graph.vertex_count

    @property
    def D(self) -> int:  # pylint: disable=invalid-name
        return self.graph.max_degree

    @property
    def laws(self) -> Tuple[DiscreteLaw, ...]:
        cached = self.__dict__.get("_laws")
        if cached is None:
            by_vertex: Dict[int, DiscreteLaw] = {}
            for group in self.groups:
                for column, member in enumerate(group.members):
                    by_vertex[member] = group.marginal(column)
            cached = tuple(by_vertex[k] for k in range(self.N))
            object.__setattr__(self, "_laws", cached)
        return cached

    @property
    def blocks(self) -> List[List[int]]:
        return [list(g.members) for g in self.groups]

    def centers(self) -> np.ndarray:
        return self.centering.resolve(self.laws)

    def support_size(self) -> int:
        """Number of joint outcomes of the full family."""
        return math.prod(group.size for group in self.groups)

    def with_centering(self, centering: CenteringChoice) -> "DiscreteFamily":
        return replace(self, centering=centering)

    def truncated(self, level: float) -> "DiscreteFamily":
        """
        The family c_k + (Y_k - c_k) 1{|Y_k - c_k| <= level}, same graph and centering.

        Raises:
            WrongRegime: If `level` is not positive.
        """
        if level <= 0:
            raise WrongRegime(f"Truncation level must be positive, got {level}.")
        c = self.centers()
        groups = []
        for group in self.groups:
            cols = c[list(group.members)]

            def clip(table: np.ndarray, cols=cols) -> np.ndarray:
                dev = table - cols
                return cols + np.where(np.abs(dev) <= level, dev, 0.0)

            groups.append(group.mapped(clip))
        # Custom centering keeps the original constants; mean centering must too.
        centering = CenteringChoice(CenteringMode.CUSTOM, tuple(c))
        return replace(self, groups=tuple(groups), centering=centering)

    # -- serialization ------------------------------------------------------

    @classmethod
    def independent(cls, laws: Sequence[DiscreteLaw],
                    centering: Optional[CenteringChoice] = None) -> "DiscreteFamily":
        groups = tuple(CouplingGroup.single(k, law) for k, law in enumerate(laws))
        return cls(groups, DependencyGraph(len(laws)), centering or CenteringChoice())

    @classmethod
    def from_blocks(
        cls,
        laws: Sequence[DiscreteLaw],
        blocks: Iterable[Sequence[int]] = (),
        edges: Iterable[Sequence[int]] = (),
        centering: Optional[CenteringChoice] = None,
        support_cap: int = DEFAULT_SUPPORT_CAP,
    ) -> "DiscreteFamily":
        """Comonotone blocks; vertices outside every block are independent singletons."""
        blocks = [sorted(int(k) for k in block) for block in blocks]
        covered = [k for block in blocks for k in block]
        if len(covered) != len(set(covered)):
            raise InvalidProfile("A vertex appears in more than one block.")
        covered_set = set(covered)
        singletons = [[k] for k in range(len(laws)) if k not in covered_set]
        groups = []
        for block in sorted(blocks + singletons):
            if len(block) == 1:
                groups.append(CouplingGroup.single(block[0], laws[block[0]]))
            else:
                groups.append(CouplingGroup.comonotone(block, [laws[k] for k in block]))
        graph = DependencyGraph.from_blocks(len(laws), blocks, edges)
        return cls(tuple(groups), graph, centering or CenteringChoice(), support_cap)

    @classmethod
    def from_dict(cls, doc: Mapping[str, Any], support_cap: int = DEFAULT_SUPPORT_CAP) -> "DiscreteFamily":
        """
        Builds a family from its JSON document.

        Accepts the block form (`laws`, `blocks`, `edges`, `centering`) and the
        explicit form (`groups` with `members`/`outcomes`/`probs`, plus
        `vertex_count` and `edges`).

        Raises:
            ScenarioError: If required fields are missing.
            InvalidProfile: If probabilities or structure are invalid.
        """
        centering = CenteringChoice.from_dict(doc.get("centering"))
        edges = [tuple(e) for e in doc.get("edges", [])]
        if "groups" in doc:
            try:
                groups = tuple(
                    CouplingGroup(tuple(g["members"]), np.asarray(g["outcomes"], dtype=float), g["probs"])
                    for g in doc["groups"]
                )
                graph = DependencyGraph(int(doc["vertex_count"]), tuple(edges))
            except (KeyError, TypeError) as e:
                raise ScenarioError(f"Malformed explicit family document: {e}") from e
            return cls(groups, graph, centering, support_cap)
        if "laws" not in doc:
            raise ScenarioError("Family document needs a 'laws' or 'groups' field.")
        laws = [DiscreteLaw.from_pairs(atoms) for atoms in doc["laws"]]
        return cls.from_blocks(laws, doc.get("blocks", []), edges, centering, support_cap)

    @classmethod
    def from_json(cls, text: str, support_cap: int = DEFAULT_SUPPORT_CAP) -> "DiscreteFamily":
        return cls.from_dict(parse_json(text), support_cap)

    def to_dict(self) -> Dict[str, Any]:
        """Explicit-form document; round-trips through `from_dict` exactly."""
        return {
            "vertex_count": self.N,
            "groups": [
                {"members": list(g.members), "outcomes": g.outcomes.tolist(), "probs": g.probs.tolist()}
                for g in self.groups
            ],
            "edges": [list(e) for e in self.graph.edges],
            "centering": self.centering.to_dict(),
        }


def parse_json(text: str) -> Any:
    """json.loads with errors re-raised as ScenarioError naming line and column."""
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ScenarioError(f"Malformed JSON at line {e.lineno}, column {e.colno}: {e.msg}") from e


def convolve_laws(
    left: Tuple[np.ndarray, np.ndarray],
    right: Tuple[np.ndarray, np.ndarray],
    support_cap: int = DEFAULT_SUPPORT_CAP,
) -> Tuple[np.ndarray, np.ndarray]:
    """Law of X + Y for independent discrete X, Y."""
    size = left[0].size * right[0].size
    if size > support_cap:
        raise OracleTooLarge(size, support_cap)
    values = np.add.outer(left[0], right[0]).ravel()
    probs = np.multiply.outer(left[1], right[1]).ravel()
    return aggregate_atoms(values, probs)


def law_of_sum(family: DiscreteFamily) -> Tuple[np.ndarray, np.ndarray]:
    """
    Exact law of S = sum_k Y_k, sorted by value.

    Group-sum laws are convolved in group order, so only the group tables
    and the running partial-sum law are ever materialized.

    Raises:
        OracleTooLarge: If an intermediate convolution exceeds the support cap.
    """
    current = (np.array([0.0]), np.array([1.0]))
    for group in family.groups:
        current = convolve_laws(current, group.sum_law(), family.support_cap)
    return current


# ---------------------------------------------------------------------------
# Moment profiles
# ---------------------------------------------------------------------------


def _key(delta: float) -> float:
    return float(round(float(delta), 12))


def _lookup(mapping: Mapping[float, float], delta: float, label: str) -> float:
    value = mapping.get(_key(delta))
    if value is None:
        raise MissingMoment(f"{label} at delta={delta} is not stored in the profile.")
    return value


@dataclass(frozen=True)
class MomentProfile:
    """
    Moment summary of a family with a dependency graph.

    Attributes:
        N (int): Number of vertices.
        D (int): Maximum degree of the dependency graph.
        v (float): Standard deviation of S.
        A (Mapping[float, float]): delta -> sum_k E|Y_k - c_k|^delta.
        M (Mapping[float, float]): delta -> max_k ||Y_k - c_k||_delta.
        L (Optional[float]): Uniform bound on |Y_k - c_k|.
        rho (Optional[float]): |E[(S - E[S])^3]|.
        centering (CenteringChoice): The centering used for A, M and L.
    """

    N: int  # pylint: disable=invalid-name
    D: int  # pylint: disable=invalid-name
    v: float
    A: Mapping[float, float] = field(default_factory=dict)  # pylint: disable=invalid-name
    M: Mapping[float, float] = field(default_factory=dict)  # pylint: disable=invalid-name
    L: Optional[float] = None  # pylint: disable=invalid-name
    rho: Optional[float] = None
    centering: CenteringChoice = field(default_factory=CenteringChoice)

    def __post_init__(self):
        if int(self.N) < 1 or int(self.D) < 0:
            raise InvalidProfile(f"Need N >= 1 and D >= 0, got N={self.N}, D={self.D}.")
        if not (math.isfinite(self.v) and self.v >= 0):
            raise InvalidProfile(f"Standard deviation must be a non-negative real, got {self.v}.")
        object.__setattr__(self, "N", int(self.N))
        object.__setattr__(self, "D", int(self.D))
        object.__setattr__(self, "v", float(self.v))
        object.__setattr__(self, "A", MappingProxyType({_key(d): float(a) for d, a in dict(self.A).items()}))
        object.__setattr__(self, "M", MappingProxyType({_key(d): float(m) for d, m in dict(self.M).items()}))
        if self.L is not None and not self.L > 0:
            raise InvalidProfile(f"L must be positive when present, got {self.L}.")
        if self.rho is not None and self.rho < 0:
            raise InvalidProfile(f"rho must be non-negative, got {self.rho}.")
        self._check_invariants()

    def _check_invariants(self) -> None:
        for delta, a in self.A.items():
            if a < 0 or not math.isfinite(a):
                raise InvalidProfile(f"A_{delta} must be a finite non-negative number, got {a}.")
            if self.L is not None and a > self.N * self.L ** delta * (1 + PROFILE_SLACK):
                raise InvalidProfile(f"A_{delta}={a} exceeds N*L^delta={self.N * self.L ** delta}.")
            if a == 0 and self.v > 0:
                raise InvalidProfile(f"A_{delta} = 0 forces every summand to be constant, but v={self.v}.")
        for delta, m in self.M.items():
            if m < 0 or not math.isfinite(m):
                raise InvalidProfile(f"M_{delta} must be a finite non-negative number, got {m}.")
            if m == 0 and self.v > 0:
                raise InvalidProfile(f"M_{delta} = 0 forces every summand to be constant, but v={self.v}.")
        deltas = sorted(self.A)
        for lo, hi in zip(deltas, deltas[1:]):
            if (self.A[lo] / self.N) ** (1 / lo) > (self.A[hi] / self.N) ** (1 / hi) * (1 + PROFILE_SLACK):
                raise InvalidProfile(f"(A_delta/N)^(1/delta) decreases between delta={lo} and delta={hi}.")
        if 2.0 in self.A and self.v ** 2 > self.A[2.0] * (self.D + 1) * (1 + PROFILE_SLACK):
            raise InvalidProfile("v^2 exceeds A_2 (D+1).")

    def moment(self, delta: float) -> float:
        return _lookup(self.A, delta, "A")

    def max_norm(self, delta: float) -> float:
        return _lookup(self.M, delta, "M")

    def require_L(self) -> float:
        if self.L is None:
            raise MissingMoment("The uniform bound L is not stored in the profile.")
        return self.L

    def require_rho(self) -> float:
        if self.rho is None:
            raise MissingMoment("The third central moment rho is not stored in the profile.")
        return self.rho

    def require_variance(self) -> float:
        if self.v <= 0:
            raise DegenerateVariance("The profile has v = 0.")
        return self.v

    def to_dict(self) -> Dict[str, Any]:
        return {
            "N": self.N,
            "D": self.D,
            "v": self.v,
            "A": {repr(d): a for d, a in sorted(self.A.items())},
            "M": {repr(d): m for d, m in sorted(self.M.items())},
            "L": self.L,
            "rho": self.rho,
            "centering": self.centering.to_dict(),
        }

    @classmethod
    def from_dict(cls, doc: Mapping[str, Any]) -> "MomentProfile":
        try:
            return cls(
                N=int(doc["N"]),
                D=int(doc["D"]),
                v=float(doc["v"]),
                A={float(d): float(a) for d, a in (doc.get("A") or {}).items()},
                M={float(d): float(m) for d, m in (doc.get("M") or {}).items()},
                L=None if doc.get("L") is None else float(doc["L"]),
                rho=None if doc.get("rho") is None else float(doc["rho"]),
                centering=CenteringChoice.from_dict(doc.get("centering")),
            )
        except (KeyError, TypeError, ValueError) as e:
            if isinstance(e, InvalidProfile):
                raise
            raise ScenarioError(f"Malformed profile document: {e}") from e

    @classmethod
    def from_json(cls, text: str) -> "MomentProfile":
        return cls.from_dict(parse_json(text))


def _group_central_moments(group: CouplingGroup) -> Tuple[float, float]:
    values, probs = group.sum_law()
    mu = math.fsum(probs * values)
    dev = values - mu
    return math.fsum(probs * dev ** 2), math.fsum(probs * dev ** 3)


def derive_profile(family: DiscreteFamily, deltas: Sequence[float]) -> MomentProfile:
    """
    Computes the moment profile of a family exactly from its atoms.

    The variance and third central moment of S are sums of the per-group
    values, since groups are independent. Only group tables are read, so the
    profile is available even when the law of S itself exceeds the support
    cap.

    Args:
        family (DiscreteFamily): The family.
        deltas (Sequence[float]): Moment orders to store, each at least 1.

    Returns:
        MomentProfile: Profile with A, M, L, rho and the family's centering.

    Raises:
        WrongRegime: If some delta is below 1.
        DegenerateVariance: If S has zero variance.
    """
    for delta in deltas:
        if delta < 1:
            raise WrongRegime(f"Moment orders must be at least 1, got {delta}.")

    laws = family.laws
    c = family.centers()
    A = {}  # pylint: disable=invalid-name
    M = {}  # pylint: disable=invalid-name
    for delta in deltas:
        per_vertex = [law.abs_moment(delta, ck) for law, ck in zip(laws, c)]
        A[delta] = math.fsum(per_vertex)
        M[delta] = max(per_vertex) ** (1.0 / delta)
    L = max(law.sup_deviation(ck) for law, ck in zip(laws, c))  # pylint: disable=invalid-name

    variances, thirds = [], []
    for group in family.groups:
        var, third = _group_central_moments(group)
        variances.append(var)
        thirds.append(third)
    rho = abs(math.fsum(thirds))

    v2 = math.fsum(variances)
    scale = max(L, 1.0)
    if v2 <= 1e-24 * scale ** 2:
        raise DegenerateVariance("The sum S has zero variance.")

    profile = MomentProfile(
        N=family.N, D=family.D, v=math.sqrt(v2), A=A, M=M, L=L if L > 0 else None,
        rho=rho, centering=family.centering,
    )
    logger.debug(f"Derived profile N={profile.N} D={profile.D} v={profile.v:.6g}")
    return profile


def xi(profile: MomentProfile, delta: float) -> float:
    """
    Renormalized standard deviation (N/A_delta)^(1/delta) sqrt(v^2/(N(D+1))).

    Raises:
        WrongRegime: If delta < 1.
        MissingMoment: If A_delta is not stored.
        DegenerateVariance: If v = 0.
    """
    if delta < 1:
        raise WrongRegime(f"xi is defined for delta >= 1, got {delta}.")
    a = profile.moment(delta)
    v = profile.require_variance()
    return (profile.N / a) ** (1.0 / delta) * math.sqrt(v ** 2 / (profile.N * (profile.D + 1)))


def sigma(profile: MomentProfile, delta: float) -> float:
    """Worst-case variant (1/M_delta) sqrt(v^2/(N(D+1))); never exceeds xi."""
    m = profile.max_norm(delta)
    v = profile.require_variance()
    return math.sqrt(v ** 2 / (profile.N * (profile.D + 1))) / m
