"""Exact structural checks on families: dependency graphs and Lindeberg/Feller quantities."""

import itertools
import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, List, Tuple, Union

import numpy as np

from berry_esseen.core.errors import WrongRegime
from berry_esseen.core.model import CenteringChoice, DiscreteFamily, DiscreteLaw
from berry_esseen.generators.base import FamilySpec

logger = logging.getLogger(__name__)

FACTORIZATION_TOL = 1e-12


def _codes(table: np.ndarray) -> Tuple[np.ndarray, int]:
    """Integer code of every row of `table` and the number of distinct rows."""
    _, inverse = np.unique(table, axis=0, return_inverse=True)
    inverse = inverse.ravel()
    return inverse, int(inverse.max()) + 1


def _factorizes(outcomes: np.ndarray, probs: np.ndarray, left: List[int], right: List[int]) -> bool:
    ia, na = _codes(outcomes[:, left])
    ib, nb = _codes(outcomes[:, right])
    joint = np.zeros((na, nb))
    np.add.at(joint, (ia, ib), probs)
    product = np.outer(joint.sum(axis=1), joint.sum(axis=0))
    return bool(np.max(np.abs(joint - product)) <= FACTORIZATION_TOL)


def check_dependency_graph(family: DiscreteFamily) -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """
    Verifies that the declared graph is a dependency graph of the family.

    Groups are independent of each other, so it suffices to check, inside
    each group, every vertex set A against the set B of group members with
    no edge into A.

    Returns:
        List[Tuple[Tuple[int, ...], Tuple[int, ...]]]: The (A, B) pairs whose
        joint law does not factorize; empty when the graph is valid.
    """
    adjacency = family.graph.adjacency_sets()
    failures = []
    for group in family.groups:
        members = list(group.members)
        column = {member: j for j, member in enumerate(members)}
        for size in range(1, len(members)):
            for subset in itertools.combinations(members, size):
                blocked = set(subset).union(*(adjacency[a] for a in subset))
                rest = tuple(b for b in members if b not in blocked)
                if not rest:
                    continue
                if not _factorizes(group.outcomes, group.probs,
                                   [column[a] for a in subset], [column[b] for b in rest]):
                    failures.append((subset, rest))
    if failures:
        logger.warning(f"Dependency graph check found {len(failures)} dependent pairs of non-adjacent sets.")
    return failures


def random_block_family(rng: np.random.Generator, max_vertices: int = 8, max_atoms: int = 3,
                        edge_prob: float = 0.2) -> DiscreteFamily:
    """
    A random small family: a random partition into comonotone blocks of random
    integer-valued laws, plus random extra edges between blocks.
    """
    n = int(rng.integers(2, max_vertices + 1))
    laws = []
    for _ in range(n):
        atoms = int(rng.integers(2, max_atoms + 1))
        values = rng.choice(np.arange(-3, 4), size=atoms, replace=False).astype(float)
        weights = rng.random(atoms) + 0.05
        laws.append(DiscreteLaw(values, weights / weights.sum()))
    labels = rng.integers(0, n, size=n)
    blocks = [np.flatnonzero(labels == label).tolist() for label in np.unique(labels)]
    blocks = [b for b in blocks if len(b) > 1]
    edges = [(i, j) for i, j in itertools.combinations(range(n), 2) if rng.random() < edge_prob]
    return DiscreteFamily.from_blocks(laws, blocks, edges, CenteringChoice())


# ---------------------------------------------------------------------------
# Lindeberg and Feller conditions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LindebergReport:
    epsilon: float
    variance: float
    lindeberg: float
    feller: float

    def to_dict(self) -> Dict[str, Any]:
        return dict(self.__dict__)


def lindeberg_feller_report(spec: Union[FamilySpec, DiscreteFamily], epsilon: float) -> LindebergReport:
    """
    Exact Lindeberg sum (1/V) sum_k E[Y_k^2 1{Y_k^2 > eps^2 V}] and Feller ratio
    max_k V[Y_k] / V for an independent family, Y_k centered at its mean.

    Raises:
        WrongRegime: If the family is dependent or epsilon <= 0.
    """
    if epsilon <= 0:
        raise WrongRegime(f"epsilon must be positive, got {epsilon}.")
    family = spec.to_family() if isinstance(spec, FamilySpec) else spec
    if family.D > 0:
        raise WrongRegime(f"The Lindeberg and Feller conditions need an independent family, got D={family.D}.")

    variances, tails = [], []
    for law in family.laws:
        centered = law.values - law.mean()
        variances.append(math.fsum(law.probs * centered ** 2))
        tails.append(centered ** 2)
    total = math.fsum(variances)
    if total <= 0:
        raise WrongRegime("The family has zero variance.")
    # Relative slack keeps atoms sitting exactly on the threshold out of the tail.
    threshold = epsilon ** 2 * total * (1 + 1e-12)
    tail_sum = math.fsum(
        math.fsum(law.probs[sq > threshold] * sq[sq > threshold]) for law, sq in zip(family.laws, tails)
    )
    report = LindebergReport(epsilon, total, tail_sum / total, max(variances) / total)
    logger.info(f"Lindeberg sum {report.lindeberg:.6g}, Feller ratio {report.feller:.6g} at eps={epsilon}")
    return report


def three_point_lindeberg(delta: float, n: int, epsilon: float) -> float:
    """
    Closed form of the Lindeberg sum for the three-point family:
    1 - ((N' - 1)/N)^(2/delta), N' the smallest integer > N eps^delta.
    """
    first = math.floor(n * epsilon ** delta) + 1
    if first > n:
        return 0.0
    return 1.0 - ((first - 1) / n) ** (2.0 / delta)
