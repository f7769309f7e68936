"""
Family Specs

A `FamilySpec` describes a named construction of (Y_k) with its dependency
graph. Each spec can produce:

-   an exact `DiscreteFamily` for small N (`to_family`),
-   an analytic `MomentProfile` at any N (`profile`),
-   exact-in-law samples of S for Monte Carlo runs (`sample_sums`).

Concrete kinds register themselves in `SPEC_KINDS` so that scenario files
can name them.
"""

import logging
import math
from abc import ABC, abstractmethod
from typing import Any, Dict, Mapping, Sequence, Type

import numpy as np

from berry_esseen.core.errors import ScenarioError
from berry_esseen.core.model import DEFAULT_SUPPORT_CAP, DiscreteFamily, MomentProfile

logger = logging.getLogger(__name__)

SPEC_KINDS: Dict[str, Type["FamilySpec"]] = {}


def register_kind(cls: Type["FamilySpec"]) -> Type["FamilySpec"]:
    SPEC_KINDS[cls.kind] = cls
    return cls


class FamilySpec(ABC):
    """
    An abstract family construction.

    Attributes:
        kind (str): Registry name of the construction.
        graph_verified (bool): False when the declared graph has not been
            checked against the joint law.
    """

    kind: str = ""
    graph_verified: bool = True

    @property
    @abstractmethod
    def N(self) -> int:  # pylint: disable=invalid-name
        """Number of summands."""

    @property
    @abstractmethod
    def D(self) -> int:  # pylint: disable=invalid-name
        """Maximum degree of the declared dependency graph."""

    @abstractmethod
    def to_family(self, support_cap: int = DEFAULT_SUPPORT_CAP) -> DiscreteFamily:
        """Exact family; raises OracleTooLarge when it cannot be enumerated."""

    @abstractmethod
    def profile(self, deltas: Sequence[float]) -> MomentProfile:
        """Moment profile computed without enumerating the joint law."""

    @abstractmethod
    def mean(self) -> float:
        """E[S]."""

    @abstractmethod
    def variance(self) -> float:
        """V[S]."""

    @abstractmethod
    def sample_sums(self, generator: np.random.Generator, size: int) -> np.ndarray:
        """`size` independent draws of S."""

    @property
    def independent(self) -> bool:
        return self.D == 0

    def standard_deviation(self) -> float:
        return math.sqrt(self.variance())

    @abstractmethod
    def to_dict(self) -> Dict[str, Any]:
        """Scenario document; `spec_from_dict` inverts it."""

    @classmethod
    @abstractmethod
    def from_dict(cls, doc: Mapping[str, Any]) -> "FamilySpec":
        """Inverse of `to_dict`."""


def spec_from_dict(doc: Mapping[str, Any]) -> FamilySpec:
    """
    Builds a spec from a scenario document with a `kind` field.

    Raises:
        ScenarioError: If the kind is unknown or parameters are missing.
    """
    kind = doc.get("kind")
    if kind not in SPEC_KINDS:
        raise ScenarioError(f"Unknown family kind '{kind}'. Known kinds: {sorted(SPEC_KINDS)}.")
    try:
        return SPEC_KINDS[kind].from_dict(doc)
    except (KeyError, TypeError) as e:
        raise ScenarioError(f"Malformed '{kind}' family specification: {e}") from e
