from berry_esseen.core.errors import (
    BerryEsseenError,
    ConfigError,
    DegenerateVariance,
    Insufficient,
    InvalidProfile,
    MissingMoment,
    NoApplicableBound,
    OracleTooLarge,
    QuadratureFailure,
    ScenarioError,
    WrongRegime,
)
from berry_esseen.core.model import (
    CenteringChoice,
    CenteringMode,
    CouplingGroup,
    DependencyGraph,
    DiscreteFamily,
    DiscreteLaw,
    MomentProfile,
    derive_profile,
    law_of_sum,
    parse_law,
    sigma,
    three_point_law,
    xi,
)
from berry_esseen.core.report import BoundReport, TheoremId

__all__ = [
    "BerryEsseenError",
    "BoundReport",
    "CenteringChoice",
    "CenteringMode",
    "ConfigError",
    "CouplingGroup",
    "DegenerateVariance",
    "DependencyGraph",
    "DiscreteFamily",
    "DiscreteLaw",
    "Insufficient",
    "InvalidProfile",
    "MissingMoment",
    "MomentProfile",
    "NoApplicableBound",
    "OracleTooLarge",
    "QuadratureFailure",
    "ScenarioError",
    "TheoremId",
    "WrongRegime",
    "derive_profile",
    "law_of_sum",
    "parse_law",
    "sigma",
    "three_point_law",
    "xi",
]
