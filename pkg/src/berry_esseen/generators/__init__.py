from berry_esseen.generators.base import SPEC_KINDS, FamilySpec, register_kind, spec_from_dict
from berry_esseen.generators.checks import (
    LindebergReport,
    check_dependency_graph,
    lindeberg_feller_report,
    random_block_family,
    three_point_lindeberg,
)
from berry_esseen.generators.families import (
    WINDOW_FUNCTIONS,
    BernoulliDecay,
    CliqueBlocks,
    CustomSpec,
    MDependentWindow,
    ThreePointFamily,
    bernoulli_decay,
    clique_blocks,
    m_dependent_window,
    three_point_family,
)

__all__ = [
    "SPEC_KINDS",
    "WINDOW_FUNCTIONS",
    "BernoulliDecay",
    "CliqueBlocks",
    "CustomSpec",
    "FamilySpec",
    "LindebergReport",
    "MDependentWindow",
    "ThreePointFamily",
    "bernoulli_decay",
    "check_dependency_graph",
    "clique_blocks",
    "lindeberg_feller_report",
    "m_dependent_window",
    "random_block_family",
    "register_kind",
    "spec_from_dict",
    "three_point_family",
    "three_point_lindeberg",
]
