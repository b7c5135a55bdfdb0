"""Group recommendations on trust networks via random walks."""

from .network import (
    Group,
    Recommendation,
    StarGroupSpec,
    Vote,
    VotingNetwork,
    build_network,
    generate_star_group,
    is_star_group,
    reachable_from,
    restrict_to_reachable,
    strip_voter_outedges,
)
from .walk import (
    group_recommend,
    individual_recommend,
    monte_carlo_walk,
    solve_walk,
)
from .transforms import proportional_inclusiveness, reduce_group, scale_edges, trust_propagate
from .impossibility import build_witness, verify_witness

__all__ = [
    "Group",
    "Recommendation",
    "StarGroupSpec",
    "Vote",
    "VotingNetwork",
    "build_network",
    "build_witness",
    "generate_star_group",
    "group_recommend",
    "individual_recommend",
    "is_star_group",
    "monte_carlo_walk",
    "proportional_inclusiveness",
    "reachable_from",
    "reduce_group",
    "restrict_to_reachable",
    "scale_edges",
    "solve_walk",
    "strip_voter_outedges",
    "trust_propagate",
    "verify_witness",
]
