"""Group recommenders: the group random walk and the reference "odd mechanisms".

A recommender is any deterministic callable ``(VotingNetwork, group) -> Recommendation``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Optional

from .network import NodeId, Recommendation, VotingNetwork, as_group
from .walk import WalkSolution, solve_walk, solve_weighted

Recommender = Callable[[VotingNetwork, Iterable[NodeId]], Recommendation]


@lru_cache(maxsize=512)
def cached_walk(net: VotingNetwork) -> WalkSolution:
    return solve_walk(net)


def random_walk(net: VotingNetwork, group: Iterable[NodeId]) -> Recommendation:
    group = as_group(net, group)
    sol = cached_walk(net)
    return Recommendation.of(sum(Recommendation.of(sol[c]) for c in group))


def random_walk_weighted(net: VotingNetwork, group: Iterable[NodeId]) -> Recommendation:
    """Sign of the summed walk values; each nonvoter splits its unit weight."""
    group = as_group(net, group)
    sol = cached_walk(net)
    return Recommendation.of(sum(sol[c] for c in group))


def singleton_plus(net: VotingNetwork, group: Iterable[NodeId]) -> Recommendation:
    group = as_group(net, group)
    if len(group) == 1:
        return Recommendation.PLUS
    return random_walk(net, group)


def neighbor_count(net: VotingNetwork, group: Iterable[NodeId]) -> Recommendation:
    group = as_group(net, group)
    total = 0
    for c in group:
        if net.is_voter(c):
            total += net.vote(c).sign
        else:
            score = sum(m * net.vote(b).sign for b, m in net.successors(c).items())
            total += Recommendation.of(score)
    return Recommendation.of(total)


def _degree_bias(net: VotingNetwork, a: NodeId, b: NodeId, m: int) -> int:
    return m + net.out_degree(b)


@lru_cache(maxsize=256)
def _degree_biased_walk(net: VotingNetwork) -> WalkSolution:
    return solve_weighted(net, _degree_bias)


def degree_biased(net: VotingNetwork, group: Iterable[NodeId]) -> Recommendation:
    """Random walk where edge (a, b) weighs ``multiplicity + out-degree(b)``."""
    group = as_group(net, group)
    sol = _degree_biased_walk(net)
    return Recommendation.of(sum(Recommendation.of(sol[c]) for c in group))


def inside_majority(net: VotingNetwork, group: Iterable[NodeId]) -> Recommendation:
    group = as_group(net, group)
    return Recommendation.of(sum(net.vote(c).sign for c in group))


def always(value: Recommendation) -> Recommender:
    def constant(net: VotingNetwork, group: Iterable[NodeId]) -> Recommendation:
        as_group(net, group)
        return value

    constant.__name__ = f"always_{value.name.lower()}"
    return constant


@dataclass(frozen=True)
class NamedRecommender:
    name: str
    target_axiom: Optional[int]
    evaluator: Recommender

    def __call__(self, net: VotingNetwork, group: Iterable[NodeId]) -> Recommendation:
        return self.evaluator(net, group)


SYSTEMS: dict[str, NamedRecommender] = {
    r.name: r
    for r in [
        NamedRecommender("random-walk", None, random_walk),
        NamedRecommender("random-walk-weighted", None, random_walk_weighted),
        NamedRecommender("singleton-plus", 1, singleton_plus),
        NamedRecommender("neighbor-count", 7, neighbor_count),
        NamedRecommender("degree-biased", 8, degree_biased),
        NamedRecommender("inside-majority", 9, inside_majority),
    ]
}

ODD_MECHANISMS = ("singleton-plus", "neighbor-count", "degree-biased", "inside-majority")


def get_system(name: str) -> NamedRecommender:
    try:
        return SYSTEMS[name]
    except KeyError:
        raise ValueError(f"unknown system {name!r}; choose from {', '.join(SYSTEMS)}") from None
