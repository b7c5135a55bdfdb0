"""Recommendation-preserving rewrites and the group reduction pipeline.

* :func:`trust_propagate` -- a nonvoter pointing ``k`` times at another
  nonvoter of out-degree ``k`` inherits that node's out-edges instead.
* :func:`scale_edges` -- multiply a nonvoter's out-edges by ``k + 1``.
* :func:`proportional_inclusiveness` -- absorb the influencers of a group
  nonvoter into ``s`` disjoint copies of the rest of the network.
* :func:`reduce_group` -- chain the three (plus reachability pruning) until
  the group holds only voters and nonvoter sinks.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable

from .errors import (
    NoInfluencers,
    NonTerminating,
    NotInGroup,
    NotNonvoter,
    PreconditionMismatch,
    UnsupportedInfluencer,
    VoterTarget,
    WouldSelfLoop,
)
from .network import (
    Group,
    NodeId,
    Recommendation,
    Vote,
    VotingNetwork,
    as_group,
    network_to_dict,
    restrict_to_reachable,
    strip_voter_outedges,
)


class RewriteKind(str, enum.Enum):
    TRUST_PROPAGATION = "TrustPropagation"
    SCALE_INVARIANCE = "ScaleInvariance"
    PROPORTIONAL_INCLUSIVENESS = "ProportionalInclusiveness"
    IRRELEVANT_STUFF = "IIS"


@dataclass(frozen=True)
class RewriteStep:
    kind: RewriteKind
    params: dict
    before: tuple[VotingNetwork, Group]
    after: tuple[VotingNetwork, Group]

    def to_dict(self, snapshots: bool = True) -> dict:
        out = {"kind": self.kind.value, "params": self.params}
        if snapshots:
            for key, (net, group) in (("before", self.before), ("after", self.after)):
                out[key] = {"graph": network_to_dict(net), "group": sorted(group)}
        return out


def _require_nonvoter(net: VotingNetwork, node: NodeId) -> None:
    if net.is_voter(node):
        raise VoterTarget(f"{node} is a voter")


def trust_propagate(net: VotingNetwork, u: NodeId, v: NodeId) -> VotingNetwork:
    _require_nonvoter(net, u)
    _require_nonvoter(net, v)
    out_v = net.successors(v)
    k = sum(out_v.values())
    if k < 1:
        raise PreconditionMismatch(f"{v} has no outgoing edges")
    if net.multiplicity(u, v) != k:
        raise PreconditionMismatch(
            f"({u}, {v}) has multiplicity {net.multiplicity(u, v)}, out-degree of {v} is {k}"
        )
    if u in out_v:
        raise WouldSelfLoop(f"{v} is influenced by {u}")
    changes = {(u, v): 0}
    for w, m in out_v.items():
        changes[(u, w)] = net.multiplicity(u, w) + m
    return net.with_changes(set_edges=changes)


def scale_edges(net: VotingNetwork, u: NodeId, k: int) -> VotingNetwork:
    _require_nonvoter(net, u)
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    succ = net.successors(u)
    if not succ:
        return net
    return net.with_changes(set_edges={(u, b): m * (k + 1) for b, m in succ.items()})


def copy_name(node: NodeId, j: int) -> NodeId:
    return f"{node}#{j}"


def extra_copy_name(node: NodeId, h: int) -> NodeId:
    return f"{node}#x{h}"


@dataclass(frozen=True)
class InclusionResult:
    network: VotingNetwork
    group: Group
    s: int
    influencers: dict[NodeId, int]
    marked: tuple[NodeId, ...]
    extras: tuple[NodeId, ...] = field(default=())


def include_influencers(net: VotingNetwork, group: Iterable[NodeId], u: NodeId) -> InclusionResult:
    """Proportional inclusiveness on ``u`` with full bookkeeping.

    Every influencer of ``u`` must be a voter or a nonvoter sink.
    External influencer ``v`` with ``k`` edges from ``u`` enters the new
    group as ``k`` marked copies; an in-group influencer gets ``k`` extra
    isolated copies.  A group member with ``q`` edges to ``u`` receives
    ``q * k`` edges to each influencer, so its walk value is unchanged.
    """
    group = as_group(net, group)
    if u not in group:
        raise NotInGroup(u)
    if net.is_voter(u):
        raise NotNonvoter(u)
    influencers = dict(sorted(net.successors(u).items()))
    if not influencers:
        raise NoInfluencers(u)
    for v in influencers:
        if not (net.is_voter(v) or net.is_sink(v)):
            raise UnsupportedInfluencer(f"{v} influences {u} but is itself influenced")
    s = sum(influencers.values())
    internal_pointers = sorted(c for c in net.predecessors(u) if c in group)

    votes: dict[NodeId, Vote] = {}
    edges: dict[tuple[NodeId, NodeId], int] = {}
    rest = [n for n in net.nodes if n != u]
    base_edges = {(a, b): m for a, b, m in net.edges() if u not in (a, b)}
    for j in range(1, s + 1):
        for n in rest:
            votes[copy_name(n, j)] = net.vote(n)
        local = dict(base_edges)
        for c in internal_pointers:
            for (a, b), m in base_edges.items():
                if a == c:
                    local[(a, b)] = m * s
            q = net.multiplicity(c, u)
            for v, k in influencers.items():
                if v != c:
                    local[(c, v)] = local.get((c, v), 0) + q * k
        for (a, b), m in local.items():
            edges[(copy_name(a, j), copy_name(b, j))] = m

    extras = []
    marked = []
    for v, k in influencers.items():
        if v in group:
            for h in range(1, k + 1):
                name = extra_copy_name(v, h)
                votes[name] = net.vote(v)
                extras.append(name)
        else:
            marked.extend(copy_name(v, j) for j in range(1, k + 1))
    new_group = frozenset(
        [copy_name(c, j) for j in range(1, s + 1) for c in group if c != u] + marked + extras
    )
    return InclusionResult(
        network=VotingNetwork(votes, edges),
        group=new_group,
        s=s,
        influencers=influencers,
        marked=tuple(marked),
        extras=tuple(extras),
    )


def proportional_inclusiveness(
    net: VotingNetwork, group: Iterable[NodeId], u: NodeId
) -> tuple[VotingNetwork, Group]:
    res = include_influencers(net, group, u)
    return res.network, res.group


def plurality(net: VotingNetwork, group: Iterable[NodeId]) -> Recommendation:
    """Plus count against Minus count; nonvoters are ignored."""
    return Recommendation.of(sum(net.vote(c).sign for c in group))


def _intermediates(net: VotingNetwork, group: Group) -> list[NodeId]:
    return sorted(
        x for x in net.nonvoters()
        if x not in group and net.successors(x) and net.predecessors(x)
    )


def reduce_group(
    net: VotingNetwork, group: Iterable[NodeId], max_nodes: int = 200_000
) -> tuple[VotingNetwork, Group, list[RewriteStep]]:
    """Rewrite ``(net, group)`` until the group has only voters and nonvoter sinks.

    1. Voter out-edges are dropped.  Every out-of-group nonvoter that both
       influences and is influenced is bypassed: each node pointing at it is
       rescaled (together with the node itself) so that trust propagation
       applies, then propagated.  Nonvoters nearest the voters go first.
    2. Nodes unreachable from the group are dropped.
    3. Proportional inclusiveness is applied to group nonvoters whose
       influencers are all voters or sinks, smallest out-degree first.

    Raises NonTerminating on a nonvoter cycle, and when every remaining step
    of phase 3 would copy at least as many pending nonvoters as it removes
    (two or more pending members, all with out-degree >= 2).
    """
    group = as_group(net, group)
    steps: list[RewriteStep] = []

    def record(kind, params, new_net, new_group=None):
        nonlocal net, group
        new_group = group if new_group is None else new_group
        steps.append(RewriteStep(kind, params, (net, group), (new_net, new_group)))
        net, group = new_net, new_group

    stripped = strip_voter_outedges(net)
    if stripped != net:
        record(RewriteKind.IRRELEVANT_STUFF, {"action": "strip-voter-outedges"}, stripped)

    # phase 1
    while True:
        pending = _intermediates(net, group)
        if not pending:
            break
        pending_set = set(pending)
        ready = [x for x in pending if not pending_set.intersection(net.successors(x))]
        if not ready:
            raise NonTerminating(f"cycle among out-of-group nonvoters {pending}")
        x = ready[0]
        for w in sorted(net.predecessors(x)):
            if w in net.successors(x):
                raise NonTerminating(f"{w} and {x} influence each other")
            c = net.multiplicity(w, x)
            d = net.out_degree(x)
            g = gcd(c, d)
            if c // g > 1:
                record(RewriteKind.SCALE_INVARIANCE, {"node": x, "k": c // g - 1}, scale_edges(net, x, c // g - 1))
            if d // g > 1:
                record(RewriteKind.SCALE_INVARIANCE, {"node": w, "k": d // g - 1}, scale_edges(net, w, d // g - 1))
            record(RewriteKind.TRUST_PROPAGATION, {"u": w, "v": x}, trust_propagate(net, w, x))

    # phase 2
    pruned = restrict_to_reachable(net, group)
    if pruned != net:
        record(RewriteKind.IRRELEVANT_STUFF, {"action": "restrict-to-reachable"}, pruned)

    # phase 3
    while True:
        pending = sorted(c for c in group if not net.is_voter(c) and net.successors(c))
        if not pending:
            break
        ready = [
            c for c in pending
            if all(net.is_voter(v) or net.is_sink(v) for v in net.successors(c))
        ]
        if not ready:
            raise NonTerminating(f"cycle among group nonvoters {pending}")
        u = min(ready, key=lambda c: (net.out_degree(c), c))
        s = net.out_degree(u)
        if len(pending) >= 2 and s >= 2:
            raise NonTerminating(
                f"{len(pending)} pending group nonvoters with out-degree >= 2: "
                "each further inclusion step copies the others at least as often as it removes one"
            )
        if len(net) * s > max_nodes:
            raise NonTerminating(f"network would exceed {max_nodes} nodes")
        res = include_influencers(net, group, u)
        record(
            RewriteKind.PROPORTIONAL_INCLUSIVENESS,
            {"node": u, "s": s, "influencers": res.influencers,
             "marked": list(res.marked), "extras": list(res.extras)},
            res.network,
            res.group,
        )
        pruned = restrict_to_reachable(net, group)
        if pruned != net:
            record(RewriteKind.IRRELEVANT_STUFF, {"action": "restrict-to-reachable"}, pruned)
    return net, group, steps
