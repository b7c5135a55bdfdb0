"""Seeded random voting networks and groups for property and acceptance suites."""

from __future__ import annotations

import random

from .network import Group, NodeId, Vote, VotingNetwork

LABELS = (Vote.PLUS, Vote.MINUS, Vote.UNDECIDED)


def random_network(
    rng: random.Random,
    max_nodes: int = 12,
    max_edge_units: int = 30,
    min_nodes: int = 2,
    undecided_weight: float = 0.5,
    voter_edge_prob: float = 0.1,
) -> VotingNetwork:
    n = rng.randint(min_nodes, max_nodes)
    ids = [f"n{i}" for i in range(n)]
    w = (1 - undecided_weight) / 2
    votes = {i: rng.choices(LABELS, weights=(w, w, undecided_weight))[0] for i in ids}
    nonvoters = [i for i in ids if not votes[i].is_voter]
    edges: dict[tuple[NodeId, NodeId], int] = {}
    for _ in range(rng.randint(0, max_edge_units)):
        if nonvoters and rng.random() > voter_edge_prob:
            a = rng.choice(nonvoters)
        else:
            a = rng.choice(ids)
        b = rng.choice(ids)
        if a != b:
            edges[(a, b)] = edges.get((a, b), 0) + 1
    return VotingNetwork(votes, edges)


def random_group(rng: random.Random, net: VotingNetwork, max_size: int = 5) -> Group:
    nodes = sorted(net.nodes)
    size = rng.randint(1, min(max_size, len(nodes)))
    return frozenset(rng.sample(nodes, size))


def random_instance(rng: random.Random, **kw) -> tuple[VotingNetwork, Group]:
    net = random_network(rng, **kw)
    return net, random_group(rng, net)


def planted_trust_propagation(rng: random.Random, **kw) -> tuple[VotingNetwork, NodeId, NodeId]:
    """A random network with nonvoters ``u, v`` on which trust propagation applies."""
    while True:
        net = random_network(rng, **kw)
        nv = sorted(net.nonvoters())
        pairs = [
            (u, v) for u in nv for v in nv
            if u != v and net.successors(v) and u not in net.successors(v)
        ]
        if pairs:
            u, v = rng.choice(pairs)
            return net.with_changes(set_edges={(u, v): net.out_degree(v)}), u, v


def planted_inclusion(
    rng: random.Random, max_influence: int = 3, **kw
) -> tuple[VotingNetwork, Group, NodeId]:
    """A network and group with a nonvoter ``u`` in scope for proportional inclusiveness.

    ``u`` points only at voters or nonvoter sinks, and only group members
    point at ``u`` among the nonvoters.
    """
    while True:
        net = random_network(rng, **kw)
        nv = sorted(net.nonvoters())
        if not nv:
            continue
        u = rng.choice(nv)
        group = set(random_group(rng, net)) | {u}
        targets = [t for t in net.nodes if t != u and (net.is_voter(t) or net.is_sink(t))]
        if not targets:
            continue
        changes = {(u, b): 0 for b in net.successors(u)}
        for t in rng.sample(targets, rng.randint(1, min(3, len(targets)))):
            changes[(u, t)] = rng.randint(1, max_influence)
        for p in net.predecessors(u):
            if not net.is_voter(p) and p not in group:
                changes[(p, u)] = 0
        out = net.with_changes(set_edges=changes)
        if all(out.is_voter(t) or out.is_sink(t) for t in out.successors(u)):
            return out, frozenset(group), u


def random_acyclic_instance(
    rng: random.Random, max_group: int = 4, **kw
) -> tuple[VotingNetwork, Group]:
    """Random network whose nonvoter-to-nonvoter edges follow a random order (no nonvoter cycles)."""
    net = random_network(rng, **kw)
    nv = list(net.nonvoters())
    rng.shuffle(nv)
    rank = {x: i for i, x in enumerate(nv)}
    drop = {
        (a, b): 0 for a, b, _ in net.edges()
        if a in rank and b in rank and rank[a] >= rank[b]
    }
    net = net.with_changes(set_edges=drop)
    return net, random_group(rng, net, max_group)
