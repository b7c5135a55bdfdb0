"""Random-walk values and the group random-walk recommendation.

For a nonvoter ``a`` with a route to some voter, ``r_a`` is the
multiplicity-weighted average of the values of the nodes influencing it.
Voters are fixed at +1/-1 and nonvoters with no route to a voter at 0.
Everything is computed with :class:`fractions.Fraction`.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping

import networkx as nx
import numpy as np

from .errors import UnknownNode
from .linalg import solve_exact
from .network import NodeId, Recommendation, VotingNetwork, as_group

EdgeWeight = Callable[[VotingNetwork, NodeId, NodeId, int], "int | Fraction"]


def multiplicity_weight(net: VotingNetwork, a: NodeId, b: NodeId, m: int) -> int:
    return m


class WalkSolution(Mapping):
    """Read-only mapping NodeId -> Fraction."""

    def __init__(self, values: Mapping[NodeId, Fraction]):
        self._values = dict(values)

    def __getitem__(self, node: NodeId) -> Fraction:
        try:
            return self._values[node]
        except KeyError:
            raise UnknownNode(node) from None

    def __iter__(self) -> Iterator[NodeId]:
        return iter(self._values)

    def __len__(self) -> int:
        return len(self._values)

    def __repr__(self) -> str:
        inner = ", ".join(f"{k}={v}" for k, v in self._values.items())
        return f"WalkSolution({inner})"


def nodes_reaching_voters(net: VotingNetwork) -> set[NodeId]:
    """Voters plus every nonvoter with a directed path to a voter."""
    found = set(net.voters())
    queue = deque(found)
    while queue:
        b = queue.popleft()
        for a in net.predecessors(b):
            if a not in found and not net.is_voter(a):
                found.add(a)
                queue.append(a)
    return found


def solve_weighted(net: VotingNetwork, weight: EdgeWeight = multiplicity_weight) -> WalkSolution:
    """Walk values where edge ``(a, b)`` is followed with probability proportional to ``weight``.

    The system is split into strongly connected components of the
    unresolved nonvoters and solved component by component, sinks first.
    """
    values: dict[NodeId, Fraction] = {}
    live = nodes_reaching_voters(net)
    for n, v in net.votes.items():
        if v.is_voter:
            values[n] = Fraction(v.sign)
        elif n not in live:
            values[n] = Fraction(0)
    unknown = sorted(n for n in net.nodes if n not in values)
    if not unknown:
        return WalkSolution({n: values[n] for n in net.nodes})

    w = {a: {b: Fraction(weight(net, a, b, m)) for b, m in net.successors(a).items()} for a in unknown}
    g = nx.DiGraph()
    g.add_nodes_from(unknown)
    g.add_edges_from((a, b) for a in unknown for b in w[a] if b not in values)
    cond = nx.condensation(g)
    for comp_id in reversed(list(nx.topological_sort(cond))):
        comp = sorted(cond.nodes[comp_id]["members"])
        if len(comp) == 1:
            a = comp[0]
            total = sum(w[a].values())
            values[a] = sum(wt * values[b] for b, wt in w[a].items()) / total
            continue
        index = {a: i for i, a in enumerate(comp)}
        matrix = []
        rhs = []
        for a in comp:
            row = [Fraction(0)] * len(comp)
            row[index[a]] = sum(w[a].values())
            known = Fraction(0)
            for b, wt in w[a].items():
                if b in index:
                    row[index[b]] -= wt
                else:
                    known += wt * values[b]
            matrix.append(row)
            rhs.append(known)
        for a, x in zip(comp, solve_exact(matrix, rhs)):
            values[a] = x
    return WalkSolution({n: values[n] for n in net.nodes})


def solve_walk(net: VotingNetwork) -> WalkSolution:
    return solve_weighted(net)


def residuals(net: VotingNetwork, solution: Mapping[NodeId, Fraction]) -> dict[NodeId, Fraction]:
    """Left minus right side of each defining equation; all zero for a valid solution."""
    live = nodes_reaching_voters(net)
    out = {}
    for n, v in net.votes.items():
        if v.is_voter:
            out[n] = solution[n] - v.sign
        elif n not in live:
            out[n] = solution[n]
        else:
            succ = net.successors(n)
            out[n] = solution[n] * sum(succ.values()) - sum(m * solution[b] for b, m in succ.items())
    return out


def individual_recommend(net: VotingNetwork, node: NodeId, solution: Mapping | None = None) -> Recommendation:
    if node not in net:
        raise UnknownNode(node)
    solution = solution if solution is not None else solve_walk(net)
    return Recommendation.of(solution[node])


def group_recommend(net: VotingNetwork, group: Iterable[NodeId], solution: Mapping | None = None) -> Recommendation:
    """Sign of the sum of the members' individual recommendation signs."""
    group = as_group(net, group)
    solution = solution if solution is not None else solve_walk(net)
    return Recommendation.of(sum(Recommendation.of(solution[c]) for c in group))


def weighted_group_recommend(
    net: VotingNetwork, group: Iterable[NodeId], solution: Mapping | None = None
) -> Recommendation:
    """Sign of the sum of the members' walk values (not their signs)."""
    group = as_group(net, group)
    solution = solution if solution is not None else solve_walk(net)
    return Recommendation.of(sum(solution[c] for c in group))


@dataclass(frozen=True)
class WalkEstimate:
    value: float
    stderr: float
    trials: int
    plus: int
    minus: int
    unabsorbed: int
    capped: int


def _can_absorb(net: VotingNetwork) -> set[NodeId]:
    g = nx.DiGraph()
    g.add_nodes_from(net.nodes)
    g.add_edges_from((a, b) for a, b, _ in net.edges())
    out = set()
    for v in net.voters():
        out.add(v)
        out.update(nx.ancestors(g, v))
    return out


def monte_carlo_walk(
    net: VotingNetwork,
    node: NodeId,
    trials: int,
    seed: int,
    max_steps: int = 10_000,
    prune_traps: bool = True,
) -> WalkEstimate:
    """Estimate P(absorbed at +) - P(absorbed at -) by simulation.

    Walks are independent; each step follows an outgoing edge with probability
    proportional to its multiplicity.  A walk stops at a voter, at a nonvoter
    with no outgoing edges, or after ``max_steps`` steps (scored 0).  With
    ``prune_traps`` a walk also stops, scored 0, as soon as it enters a region
    from which no voter can be reached; such a walk could only ever hit the cap.

    The walkers are propagated as occupation counts with multinomial splits,
    which has the same distribution as moving them one by one.
    """
    if node not in net:
        raise UnknownNode(node)
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    order = list(net.nodes)
    idx = {n: i for i, n in enumerate(order)}
    targets: dict[int, np.ndarray] = {}
    probs: dict[int, np.ndarray] = {}
    for n in order:
        succ = net.successors(n)
        if not net.is_voter(n) and succ:
            keys = sorted(succ)
            mult = np.array([succ[k] for k in keys], dtype=float)
            targets[idx[n]] = np.array([idx[k] for k in keys])
            probs[idx[n]] = mult / mult.sum()
    sign = np.array([net.vote(n).sign for n in order])
    trapped = np.zeros(len(order), dtype=bool)
    if prune_traps:
        absorbable = _can_absorb(net)
        trapped = np.array([n not in absorbable for n in order])

    counts = np.zeros(len(order), dtype=np.int64)
    counts[idx[node]] = trials
    plus = minus = halted = 0
    steps = 0
    while True:
        voters_here = sign != 0
        plus += int(counts[voters_here & (sign > 0)].sum())
        minus += int(counts[voters_here & (sign < 0)].sum())
        stopped = voters_here | trapped | np.array([i not in targets for i in range(len(order))])
        halted += int(counts[stopped & ~voters_here].sum())
        counts[stopped] = 0
        if not counts.any():
            capped = 0
            break
        if steps >= max_steps:
            capped = int(counts.sum())
            break
        nxt = np.zeros_like(counts)
        for i in np.flatnonzero(counts):
            nxt[targets[i]] += rng.multinomial(counts[i], probs[i])
        counts = nxt
        steps += 1
    p_plus, p_minus = plus / trials, minus / trials
    value = p_plus - p_minus
    var = p_plus + p_minus - value * value
    return WalkEstimate(
        value=value,
        stderr=float(np.sqrt(max(var, 0.0) / trials)),
        trials=trials,
        plus=plus,
        minus=minus,
        unabsorbed=halted,
        capped=capped,
    )
