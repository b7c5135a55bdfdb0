"""Voting networks: a directed multigraph whose nodes carry +, - or undecided labels.

An edge ``(a, b)`` means that ``b`` influences ``a``.  Parallel edges are
stored as a single ``(a, b)`` key with a positive integer multiplicity.
Networks are immutable; every operation returns a new network.
"""

from __future__ import annotations

import enum
import json
from collections import deque
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import (
    DuplicateNodeId,
    EmptyGroup,
    InvalidSpec,
    SelfLoop,
    UnknownNode,
    ZeroMultiplicity,
)

NodeId = str
Group = frozenset  # frozenset[NodeId]


class Vote(enum.Enum):
    PLUS = "+"
    MINUS = "-"
    UNDECIDED = "0"

    @property
    def sign(self) -> int:
        return {"+": 1, "-": -1, "0": 0}[self.value]

    @property
    def is_voter(self) -> bool:
        return self is not Vote.UNDECIDED

    def flipped(self) -> "Vote":
        if self is Vote.PLUS:
            return Vote.MINUS
        if self is Vote.MINUS:
            return Vote.PLUS
        return self

    @classmethod
    def parse(cls, value: "Vote | str | None") -> "Vote":
        if isinstance(value, Vote):
            return value
        if value is None:
            return cls.UNDECIDED
        aliases = {"+": "+", "plus": "+", "-": "-", "−": "-", "minus": "-",
                   "0": "0", "": "0", "undecided": "0"}
        try:
            return cls(aliases[str(value).strip().lower()])
        except KeyError:
            raise ValueError(f"unknown vote label {value!r}") from None


class Recommendation(enum.IntEnum):
    MINUS = -1
    NEUTRAL = 0
    PLUS = 1

    @classmethod
    def of(cls, x) -> "Recommendation":
        """Sign of a number (int, Fraction, float) as a recommendation."""
        return cls((x > 0) - (x < 0))

    @property
    def symbol(self) -> str:
        return {1: "+", -1: "-", 0: "0"}[int(self)]

    def flipped(self) -> "Recommendation":
        return Recommendation(-int(self))

    def __str__(self) -> str:
        return self.symbol


class VotingNetwork:
    """Immutable voting network.

    Use :func:`build_network` for validated construction from user data.
    """

    __slots__ = ("_votes", "_edges", "_succ", "_pred", "_hash")

    def __init__(self, votes: Mapping[NodeId, Vote], edges: Mapping[tuple[NodeId, NodeId], int]):
        self._votes: dict[NodeId, Vote] = dict(votes)
        self._edges: dict[tuple[NodeId, NodeId], int] = {}
        self._succ: dict[NodeId, dict[NodeId, int]] = {n: {} for n in self._votes}
        self._pred: dict[NodeId, dict[NodeId, int]] = {n: {} for n in self._votes}
        for (a, b), m in edges.items():
            if a not in self._votes:
                raise UnknownNode(a)
            if b not in self._votes:
                raise UnknownNode(b)
            if a == b:
                raise SelfLoop(a)
            if m < 1:
                raise ZeroMultiplicity(f"edge ({a}, {b}) has multiplicity {m}")
            self._edges[(a, b)] = int(m)
            self._succ[a][b] = int(m)
            self._pred[b][a] = int(m)
        self._hash = None

    # -- queries -----------------------------------------------------------
    @property
    def nodes(self) -> tuple[NodeId, ...]:
        return tuple(self._votes)

    @property
    def votes(self) -> Mapping[NodeId, Vote]:
        return MappingProxyType(self._votes)

    @property
    def edge_map(self) -> Mapping[tuple[NodeId, NodeId], int]:
        return MappingProxyType(self._edges)

    def edges(self) -> Iterator[tuple[NodeId, NodeId, int]]:
        for (a, b), m in self._edges.items():
            yield a, b, m

    def vote(self, node: NodeId) -> Vote:
        try:
            return self._votes[node]
        except KeyError:
            raise UnknownNode(node) from None

    def is_voter(self, node: NodeId) -> bool:
        return self.vote(node).is_voter

    def voters(self) -> list[NodeId]:
        return [n for n, v in self._votes.items() if v.is_voter]

    def nonvoters(self) -> list[NodeId]:
        return [n for n, v in self._votes.items() if not v.is_voter]

    def multiplicity(self, a: NodeId, b: NodeId) -> int:
        return self._edges.get((a, b), 0)

    def successors(self, node: NodeId) -> Mapping[NodeId, int]:
        """Nodes influencing ``node``, with edge multiplicities."""
        try:
            return MappingProxyType(self._succ[node])
        except KeyError:
            raise UnknownNode(node) from None

    def predecessors(self, node: NodeId) -> Mapping[NodeId, int]:
        """Nodes influenced by ``node``, with edge multiplicities."""
        try:
            return MappingProxyType(self._pred[node])
        except KeyError:
            raise UnknownNode(node) from None

    def out_degree(self, node: NodeId) -> int:
        return sum(self.successors(node).values())

    def is_sink(self, node: NodeId) -> bool:
        """A nonvoter with no outgoing edges."""
        return not self.is_voter(node) and not self._succ[node]

    def total_edge_units(self) -> int:
        return sum(self._edges.values())

    def __contains__(self, node: object) -> bool:
        return node in self._votes

    def __len__(self) -> int:
        return len(self._votes)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VotingNetwork):
            return NotImplemented
        return self._votes == other._votes and self._edges == other._edges

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((frozenset(self._votes.items()), frozenset(self._edges.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"VotingNetwork({len(self._votes)} nodes, {self.total_edge_units()} edge units)"

    # -- derived networks --------------------------------------------------
    def with_changes(
        self,
        *,
        add_nodes: Mapping[NodeId, Vote] | None = None,
        remove_nodes: Iterable[NodeId] = (),
        set_edges: Mapping[tuple[NodeId, NodeId], int] | None = None,
    ) -> "VotingNetwork":
        """Return a modified copy.

        ``set_edges`` overwrites multiplicities; a multiplicity of 0 deletes
        the edge.  Edges touching removed nodes are dropped.
        """
        removed = set(remove_nodes)
        votes = {n: v for n, v in self._votes.items() if n not in removed}
        for n, v in (add_nodes or {}).items():
            if n in votes:
                raise DuplicateNodeId(n)
            votes[n] = v
        edges = {e: m for e, m in self._edges.items() if e[0] not in removed and e[1] not in removed}
        for e, m in (set_edges or {}).items():
            if m == 0:
                edges.pop(e, None)
            else:
                edges[e] = m
        return VotingNetwork(votes, edges)

    def induced(self, keep: Iterable[NodeId]) -> "VotingNetwork":
        keep = set(keep)
        return self.with_changes(remove_nodes=[n for n in self._votes if n not in keep])

    def relabeled(self, mapping: Mapping[NodeId, NodeId]) -> "VotingNetwork":
        """Rename nodes by a bijection (nodes missing from ``mapping`` keep their id)."""
        ren = {n: mapping.get(n, n) for n in self._votes}
        if len(set(ren.values())) != len(ren):
            raise DuplicateNodeId("relabeling is not injective")
        votes = {ren[n]: v for n, v in self._votes.items()}
        edges = {(ren[a], ren[b]): m for (a, b), m in self._edges.items()}
        return VotingNetwork(votes, edges)

    def swapped_labels(self) -> "VotingNetwork":
        """The same graph with V+ and V- exchanged."""
        return VotingNetwork({n: v.flipped() for n, v in self._votes.items()}, self._edges)


def build_network(
    nodes: Iterable[tuple[NodeId, Vote | str | None]],
    edges: Iterable[Sequence] = (),
) -> VotingNetwork:
    """Validated construction.

    ``edges`` holds ``(from, to)`` or ``(from, to, multiplicity)`` tuples;
    repeated declarations of the same pair add up.
    """
    votes: dict[NodeId, Vote] = {}
    for node_id, label in nodes:
        if not isinstance(node_id, str) or not node_id:
            raise ValueError(f"node ids must be non-empty strings, got {node_id!r}")
        if node_id in votes:
            raise DuplicateNodeId(node_id)
        votes[node_id] = Vote.parse(label)
    multiset: dict[tuple[NodeId, NodeId], int] = {}
    for edge in edges:
        if len(edge) == 2:
            a, b = edge
            m = 1
        else:
            a, b, m = edge
        for n in (a, b):
            if n not in votes:
                raise UnknownNode(n)
        if a == b:
            raise SelfLoop(a)
        if int(m) != m or m < 1:
            raise ZeroMultiplicity(f"edge ({a}, {b}) has multiplicity {m}")
        multiset[(a, b)] = multiset.get((a, b), 0) + int(m)
    return VotingNetwork(votes, multiset)


def as_group(net: VotingNetwork, members: Iterable[NodeId]) -> Group:
    members = frozenset(members)
    if not members:
        raise EmptyGroup("a group needs at least one member")
    for m in members:
        if m not in net:
            raise UnknownNode(m)
    return members


# -- reachability -----------------------------------------------------------

def reachable_from(net: VotingNetwork, start: Iterable[NodeId]) -> set[NodeId]:
    """Every node on a directed path from ``start``, ``start`` included."""
    seen = set()
    for s in start:
        if s not in net:
            raise UnknownNode(s)
        seen.add(s)
    queue = deque(seen)
    while queue:
        a = queue.popleft()
        for b in net.successors(a):
            if b not in seen:
                seen.add(b)
                queue.append(b)
    return seen


def restrict_to_reachable(net: VotingNetwork, group: Iterable[NodeId]) -> VotingNetwork:
    group = as_group(net, group)
    return net.induced(reachable_from(net, group))


def strip_voter_outedges(net: VotingNetwork) -> VotingNetwork:
    drop = {(a, b): 0 for a, b, _ in net.edges() if net.is_voter(a)}
    return net.with_changes(set_edges=drop) if drop else net


# -- star groups ------------------------------------------------------------

@dataclass(frozen=True)
class StarGroupSpec:
    n: int
    m: int
    inner_label: Vote = Vote.PLUS
    external_degrees: tuple[int, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "inner_label", Vote.parse(self.inner_label))
        object.__setattr__(self, "external_degrees", tuple(self.external_degrees))
        if self.n < 1:
            raise InvalidSpec(f"n must be >= 1, got {self.n}")
        if self.m < 0:
            raise InvalidSpec(f"m must be >= 0, got {self.m}")
        if not self.inner_label.is_voter:
            raise InvalidSpec("inner_label must be + or -")
        if len(self.external_degrees) != self.m:
            raise InvalidSpec(
                f"external_degrees has {len(self.external_degrees)} entries, expected m={self.m}"
            )
        if any(d < 0 for d in self.external_degrees):
            raise InvalidSpec("external degrees must be non-negative")


def generate_star_group(spec: StarGroupSpec) -> tuple[VotingNetwork, Group]:
    """Build a star group.

    Voters are named ``v_j``, nonvoters ``u_i`` and the private external
    voters of ``u_i`` are ``t_i_j``.
    """
    inner = spec.inner_label
    outer = inner.flipped()
    votes: dict[NodeId, Vote] = {}
    edges: dict[tuple[NodeId, NodeId], int] = {}
    voters = [f"v_{j}" for j in range(1, spec.n + 1)]
    for v in voters:
        votes[v] = inner
    spokes = []
    for i, degree in enumerate(spec.external_degrees, start=1):
        u = f"u_{i}"
        spokes.append(u)
        votes[u] = Vote.UNDECIDED
        for v in voters:
            edges[(u, v)] = 1
    for i, degree in enumerate(spec.external_degrees, start=1):
        for j in range(1, degree + 1):
            t = f"t_{i}_{j}"
            votes[t] = outer
            edges[(f"u_{i}", t)] = 1
    return VotingNetwork(votes, edges), frozenset(voters + spokes)


def star_group_shape(net: VotingNetwork, group: Iterable[NodeId]) -> StarGroupSpec | None:
    """Recover the star-group parameters of ``group``, or None if it is not one.

    Multiplicities are taken as given: ``|D^i|`` counts distinct external voters.
    """
    group = as_group(net, group)
    voters = sorted(c for c in group if net.is_voter(c))
    spokes = sorted(c for c in group if not net.is_voter(c))
    if not voters:
        return None
    labels = {net.vote(v) for v in voters}
    if len(labels) != 1:
        return None
    inner = labels.pop()
    outer = inner.flipped()
    seen_external: set[NodeId] = set()
    degrees = []
    for u in spokes:
        succ = net.successors(u)
        if any(v not in succ for v in voters):
            return None
        external = [t for t in succ if t not in group]
        if any(t in group for t in succ if t not in voters):
            return None
        if any(net.vote(t) is not outer for t in external):
            return None
        if seen_external.intersection(external):
            return None
        seen_external.update(external)
        degrees.append(len(external))
    return StarGroupSpec(len(voters), len(spokes), inner, tuple(degrees))


def is_star_group(net: VotingNetwork, group: Iterable[NodeId]) -> bool:
    return star_group_shape(net, group) is not None


# -- serialization ----------------------------------------------------------

def network_to_dict(net: VotingNetwork) -> dict:
    nodes = []
    for n, v in net.votes.items():
        entry = {"id": n}
        if v.is_voter:
            entry["vote"] = v.value
        nodes.append(entry)
    edges = [{"from": a, "to": b, "mult": m} for a, b, m in net.edges()]
    return {"nodes": nodes, "edges": edges}


def network_from_dict(data: Mapping) -> VotingNetwork:
    try:
        nodes = [(str(n["id"]), n.get("vote")) for n in data["nodes"]]
        edges = [(e["from"], e["to"], e.get("mult", 1)) for e in data.get("edges", [])]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed graph JSON: {exc}") from exc
    return build_network(nodes, edges)


def dumps(net: VotingNetwork) -> str:
    return json.dumps(network_to_dict(net), indent=2)


def loads(text: str) -> VotingNetwork:
    return network_from_dict(json.loads(text))


def to_dot(net: VotingNetwork, name: str = "G", group: Iterable[NodeId] = ()) -> str:
    """Graphviz rendering: voters labelled +/-, nonvoters unlabelled, multiplicities on edges."""
    group = set(group)

    def q(s: str) -> str:
        return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'

    lines = [f"digraph {q(name)} {{"]
    for n, v in net.votes.items():
        attrs = [f'xlabel={q(n)}', f'label={q(v.value if v.is_voter else "")}']
        if group and n in group:
            attrs.append("style=bold")
        lines.append(f"  {q(n)} [{', '.join(attrs)}];")
    for a, b, m in net.edges():
        lines.append(f"  {q(a)} -> {q(b)} [label={q(str(m))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
