"""Executable checkers for the nine group-recommendation axioms.

Each checker evaluates a recommender on an instance and on transformed
variants of it, and returns an :class:`AxiomReport`.  ``Pass`` means no
violation was found among the variants examined (``trials`` of them); a
``Violated`` report carries a counterexample that :meth:`Counterexample.replay`
re-evaluates from scratch.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from more_itertools import set_partitions

from .errors import GroupTooLarge, SpecOutOfScope
from .network import (
    Group,
    NodeId,
    Recommendation,
    StarGroupSpec,
    Vote,
    VotingNetwork,
    as_group,
    generate_star_group,
    network_to_dict,
    reachable_from,
)
from .systems import Recommender
from .transforms import include_influencers, scale_edges, trust_propagate

AXIOM_NAMES = {
    1: "anonymity",
    2: "positive-response",
    3: "iis",
    4: "alpha-centripetal",
    5: "beta-r-centrifugal",
    6: "internal-consistency",
    7: "trust-propagation",
    8: "scale-invariance",
    9: "proportional-inclusiveness",
}


class Verdict(str, enum.Enum):
    PASS = "Pass"
    VIOLATED = "Violated"
    NOT_APPLICABLE = "NotApplicable"


class Rule(str, enum.Enum):
    """How the expected value of a counterexample is derived on replay."""

    SAME = "same"  # transformed must equal original
    NEGATED = "negated"  # transformed must equal minus original
    FORCED = "forced"  # transformed must equal a fixed value
    NOT_MINUS = "not-minus"  # transformed must not be Minus


@dataclass(frozen=True)
class Counterexample:
    network: VotingNetwork
    group: Group
    transformed_network: VotingNetwork
    transformed_group: Group
    rule: Rule
    expected: Recommendation
    actual: Recommendation
    transformation: str

    def replay(self, rec: Recommender) -> tuple[Recommendation, Recommendation]:
        """Recompute ``(expected, actual)``; a genuine counterexample still disagrees."""
        actual = rec(self.transformed_network, self.transformed_group)
        if self.rule is Rule.FORCED:
            expected = self.expected
        else:
            base = rec(self.network, self.group)
            expected = base.flipped() if self.rule is Rule.NEGATED else base
        return expected, actual

    def holds(self, expected: Recommendation, actual: Recommendation) -> bool:
        if self.rule is Rule.NOT_MINUS:
            return actual is not Recommendation.MINUS
        return expected == actual

    def reproduces(self, rec: Recommender) -> bool:
        return not self.holds(*self.replay(rec))

    def to_dict(self) -> dict:
        return {
            "transformation": self.transformation,
            "rule": self.rule.value,
            "expected": self.expected.symbol,
            "actual": self.actual.symbol,
            "graph": network_to_dict(self.network),
            "group": sorted(self.group),
            "transformed_graph": network_to_dict(self.transformed_network),
            "transformed_group": sorted(self.transformed_group),
        }


@dataclass(frozen=True)
class AxiomReport:
    axiom: int
    verdict: Verdict
    trials: int
    counterexample: Optional[Counterexample] = None
    note: str = ""

    @property
    def name(self) -> str:
        return AXIOM_NAMES[self.axiom]

    @property
    def violated(self) -> bool:
        return self.verdict is Verdict.VIOLATED

    def to_dict(self) -> dict:
        out = {"axiom": self.axiom, "name": self.name, "verdict": self.verdict.value, "trials": self.trials}
        if self.note:
            out["note"] = self.note
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample.to_dict()
        return out


class _Collector:
    """Counts comparisons and keeps the first failing one."""

    def __init__(self, rec: Recommender, axiom: int):
        self.rec = rec
        self.axiom = axiom
        self.trials = 0
        self.first: Optional[Counterexample] = None

    def compare(self, net, group, new_net, new_group, rule, expected, what):
        self.trials += 1
        actual = self.rec(new_net, new_group)
        if rule is Rule.NOT_MINUS:
            ok = actual is not Recommendation.MINUS
        else:
            ok = actual == expected
        if not ok and self.first is None:
            self.first = Counterexample(net, frozenset(group), new_net, frozenset(new_group),
                                        rule, expected, actual, what)
        return ok

    def report(self, note: str = "", empty: Verdict = Verdict.PASS) -> AxiomReport:
        if self.first is not None:
            verdict = Verdict.VIOLATED
        elif self.trials == 0:
            verdict = empty
        else:
            verdict = Verdict.PASS
        return AxiomReport(self.axiom, verdict, self.trials, self.first, note)


def fresh_id(net: VotingNetwork, base: str, taken: Iterable[str] = ()) -> str:
    taken = set(taken)
    name, i = base, 0
    while name in net or name in taken:
        i += 1
        name = f"{base}_{i}"
    return name


# -- axiom 1 --------------------------------------------------------------

def check_anonymity(
    rec: Recommender, net: VotingNetwork, group: Iterable[NodeId], trials: int = 20, seed: int = 0
) -> AxiomReport:
    group = as_group(net, group)
    col = _Collector(rec, 1)
    base = rec(net, group)
    rng = random.Random(seed)
    nodes = sorted(net.nodes)
    for _ in range(trials):
        image = nodes[:]
        rng.shuffle(image)
        pi = dict(zip(nodes, image))
        col.compare(net, group, net.relabeled(pi), frozenset(pi[c] for c in group),
                    Rule.SAME, base, f"permute nodes {pi}")
    col.compare(net, group, net.swapped_labels(), group, Rule.NEGATED, base.flipped(), "swap + and - labels")
    return col.report()


# -- axiom 2 --------------------------------------------------------------

def check_positive_response(rec: Recommender, net: VotingNetwork, group: Iterable[NodeId]) -> AxiomReport:
    """All three clauses.

    The edge clause requires a + recommendation to stay +, and a neutral one
    not to turn -.  Joining the group must turn + or 0 into +.
    """
    group = as_group(net, group)
    col = _Collector(rec, 2)
    base = rec(net, group)
    notes = []
    if base is Recommendation.MINUS:
        notes.append("clauses (i)-(ii) not applicable: recommendation is -")
    else:
        eligible = [
            a for a in sorted(net.voters())
            if net.vote(a) is Vote.PLUS and a not in group
            and not any(a in net.successors(c) for c in group)
        ]
        fresh = fresh_id(net, "plus_new")
        with_fresh = net.with_changes(add_nodes={fresh: Vote.PLUS})
        candidates = [(net, a) for a in eligible] + [(with_fresh, fresh)]
        for host, a in candidates:
            col.compare(net, group, host, group | {a}, Rule.FORCED, Recommendation.PLUS,
                        f"add + voter {a} to the group")
        edge_rule = Rule.FORCED if base is Recommendation.PLUS else Rule.NOT_MINUS
        for host, a in candidates:
            for c in sorted(group):
                new_net = host.with_changes(set_edges={(c, a): 1})
                col.compare(net, group, new_net, group, edge_rule, Recommendation.PLUS,
                            f"add edge ({c}, {a}) to + voter {a}")
    a = fresh_id(net, "pair_plus")
    b = fresh_id(net, "pair_minus", {a})
    for c in sorted(group):
        new_net = net.with_changes(add_nodes={a: Vote.PLUS, b: Vote.MINUS},
                                   set_edges={(c, a): 1, (c, b): 1})
        col.compare(net, group, new_net, group, Rule.SAME, base,
                    f"attach isolated pair {a}(+), {b}(-) to {c}")
    return col.report("; ".join(notes))


# -- axiom 3 --------------------------------------------------------------

def check_iis(rec: Recommender, net: VotingNetwork, group: Iterable[NodeId]) -> AxiomReport:
    group = as_group(net, group)
    col = _Collector(rec, 3)
    base = rec(net, group)
    reach = reachable_from(net, group)
    for d in sorted(n for n in net.nodes if n not in reach):
        col.compare(net, group, net.with_changes(remove_nodes=[d]), group, Rule.SAME, base,
                    f"delete unreachable node {d}")
    for a, b, m in sorted(net.edges()):
        if net.is_voter(a):
            col.compare(net, group, net.with_changes(set_edges={(a, b): m - 1}), group, Rule.SAME, base,
                        f"delete one copy of voter out-edge ({a}, {b})")
    return col.report()


# -- axioms 4 and 5 ---------------------------------------------------------

def _in_scope(specs, premise, strict, label):
    kept = []
    for spec in specs:
        if premise(spec):
            kept.append(spec)
        elif strict:
            raise SpecOutOfScope(f"{spec} does not satisfy the {label} premise")
    return kept


def centripetal_premise(alpha, spec: StarGroupSpec) -> bool:
    return all(d <= Fraction(alpha) * spec.n for d in spec.external_degrees)


def centrifugal_premise(beta, r, spec: StarGroupSpec) -> bool:
    return (Fraction(spec.m, spec.n) >= Fraction(r)
            and all(d >= Fraction(beta) * spec.n for d in spec.external_degrees))


def check_centripetal(
    rec: Recommender, alpha, specs: Sequence[StarGroupSpec], strict: bool = False
) -> AxiomReport:
    """Star groups with every ``|D^i| <= alpha * n`` must get the inner label.

    Specs outside the premise are skipped, or rejected when ``strict``.
    """
    alpha = Fraction(alpha)
    if alpha < 1:
        raise ValueError("alpha must be >= 1")
    col = _Collector(rec, 4)
    kept = _in_scope(specs, lambda s: centripetal_premise(alpha, s), strict, "centripetal")
    for spec in kept:
        net, group = generate_star_group(spec)
        forced = Recommendation(spec.inner_label.sign)
        col.compare(net, group, net, group, Rule.FORCED, forced, f"star group {spec}")
    return col.report(f"{len(specs) - len(kept)} spec(s) outside the premise", empty=Verdict.NOT_APPLICABLE)


def check_centrifugal(
    rec: Recommender, beta, r, specs: Sequence[StarGroupSpec], strict: bool = False
) -> AxiomReport:
    """Star groups with ``m/n >= r`` and every ``|D^i| >= beta * n`` must get the outer label."""
    beta, r = Fraction(beta), Fraction(r)
    if beta < 1 or r <= 0:
        raise ValueError("need beta >= 1 and r > 0")
    col = _Collector(rec, 5)
    kept = _in_scope(specs, lambda s: centrifugal_premise(beta, r, s), strict, "centrifugal")
    for spec in kept:
        net, group = generate_star_group(spec)
        forced = Recommendation(-spec.inner_label.sign)
        col.compare(net, group, net, group, Rule.FORCED, forced, f"star group {spec}")
    return col.report(f"{len(specs) - len(kept)} spec(s) outside the premise", empty=Verdict.NOT_APPLICABLE)


# -- axiom 6 --------------------------------------------------------------

def check_internal_consistency(
    rec: Recommender, net: VotingNetwork, group: Iterable[NodeId], max_group: int = 8
) -> AxiomReport:
    """Partitions into at least two parts are enumerated.

    The single-part partition is left out: counting it would make the group's
    own value one of the competing unanimous verdicts.
    """
    group = as_group(net, group)
    if len(group) > max_group:
        raise GroupTooLarge(f"group has {len(group)} members, limit is {max_group}")
    memo: dict[frozenset, Recommendation] = {}

    def value(part) -> Recommendation:
        key = frozenset(part)
        if key not in memo:
            memo[key] = rec(net, key)
        return memo[key]

    unanimous: dict[Recommendation, list] = {}
    count = 0
    members = sorted(group)
    for k in range(2, len(members) + 1):
        for partition in set_partitions(members, k):
            count += 1
            vals = {value(p) for p in partition}
            if len(vals) == 1:
                (v,) = vals
                if v is not Recommendation.NEUTRAL:
                    unanimous.setdefault(v, partition)
    base = rec(net, group)
    if len(unanimous) != 1:
        note = "no unanimous partition" if not unanimous else "contradicting unanimous partitions"
        return AxiomReport(6, Verdict.PASS, count, None, note)
    (forced, partition), = unanimous.items()
    if base == forced:
        return AxiomReport(6, Verdict.PASS, count)
    cx = Counterexample(net, group, net, group, Rule.FORCED, forced, base,
                        f"every part of {[sorted(p) for p in partition]} is {forced.symbol}")
    return AxiomReport(6, Verdict.VIOLATED, count, cx)


# -- axioms 7-9 -------------------------------------------------------------

def trust_propagation_pairs(net: VotingNetwork) -> list[tuple[NodeId, NodeId]]:
    pairs = []
    for u, v, m in sorted(net.edges()):
        if net.is_voter(u) or net.is_voter(v):
            continue
        if m == net.out_degree(v) and u not in net.successors(v):
            pairs.append((u, v))
    return pairs


def check_trust_propagation(rec: Recommender, net: VotingNetwork, group: Iterable[NodeId]) -> AxiomReport:
    group = as_group(net, group)
    col = _Collector(rec, 7)
    base = rec(net, group)
    for u, v in trust_propagation_pairs(net):
        col.compare(net, group, trust_propagate(net, u, v), group, Rule.SAME, base,
                    f"trust propagation along ({u}, {v})")
    return col.report()


def check_scale_invariance(
    rec: Recommender, net: VotingNetwork, group: Iterable[NodeId], k: int = 1
) -> AxiomReport:
    if k < 1:
        raise ValueError("k must be >= 1")
    group = as_group(net, group)
    col = _Collector(rec, 8)
    base = rec(net, group)
    for u in sorted(net.nonvoters()):
        if net.successors(u):
            col.compare(net, group, scale_edges(net, u, k), group, Rule.SAME, base,
                        f"add {k} copies of each out-edge of {u}")
    return col.report()


def inclusion_candidates(net: VotingNetwork, group: Iterable[NodeId]) -> list[NodeId]:
    """Group nonvoters on which proportional inclusiveness is checked.

    The influencers must be voters or nonvoter sinks, and any nonvoter
    pointing at the candidate must be a group member or unreachable from the
    group (the rewrite deletes such edges outright).
    """
    group = as_group(net, group)
    reach = reachable_from(net, group)
    out = []
    for u in sorted(group):
        if net.is_voter(u) or not net.successors(u):
            continue
        if not all(net.is_voter(v) or net.is_sink(v) for v in net.successors(u)):
            continue
        if any(not net.is_voter(p) and p not in group and p in reach for p in net.predecessors(u)):
            continue
        out.append(u)
    return out


def check_proportional_inclusiveness(
    rec: Recommender, net: VotingNetwork, group: Iterable[NodeId]
) -> AxiomReport:
    group = as_group(net, group)
    col = _Collector(rec, 9)
    base = rec(net, group)
    for u in inclusion_candidates(net, group):
        res = include_influencers(net, group, u)
        col.compare(net, group, res.network, res.group, Rule.SAME, base,
                    f"proportional inclusiveness on {u} (s={res.s})")
    return col.report()


def check_all(
    rec: Recommender,
    net: VotingNetwork,
    group: Iterable[NodeId],
    *,
    trials: int = 20,
    seed: int = 0,
    alpha=None,
    beta=None,
    r=None,
    k: int = 1,
    max_group: int = 8,
    axioms: Iterable[int] = range(1, 10),
) -> list[AxiomReport]:
    """Run the requested checkers on one instance.

    Axioms 4 and 5 are judged on the instance itself when it is a star group,
    and need ``alpha`` or ``beta``/``r``; otherwise they are NotApplicable.
    """
    from .network import star_group_shape

    group = as_group(net, group)
    shape = star_group_shape(net, group)
    reports = []
    for ax in axioms:
        if ax == 1:
            reports.append(check_anonymity(rec, net, group, trials, seed))
        elif ax == 2:
            reports.append(check_positive_response(rec, net, group))
        elif ax == 3:
            reports.append(check_iis(rec, net, group))
        elif ax in (4, 5):
            reports.append(_check_star_instance(rec, net, group, shape, ax, alpha, beta, r))
        elif ax == 6:
            if len(group) > max_group:
                reports.append(AxiomReport(6, Verdict.NOT_APPLICABLE, 0, None,
                                           f"group larger than {max_group}"))
            else:
                reports.append(check_internal_consistency(rec, net, group, max_group))
        elif ax == 7:
            reports.append(check_trust_propagation(rec, net, group))
        elif ax == 8:
            reports.append(check_scale_invariance(rec, net, group, k))
        elif ax == 9:
            reports.append(check_proportional_inclusiveness(rec, net, group))
        else:
            raise ValueError(f"no axiom {ax}")
    return reports


def _check_star_instance(rec, net, group, shape, ax, alpha, beta, r) -> AxiomReport:
    if shape is None:
        return AxiomReport(ax, Verdict.NOT_APPLICABLE, 0, None, "group is not a star group")
    if ax == 4:
        if alpha is None:
            return AxiomReport(4, Verdict.NOT_APPLICABLE, 0, None, "no alpha given")
        applies = centripetal_premise(alpha, shape)
        forced = Recommendation(shape.inner_label.sign)
    else:
        if beta is None or r is None:
            return AxiomReport(5, Verdict.NOT_APPLICABLE, 0, None, "no beta/r given")
        applies = centrifugal_premise(beta, r, shape)
        forced = Recommendation(-shape.inner_label.sign)
    if not applies:
        return AxiomReport(ax, Verdict.NOT_APPLICABLE, 0, None, "premise does not hold")
    col = _Collector(rec, ax)
    col.compare(net, group, net, group, Rule.FORCED, forced, "star group instance")
    return col.report()
