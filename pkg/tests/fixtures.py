"""Hand-built instances shared by the unit and acceptance suites."""

from grouprec.network import Recommendation, build_network
from grouprec.systems import random_walk


def singleton_minus():
    return build_network([("b", "-")]), frozenset({"b"})


def two_hop_chain():
    net = build_network([("u", None), ("v", None), ("a", "+")], [("u", "v"), ("v", "a")])
    return net, frozenset({"u"})


def biased_pair():
    # u -> a(+) x2, u -> y, y -> b(-)
    net = build_network([("u", None), ("a", "+"), ("y", None), ("b", "-")],
                        [("u", "a", 2), ("u", "y"), ("y", "b")])
    return net, frozenset({"u"})


def dominated_member():
    # group {a(+), u}; u listens only to an external - voter
    net = build_network([("a", "+"), ("u", None), ("b", "-")], [("u", "b")])
    return net, frozenset({"a", "u"})


def paired_cells():
    """Three + voters, three nonvoters and one - voter m.

    Each u_i listens to p_i; u1 and u2 also listen to m.
    """
    nodes = [(f"p{i}", "+") for i in (1, 2, 3)] + [(f"u{i}", None) for i in (1, 2, 3)] + [("m", "-")]
    edges = [(f"u{i}", f"p{i}", 1) for i in (1, 2, 3)] + [("u1", "m", 1), ("u2", "m", 1)]
    return build_network(nodes, edges)


PAIR_A = frozenset({"p1", "u1"})
PAIR_B = frozenset({"p3", "u3"})
PAIR_UNION = PAIR_A | PAIR_B


def pair_flip(net, group):
    """+ on the pair touching m and on the pair that does not, - on their union."""
    group = frozenset(group)
    if group in (PAIR_A, PAIR_B):
        return Recommendation.PLUS
    if group == PAIR_UNION:
        return Recommendation.MINUS
    return random_walk(net, group)
