from fractions import Fraction

import networkx as nx
import pytest
import sympy
from hypothesis import strategies as st

from grouprec.network import Vote, VotingNetwork, build_network


@st.composite
def networks(draw, max_nodes=8, max_edges=16, min_nodes=1):
    n = draw(st.integers(min_nodes, max_nodes))
    ids = [f"n{i}" for i in range(n)]
    labels = draw(st.lists(st.sampled_from(list(Vote)), min_size=n, max_size=n))
    edges = {}
    if n >= 2:
        pairs = st.tuples(st.sampled_from(ids), st.sampled_from(ids)).filter(lambda p: p[0] != p[1])
        for a, b in draw(st.lists(pairs, max_size=max_edges)):
            edges[(a, b)] = edges.get((a, b), 0) + 1
    return VotingNetwork(dict(zip(ids, labels)), edges)


@st.composite
def network_and_group(draw, **kw):
    net = draw(networks(**kw))
    members = draw(st.sets(st.sampled_from(sorted(net.nodes)), min_size=1, max_size=min(4, len(net))))
    return net, frozenset(members)


def sympy_walk(net: VotingNetwork) -> dict:
    """Absorbing-chain oracle: solve (I - Q) x = R s with sympy over the absorbable nonvoters."""
    g = nx.DiGraph()
    g.add_nodes_from(net.nodes)
    g.add_edges_from((a, b) for a, b, _ in net.edges())
    voters = net.voters()
    absorbable = set()
    for v in voters:
        absorbable |= nx.ancestors(g, v)
    transient = sorted(n for n in absorbable if not net.is_voter(n))
    out = {n: Fraction(net.vote(n).sign) for n in net.nodes}
    if not transient:
        return out
    pos = {n: i for i, n in enumerate(transient)}
    size = len(transient)
    a = sympy.zeros(size, size)
    b = sympy.zeros(size, 1)
    for n in transient:
        i = pos[n]
        d = net.out_degree(n)
        a[i, i] += 1
        for t, m in net.successors(n).items():
            p = sympy.Rational(m, d)
            if t in pos:
                a[i, pos[t]] -= p
            else:
                b[i] += p * net.vote(t).sign
    x = a.LUsolve(b)
    for n in transient:
        q = sympy.Rational(x[pos[n]])
        out[n] = Fraction(int(q.p), int(q.q))
    return out


@pytest.fixture
def mixed():
    """u -> a(+) x2, u -> b(-) x1."""
    return build_network([("u", None), ("a", "+"), ("b", "-")], [("u", "a", 2), ("u", "b", 1)])


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(test_acceptance.RESULTS[n])
