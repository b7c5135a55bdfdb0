import random
from fractions import Fraction

import pytest

from grouprec.axioms import (
    Rule,
    Verdict,
    check_all,
    check_anonymity,
    check_centrifugal,
    check_centripetal,
    check_iis,
    check_internal_consistency,
    check_positive_response,
    check_proportional_inclusiveness,
    check_scale_invariance,
    check_trust_propagation,
    inclusion_candidates,
    trust_propagation_pairs,
)
from grouprec.errors import GroupTooLarge, SpecOutOfScope
from grouprec.generate import random_instance
from grouprec.network import Recommendation, StarGroupSpec, Vote, build_network
from grouprec.systems import SYSTEMS, always, random_walk, random_walk_weighted

from . import fixtures

PLUS, MINUS = Vote.PLUS, Vote.MINUS


class TestAnonymity:
    def test_group_walk_passes(self, mixed):
        rep = check_anonymity(random_walk, mixed, {"u", "b"}, trials=10, seed=1)
        assert rep.verdict is Verdict.PASS and rep.trials == 11

    def test_singleton_plus_fails(self):
        net, group = fixtures.singleton_minus()
        rep = check_anonymity(SYSTEMS["singleton-plus"], net, group)
        assert rep.violated
        assert rep.counterexample.rule is Rule.NEGATED
        assert rep.counterexample.reproduces(SYSTEMS["singleton-plus"])

    def test_identity_only(self):
        net = build_network([("a", "+")])
        assert check_anonymity(random_walk, net, {"a"}, trials=3).verdict is Verdict.PASS


class TestPositiveResponse:
    def test_tie_broken_by_new_voter(self):
        net = build_network([("a", "+"), ("b", "-")])
        rep = check_positive_response(random_walk, net, {"a", "b"})
        assert rep.verdict is Verdict.PASS
        assert check_positive_response(always(Recommendation.NEUTRAL), net, {"a", "b"}).violated

    def test_pair_on_nonvoter(self, mixed):
        assert check_positive_response(random_walk, mixed, {"u"}).verdict is Verdict.PASS

    def test_minus_gates_first_clauses(self):
        net = build_network([("b", "-"), ("u", None)], [("u", "b")])
        rep = check_positive_response(random_walk, net, {"b", "u"})
        assert rep.verdict is Verdict.PASS
        assert "not applicable" in rep.note
        assert rep.trials == 2  # one isolated pair per member

    def test_dependent_member_counterexample(self):
        # n1 listens to n7 (another member) and to a - voter; the pair on n7 moves n1 to zero
        net = build_network([("n1", None), ("n7", None), ("a", "+"), ("b", "-")],
                            [("n1", "n7"), ("n1", "b"), ("n7", "a")])
        rep = check_positive_response(random_walk, net, {"n1", "n7"})
        assert rep.violated
        assert "isolated pair" in rep.counterexample.transformation
        assert rep.counterexample.reproduces(random_walk)


class TestIIS:
    def test_unreachable_and_voter_edges(self):
        # w and z stay reachable through the voter edge; q is unrelated
        net = build_network([("u", None), ("a", "+"), ("z", "-"), ("w", None), ("q", "-")],
                            [("u", "a"), ("a", "w"), ("w", "z")])
        rep = check_iis(random_walk, net, {"u"})
        assert rep.verdict is Verdict.PASS and rep.trials == 2

    def test_vacuous(self, mixed):
        rep = check_iis(random_walk, mixed, {"u"})
        assert rep.verdict is Verdict.PASS and rep.trials == 0

    def test_violation_detected(self):
        def counts_nodes(net, group):
            return Recommendation.of(len(net) - 2)

        net = build_network([("a", "+"), ("z", "-")])
        assert check_iis(counts_nodes, net, {"a"}).violated


class TestStarAxioms:
    def test_centripetal_group_walk_tie(self):
        # non-voter values (2-d)/(2+d) are -1/5, -1/5, 0: the sign sum is 0
        rep = check_centripetal(random_walk, Fraction(3, 2), [StarGroupSpec(2, 3, PLUS, (3, 3, 2))])
        assert rep.violated and rep.counterexample.actual is Recommendation.NEUTRAL

    def test_centripetal_voters_only(self):
        assert check_centripetal(random_walk, 5, [StarGroupSpec(1, 0, PLUS, ())]).verdict is Verdict.PASS

    def test_centripetal_lone_spoke(self):
        # alpha > 3/2 with n=2 allows |D^i| = 3: a lone spoke with r = -1/5 still loses to two voters
        rep = check_centripetal(random_walk, Fraction(8, 5), [StarGroupSpec(2, 1, PLUS, (3,))])
        assert rep.verdict is Verdict.PASS

    def test_out_of_scope(self):
        spec = StarGroupSpec(1, 1, PLUS, (5,))
        assert check_centripetal(random_walk, 2, [spec]).verdict is Verdict.NOT_APPLICABLE
        with pytest.raises(SpecOutOfScope):
            check_centripetal(random_walk, 2, [spec], strict=True)

    def test_centrifugal_group_walk_fails(self):
        rep = check_centrifugal(random_walk, 3, 1, [StarGroupSpec(1, 1, PLUS, (3,))])
        assert rep.violated and rep.counterexample.expected is Recommendation.MINUS

    def test_centrifugal_two_heavy_spokes(self):
        rep = check_centrifugal(random_walk, 6, Fraction(1, 2), [StarGroupSpec(1, 2, PLUS, (6, 6))])
        assert rep.verdict is Verdict.PASS

    def test_centrifugal_ratio_too_small(self):
        spec = StarGroupSpec(11, 1, PLUS, (100,))
        rep = check_centrifugal(random_walk, 1, Fraction(1, 10), [spec])
        assert rep.verdict is Verdict.NOT_APPLICABLE
        with pytest.raises(SpecOutOfScope):
            check_centrifugal(random_walk, 1, Fraction(1, 10), [spec], strict=True)


class TestInternalConsistency:
    def test_singletons_plus(self):
        net = build_network([("a", "+"), ("b", "+"), ("c", "+")])
        assert check_internal_consistency(random_walk, net, {"a", "b", "c"}).verdict is Verdict.PASS
        rep = check_internal_consistency(always(Recommendation.MINUS), net, {"a", "b"})
        assert rep.verdict is Verdict.PASS  # every part is - and so is the whole

    def test_pair_flip(self):
        net = fixtures.paired_cells()
        assert fixtures.pair_flip(net, fixtures.PAIR_A) is Recommendation.PLUS
        assert fixtures.pair_flip(net, fixtures.PAIR_B) is Recommendation.PLUS
        rep = check_internal_consistency(fixtures.pair_flip, net, fixtures.PAIR_UNION)
        assert rep.violated
        assert rep.counterexample.expected is Recommendation.PLUS
        assert rep.counterexample.actual is Recommendation.MINUS
        assert rep.counterexample.reproduces(fixtures.pair_flip)
        assert check_internal_consistency(random_walk, net, fixtures.PAIR_UNION).verdict is Verdict.PASS

    def test_no_unanimous_partition(self):
        net = build_network([("a", "+"), ("b", "-")])
        rep = check_internal_consistency(random_walk, net, {"a", "b"})
        assert rep.verdict is Verdict.PASS and rep.note == "no unanimous partition"

    def test_limit(self):
        net = build_network([(f"x{i}", "+") for i in range(4)])
        with pytest.raises(GroupTooLarge):
            check_internal_consistency(random_walk, net, net.nodes, max_group=3)


class TestRewriteAxioms:
    def test_trust_propagation(self):
        net, group = fixtures.two_hop_chain()
        assert trust_propagation_pairs(net) == [("u", "v")]
        assert check_trust_propagation(random_walk, net, group).verdict is Verdict.PASS
        rep = check_trust_propagation(SYSTEMS["neighbor-count"], net, group)
        assert rep.violated and rep.counterexample.reproduces(SYSTEMS["neighbor-count"])

    def test_trust_propagation_vacuous(self, mixed):
        rep = check_trust_propagation(random_walk, mixed, {"u"})
        assert rep.verdict is Verdict.PASS and rep.trials == 0

    def test_scale(self):
        net, group = fixtures.biased_pair()
        assert check_scale_invariance(random_walk, net, group, k=3).verdict is Verdict.PASS
        rep = check_scale_invariance(SYSTEMS["degree-biased"], net, group)
        assert rep.violated

    def test_scale_vacuous(self):
        net = build_network([("a", "+"), ("b", "-")])
        assert check_scale_invariance(random_walk, net, {"a"}).trials == 0

    def test_inclusion(self):
        net, group = fixtures.dominated_member()
        assert inclusion_candidates(net, group) == ["u"]
        assert check_proportional_inclusiveness(random_walk, net, group).verdict is Verdict.PASS
        rep = check_proportional_inclusiveness(SYSTEMS["inside-majority"], net, group)
        assert rep.violated and rep.counterexample.reproduces(SYSTEMS["inside-majority"])

    def test_inclusion_minimal_counterexample(self, mixed):
        # u -> a(+) x2, u -> b(-): sign sum with b is 0, after inclusion the - copies win
        rep = check_proportional_inclusiveness(random_walk, mixed, {"u", "b"})
        assert rep.violated
        assert (rep.counterexample.expected, rep.counterexample.actual) == (
            Recommendation.NEUTRAL, Recommendation.MINUS)
        assert check_proportional_inclusiveness(random_walk_weighted, mixed, {"u", "b"}).verdict is Verdict.PASS

    def test_inclusion_out_of_scope(self):
        net = build_network([("u", None), ("w", None), ("a", "+")], [("u", "w"), ("w", "a")])
        assert inclusion_candidates(net, {"u"}) == []
        assert check_proportional_inclusiveness(random_walk, net, {"u"}).trials == 0


class TestCheckAll:
    def test_report_shapes(self, mixed):
        reports = check_all(random_walk, mixed, {"u", "b"})
        assert [r.axiom for r in reports] == list(range(1, 10))
        assert reports[3].verdict is Verdict.NOT_APPLICABLE
        d = reports[8].to_dict()
        assert d["name"] == "proportional-inclusiveness" and "counterexample" in d

    def test_counterexamples_replay(self):
        rng = random.Random(4)
        replayed = 0
        for _ in range(150):
            net, group = random_instance(rng, max_nodes=8, max_edge_units=14)
            for name, rec in SYSTEMS.items():
                for rep in check_all(rec, net, group, trials=3, seed=0, max_group=5):
                    if rep.counterexample is not None:
                        assert rep.counterexample.reproduces(rec), (name, rep.axiom)
                        replayed += 1
        assert replayed > 0
