import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quiverlab import polytree, potentials, quivers
from quiverlab.errors import (
    NotTwoAcyclic,
    TwoCycleAtVertex,
    UnknownArrow,
    UnknownVertex,
)
from conftest import random_polygon_tree_spec


def three_cycle_qp():
    q = quivers.validate(["1", "2", "3"], [("1", "2"), ("2", "3"), ("3", "1")])
    return potentials.qp_from_quiver(q, [(("1->2", "2->3", "3->1"), 1)])


class TestCyclicDerivative:
    def test_single_occurrence(self):
        qp = three_cycle_qp()
        d = potentials.cyclic_derivative(qp, "1->2")
        assert d == {("2->3", "3->1"): Fraction(1)}

    def test_length_two_cycle(self):
        # c * (a b) differentiates to c * b
        qp = potentials.make_qp(
            ["u", "v"], {"a": ("u", "v"), "b": ("v", "u")}, [(("a", "b"), Fraction(3))]
        )
        assert potentials.cyclic_derivative(qp, "a") == {("b",): Fraction(3)}

    def test_shared_arrow_two_cycles(self):
        # two glued triangles share one arrow; its derivative has two terms
        spec = polytree.PolygonTreeSpec((3, 3), ((0, 1),))
        qp = polytree.build_polygon_tree(spec)
        shared = "0.1->0.2"
        d = potentials.cyclic_derivative(qp, shared)
        assert len(d) == 2 and all(c == 1 for c in d.values())

    def test_unknown_arrow(self):
        with pytest.raises(UnknownArrow):
            potentials.cyclic_derivative(three_cycle_qp(), "zz")


class TestPremutate:
    def test_three_cycle_at_1(self):
        """Hand-executed Steps 1-3: the composite arrow and both potential
        terms, including the 2-cycle term later removed by reduction."""
        qp = three_cycle_qp()
        pre = potentials.premutate(qp, "1")
        arrows = {a: st_ for a, st_ in pre.arrows.items()}
        assert arrows["1->2*"] == ("2", "1")
        assert arrows["3->1*"] == ("1", "3")
        assert arrows["[1->2.3->1]"] == ("3", "2")
        assert arrows["2->3"] == ("2", "3")
        words = {potentials.min_rotation(w) for w in pre.potential}
        assert potentials.min_rotation(("[1->2.3->1]", "2->3")) in words
        assert potentials.min_rotation(("[1->2.3->1]", "1->2*", "3->1*")) in words

    def test_source_reversal_only(self):
        q = quivers.validate(["1", "2", "3"], [("1", "2"), ("1", "3")])
        qp = potentials.qp_from_quiver(q)
        pre = potentials.premutate(qp, "1")
        assert set(pre.arrows.values()) == {("2", "1"), ("3", "1")}
        assert pre.potential == {}

    def test_two_cycle_blocks(self):
        qp = potentials.make_qp(["u", "v"], {"a": ("u", "v"), "b": ("v", "u")})
        with pytest.raises(TwoCycleAtVertex):
            potentials.premutate(qp, "u")

    def test_unknown_vertex(self):
        with pytest.raises(UnknownVertex):
            potentials.premutate(three_cycle_qp(), "9")


class TestReduce:
    def test_three_cycle_reduction(self):
        pre = potentials.premutate(three_cycle_qp(), "1")
        red = potentials.reduce_qp(pre)
        assert set(red.arrows.values()) == {("2", "1"), ("1", "3")}
        assert red.potential == {}

    def test_fixed_point(self):
        qp = three_cycle_qp()
        red = potentials.reduce_qp(qp)
        assert red.potential == qp.potential and red.arrows == qp.arrows

    def test_never_adds_arrows_and_kills_two_cycles(self):
        pre = potentials.premutate(three_cycle_qp(), "1")
        red = potentials.reduce_qp(pre)
        assert len(red.arrows) <= len(pre.arrows)
        assert not any(len(w) == 2 for w in red.potential)


class TestQPMutate:
    def test_underlying_matches_fz(self):
        qp = three_cycle_qp()
        m = potentials.qp_mutate(qp, "1")
        fz = quivers.fz_mutate(qp.underlying_quiver(), "1")
        assert m.underlying_quiver().arrow_set() == fz.arrow_set()

    def test_double_mutation_quiver_identity(self):
        qp = three_cycle_qp()
        m2 = potentials.qp_mutate(potentials.qp_mutate(qp, "1"), "1")
        assert m2.underlying_quiver().arrow_set() == qp.underlying_quiver().arrow_set()

    @given(st.integers(0, 999))
    @settings(max_examples=25, deadline=None)
    def test_fz_compatibility_random_polygon_trees(self, seed):
        rng = random.Random(seed)
        spec = random_polygon_tree_spec(rng, max_vertices=9)
        qp = polytree.build_polygon_tree(spec)
        uq = qp.underlying_quiver()
        k = rng.choice(uq.vertices)
        try:
            m = potentials.qp_mutate(qp, k)
        except NotTwoAcyclic:
            return
        assert m.underlying_quiver().arrow_set() == quivers.fz_mutate(uq, k).arrow_set()

    def test_full_floriated_sequence_single_cycle(self):
        # the proof-schedule sequence ends in a single oriented cycle with W = c
        spec = polytree.FloriatedSpec(3, ((1, 4),))
        qp = polytree.build_floriated(spec)
        for v in ("1.4", "1.3"):
            qp = potentials.qp_mutate(qp, v)
        cycles = polytree.chordless_cycles(qp.underlying_quiver())
        assert len(cycles) == 1 and len(cycles[0]) == 4
        assert len(qp.potential) == 1


class TestNormalForms:
    def test_min_rotation_idempotent(self):
        w = ("b", "c", "a")
        once = potentials.min_rotation(w)
        assert potentials.min_rotation(once) == once

    def test_cyclically_equivalent_inputs_identical_storage(self):
        q = quivers.validate(["1", "2", "3"], [("1", "2"), ("2", "3"), ("3", "1")])
        qp1 = potentials.qp_from_quiver(q, [(("1->2", "2->3", "3->1"), 1)])
        qp2 = potentials.qp_from_quiver(q, [(("2->3", "3->1", "1->2"), 1)])
        assert qp1.potential == qp2.potential

    def test_json_round_trip(self):
        spec = polytree.PolygonTreeSpec((3, 4), ((0, 2),))
        qp = polytree.build_polygon_tree(spec)
        back = potentials.qp_from_json(qp.to_json())
        assert back.to_json_dict() == qp.to_json_dict()

    def test_rational_coefficients_survive(self):
        qp = potentials.make_qp(
            ["1", "2", "3"],
            {"a": ("1", "2"), "b": ("2", "3"), "c": ("3", "1")},
            [(("a", "b", "c"), Fraction(-2, 3))],
        )
        back = potentials.qp_from_json(qp.to_json())
        assert list(back.potential.values()) == [Fraction(-2, 3)]

    def test_opposite_involution(self):
        qp = three_cycle_qp()
        assert qp.opposite().opposite().potential == qp.potential
