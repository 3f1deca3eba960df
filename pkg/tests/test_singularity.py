import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quiverlab import jacobian, polytree, potentials, singularity
from quiverlab.errors import (
    DTooSmall,
    LengthMismatch,
    NotSimple,
    PatternMismatch,
)
from conftest import random_polygon_tree_spec


class TestDescriptor:
    def test_single_cycle(self):
        desc = singularity.singularity_invariant(polytree.FloriatedSpec(6))
        assert desc.d == 6 and desc.nakayama == "N_6"

    def test_two_glued_four_cycles(self):
        spec = polytree.PolygonTreeSpec((4, 4), ((0, 1),))
        desc = singularity.singularity_invariant(spec)
        assert desc.d == 5
        assert desc.orbit == "K(ZA_3)/tau^5"

    def test_not_simple_rejected_with_witness(self):
        dec = polytree.decompose(polytree.figure_9_1_quiver())
        with pytest.raises(NotSimple) as exc_info:
            singularity.singularity_invariant(dec.spec)
        assert exc_info.value.witness is not None

    def test_d_at_least_three(self):
        rng = random.Random(11)
        for _ in range(60):
            spec = random_polygon_tree_spec(rng, max_vertices=12)
            if polytree.is_simple(spec):
                assert singularity.singularity_invariant(spec).d >= 3


class TestNakayamaModel:
    def test_d3(self):
        r = singularity.nakayama_model(3)
        assert r.stable_count == 3 and r.tau_period == 3 and r.tau_orbits == 1

    def test_d4(self):
        r = singularity.nakayama_model(4)
        assert r.stable_count == 8 and r.tau_period == 4

    def test_orbit_model_range(self):
        for d in range(3, 31):
            r = singularity.nakayama_model(d)
            assert r.stable_count == (d - 2) * d
            assert r.tau_period == d
            assert r.tau_orbits == d - 2

    def test_projective_count(self):
        r = singularity.nakayama_model(6)
        projectives = [x for x in r.indecomposables if x[1] == 5]
        assert len(projectives) == 6

    def test_too_small(self):
        with pytest.raises(DTooSmall):
            singularity.nakayama_model(2)


class TestSurgeries:
    def setup_method(self):
        self.qp = polytree.build_polygon_tree(polytree.PolygonTreeSpec((3, 3), ((0, 1),)))

    def test_coextension_adds_sink(self):
        out = singularity.one_point_coextend(self.qp, "0.2", "c")
        assert "c" in out.vertices
        assert out.arrows["0.2->c"] == ("0.2", "c")
        assert out.potential == self.qp.potential

    def test_extension_adds_source(self):
        out = singularity.one_point_extend(self.qp, "0.2", "c")
        assert out.arrows["c->0.2"] == ("c", "0.2")

    def test_attach_off_cycle_rejected(self):
        qp = potentials.qp_from_quiver(
            __import__("quiverlab").quivers.validate(["1", "2"], [("1", "2")])
        )
        with pytest.raises(PatternMismatch):
            singularity.one_point_extend(qp, "1", "c")

    def test_drop_pendant(self):
        ext = singularity.one_point_coextend(self.qp, "0.2", "c")
        back = singularity.drop_vertex(ext, "c")
        assert back.to_json_dict() == self.qp.to_json_dict()

    def test_drop_triangle_corner(self):
        out = singularity.drop_vertex(self.qp, "1.3")
        uq = out.underlying_quiver()
        assert uq.n == 3 and len(out.potential) == 1

    def test_drop_pattern_mismatch(self):
        spec = polytree.PolygonTreeSpec((4, 4), ((0, 1),))
        qp = polytree.build_polygon_tree(spec)
        # interior vertex of a 4-cycle: 1 in, 1 out, but the term through it
        # is a square, not a triangle
        with pytest.raises(PatternMismatch):
            singularity.drop_vertex(qp, "1.3")

    def test_canonical_ct_drop_gives_floriated(self):
        qp = polytree.build_canonical_ct(2, 3, 4)
        out = singularity.drop_vertex(qp, "c1")
        dec = polytree.decompose(out.underlying_quiver())
        assert sorted(dec.spec.sizes) == [4, 5]


class TestReplayReduction:
    def test_single_petal(self):
        trace = singularity.replay_reduction(polytree.FloriatedSpec(3, ((1, 4),)))
        assert trace.summary == {"cycle_length": 4, "tails": [1]}

    def test_two_triangle_petals(self):
        trace = singularity.replay_reduction(polytree.FloriatedSpec(4, ((1, 3), (2, 3))))
        assert trace.summary["cycle_length"] == 6
        assert trace.summary["tails"] == []

    def test_no_petals_identity(self):
        trace = singularity.replay_reduction(polytree.FloriatedSpec(4))
        assert len(trace.steps) == 0 and trace.summary["cycle_length"] == 4

    def test_intermediates_two_acyclic(self):
        trace = singularity.replay_reduction(polytree.FloriatedSpec(5, ((2, 5),)))
        for step in trace.steps:
            assert not step.after.has_two_cycle()


class TestReplayTheoremChain:
    def test_two_glued_four_cycles(self):
        trace = singularity.replay_theorem_chain(polytree.PolygonTreeSpec((4, 4), ((0, 1),)))
        assert trace.summary["terminal_cycle_length"] == 5

    def test_triangle_petal_single_drop(self):
        trace = singularity.replay_theorem_chain(polytree.PolygonTreeSpec((5, 3), ((0, 1),)))
        assert len(trace.steps) == 1
        assert trace.steps[0].operation["kind"] == "DropVertex"
        assert trace.summary["terminal_cycle_length"] == 5

    def test_case4_star_of_triangles(self):
        star = polytree.PolygonTreeSpec((3, 3, 3, 3), ((0, 1), (0, 2), (0, 3)))
        trace = singularity.replay_theorem_chain(star)
        assert trace.summary["terminal_cycle_length"] == 6

    def test_not_simple_refused(self):
        dec = polytree.decompose(polytree.figure_9_1_quiver())
        with pytest.raises(NotSimple):
            singularity.replay_theorem_chain(dec.spec)

    def test_certificates_recheckable_from_snapshots(self):
        trace = singularity.replay_theorem_chain(polytree.PolygonTreeSpec((4, 4), ((0, 1),)))
        for step in trace.steps:
            if step.operation["kind"] != "QPMutation":
                continue
            k = step.operation["vertex"]
            rb = jacobian.jacobian_basis(step.before)
            ra = jacobian.jacobian_basis(step.after)
            cert = step.certificate
            if cert["direction"] == "negative":
                assert jacobian.negative_mutation_defined(rb, k)
                assert jacobian.positive_mutation_defined(ra, k)
            else:
                assert jacobian.positive_mutation_defined(rb, k)
                assert jacobian.negative_mutation_defined(ra, k)
            assert jacobian.simple_not_in_radical(rb, k)
            assert jacobian.simple_not_in_radical(ra, k)

    def test_trace_json_round_trippable(self):
        spec = polytree.PolygonTreeSpec((4, 3), ((0, 1),))
        trace = singularity.replay_theorem_chain(spec)
        data = trace.to_json_dict()
        m, N, dq = polytree.d_invariant(spec)
        assert data["summary"]["terminal_cycle_length"] == m - 3 * N + dq
        assert all("before" in s and "after" in s for s in data["steps"])

    @given(st.integers(0, 3000))
    @settings(max_examples=12, deadline=None)
    def test_random_simple_specs_reach_formula(self, seed):
        rng = random.Random(seed)
        spec = random_polygon_tree_spec(rng, max_vertices=10)
        if not polytree.is_simple(spec):
            return
        trace = singularity.replay_theorem_chain(spec)
        m, N, dq = polytree.d_invariant(spec)
        assert trace.summary["terminal_cycle_length"] == m - 3 * N + dq

    def test_leaf_selection_invariance_small(self):
        # relabeling components changes which leaf is picked first; the
        # terminal length must not change
        a = polytree.PolygonTreeSpec((4, 3, 5), ((0, 1), (0, 3)))
        b = polytree.PolygonTreeSpec((4, 5, 3), ((0, 3), (0, 1)))
        ta = singularity.replay_theorem_chain(a)
        tb = singularity.replay_theorem_chain(b)
        assert ta.summary["terminal_cycle_length"] == tb.summary["terminal_cycle_length"]
