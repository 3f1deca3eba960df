"""Acceptance suite: one test per acceptance criterion, each printing a
pass/fail line.  Tolerances are exact (integer / rational arithmetic
throughout); runtime-targeted criteria are kept inside their budgets by
working per isomorphism class of gluing scripts."""

import itertools
import random
import time

import pytest

from quiverlab import jacobian, mutclass, polytree, potentials, quivers, singularity
from quiverlab.errors import NotTwoAcyclic
from conftest import all_polygon_tree_specs, corpus_classes, random_polygon_tree_spec


def report(criterion: str, ok: bool, detail: str = ""):
    status = "PASS" if ok else "FAIL"
    print(f"[acceptance] {status} {criterion} {detail}")
    assert ok, f"{criterion}: {detail}"


@pytest.fixture(scope="module")
def corpus():
    """One representative per isomorphism class of the exhaustive corpus
    (<= 4 components, cycle sizes <= 5)."""
    return corpus_classes(max_components=4, min_size=3, max_size=5)


def test_criterion_1_involution_suite():
    """fz twice is the identity and qp-mutation twice preserves the quiver
    and the Cartan matrix, on 200 random polygon-tree quivers."""
    t0 = time.time()
    rng = random.Random(20240901)
    checked_fz = checked_qp = 0
    for _ in range(200):
        spec = random_polygon_tree_spec(rng, max_vertices=10)
        qp = polytree.build_polygon_tree(spec)
        uq = qp.underlying_quiver()
        base = jacobian.jacobian_basis(qp)
        for k in uq.vertices:
            assert quivers.fz_mutate(quivers.fz_mutate(uq, k), k).arrow_set() == uq.arrow_set()
            checked_fz += 1
            try:
                m2 = potentials.qp_mutate(potentials.qp_mutate(qp, k), k)
            except NotTwoAcyclic:
                continue
            assert m2.underlying_quiver().arrow_set() == uq.arrow_set()
            r2 = jacobian.jacobian_basis(m2)
            assert r2.cartan == base.cartan and r2.dimension == base.dimension
            checked_qp += 1
    elapsed = time.time() - t0
    report(
        "criterion 1 (involution suite)",
        elapsed < 120,
        f"{checked_fz} fz / {checked_qp} qp double mutations in {elapsed:.1f}s",
    )


def test_criterion_2_schurian_theorem(corpus):
    """Every polygon-tree algebra in the corpus is schurian, saturated, and
    kills every cyclic path."""
    t0 = time.time()
    for spec in corpus:
        qp = polytree.build_polygon_tree(spec)
        r = jacobian.jacobian_basis(qp)
        assert r.saturated, spec
        assert jacobian.is_schurian(r), spec
        assert jacobian.socle_condition(r), spec
    elapsed = time.time() - t0
    report(
        "criterion 2 (schurian theorem)",
        elapsed < 600,
        f"{len(corpus)} corpus classes in {elapsed:.1f}s",
    )


def test_criterion_3_reduction_proposition():
    """replay_reduction on all floriated specs with m0 <= 6, <= 3 petals,
    petal sizes <= 5: single cycle of length m0+n, intermediates 2-acyclic."""
    t0 = time.time()
    count = 0
    for m0 in range(3, 7):
        for k in range(0, 4):
            for positions in itertools.combinations(range(1, m0 + 1), k):
                for sizes in itertools.product((3, 4, 5), repeat=k):
                    spec = polytree.FloriatedSpec(m0, tuple(zip(positions, sizes)))
                    trace = singularity.replay_reduction(spec)
                    assert trace.summary["cycle_length"] == m0 + k
                    for step in trace.steps:
                        assert not step.after.has_two_cycle()
                    count += 1
    report("criterion 3 (reduction proposition)", True,
           f"{count} floriated specs in {time.time()-t0:.1f}s")


def test_criterion_4_main_theorem(corpus):
    """replay_theorem_chain terminates on every simple corpus spec with the
    terminal cycle length m - 3N + d_Q and certified mutation steps."""
    t0 = time.time()
    simple = [s for s in corpus if polytree.is_simple(s)]
    for spec in simple:
        trace = singularity.replay_theorem_chain(spec)
        m, N, d_Q = polytree.d_invariant(spec)
        assert trace.summary["terminal_cycle_length"] == m - 3 * N + d_Q, spec
        for step in trace.steps:
            if step.operation["kind"] == "QPMutation":
                cert = step.certificate
                pairing = cert[cert["direction"] + "_pairing"]
                assert all(pairing), (spec, step.operation)
                assert all(cert["not_in_radical"]), (spec, step.operation)
    report(
        "criterion 4 (main theorem consistency)",
        True,
        f"{len(simple)} simple classes in {time.time()-t0:.1f}s",
    )


def test_criterion_5_orbit_model():
    """nakayama_model(d): stable_count = (d-2)*d and tau_period = d, 3..30."""
    t0 = time.time()
    for d in range(3, 31):
        r = singularity.nakayama_model(d)
        assert r.stable_count == (d - 2) * d, d
        assert r.tau_period == d, d
        assert r.tau_orbits == d - 2, d
    report("criterion 5 (orbit model)", True, f"d=3..30 in {time.time()-t0:.1f}s")


def test_criterion_6_figure_9_1_guard():
    """The four-triangle chain decomposes, is rejected by is_simple, and its
    mutation class is E(6)."""
    q = polytree.figure_9_1_quiver()
    dec = polytree.decompose(q)
    assert dec.spec.sizes == (3, 3, 3, 3)
    assert not polytree.is_simple(dec.spec)
    tag = mutclass.classify_mutation_type(q)
    assert str(tag) == "E(6)", tag
    report("criterion 6 (example 9.1 guard)", True, "decomposes, non-simple, E(6)")


# The paper's final table lists the floriated quivers of types E7(1,1) and
# E8(1,1).  Machine-checking the printed pictures shows two of the six are
# erroneous (their classes are mutation-infinite: replayable weight-3
# witnesses), and one true member is missing; the corrected table below was
# computed by exhausting all floriated quivers on 8/9/10 vertices against the
# enumerated E(1,1) class databases.  See the decisions ledger.
E11_TABLE = [
    # (label, floriated spec, expected tag)
    ("E7(1,1) row", polytree.FloriatedSpec(3, ((1, 4), (2, 4), (3, 4))), "E11(7)"),
    ("E8(1,1) #1", polytree.FloriatedSpec(6, ((1, 4), (4, 4))), "E11(8)"),
    ("E8(1,1) #2", polytree.FloriatedSpec(5, ((1, 4), (4, 4), (5, 3))), "E11(8)"),
    ("E8(1,1) #3", polytree.FloriatedSpec(4, ((1, 4), (2, 3), (3, 4), (4, 3))), "E11(8)"),
    ("E8(1,1) corrected", polytree.FloriatedSpec(4, ((1, 5), (3, 5))), "E11(8)"),
]

# printed rows whose pictures do not satisfy the table's own defining
# property: both are mutation-infinite, hence wild, not tame
E11_TABLE_ERRATA = [
    ("E8(1,1) printed #4", polytree.FloriatedSpec(4, ((1, 4), (2, 4), (3, 4)))),
    ("E8(1,1) printed #5", polytree.FloriatedSpec(3, ((1, 5), (2, 4), (3, 4)))),
]


def test_criterion_7_representation_type():
    """Finite for the 3-cycle and all-triangle-petal floriated quivers; Tame
    with the right tag for every floriated quiver of E^(1,1) type (the
    corrected table); Wild for a 12-vertex branched polygon tree; every Tame
    verdict has <= 10 vertices.  The two erroneous printed rows are reported
    as errata with machine-verified infinite-type witnesses."""
    t0 = time.time()
    tame_sizes = []

    cyc3 = quivers.validate(["1", "2", "3"], [("1", "2"), ("2", "3"), ("3", "1")])
    assert mutclass.representation_type(cyc3).verdict == "finite"

    for m0, petals in ((4, (1, 2)), (5, (1, 3)), (6, (2, 4, 6))):
        spec = polytree.FloriatedSpec(m0, tuple((p, 3) for p in petals))
        q = polytree.build_polygon_tree(spec.to_polygon_tree()).underlying_quiver()
        rep = mutclass.representation_type(q)
        assert rep.verdict == "finite" and rep.tag.family in ("D", "A"), (spec, rep)

    for label, spec, expected_tag in E11_TABLE:
        q = polytree.build_polygon_tree(spec.to_polygon_tree()).underlying_quiver()
        rep = mutclass.representation_type(q)
        assert rep.verdict == "tame", (label, rep)
        assert str(rep.tag) == expected_tag, (label, rep.tag)
        tame_sizes.append(q.n)

    errata = []
    for label, spec in E11_TABLE_ERRATA:
        q = polytree.build_polygon_tree(spec.to_polygon_tree()).underlying_quiver()
        witness = mutclass.find_infinite_witness(q)
        assert witness is not None, (label, "expected an infinite-type witness")
        cur = q
        for k in witness:
            cur = quivers.fz_mutate(cur, k)
        assert cur.max_weight() >= 3
        rep = mutclass.representation_type(q)
        assert rep.verdict == "wild", (label, rep)
        errata.append(label)
        print(f"[acceptance]   note: {label} is mutation-infinite (witness of "
              f"length {len(witness)} replayed), so it is wild, not tame: "
              f"paper-table erratum")

    big = polytree.PolygonTreeSpec((5, 5, 4, 4), ((0, 1), (0, 2), (0, 3)))
    qbig = polytree.build_polygon_tree(big).underlying_quiver()
    assert qbig.n == 12
    assert mutclass.representation_type(qbig).verdict == "wild"

    assert all(n <= 10 for n in tame_sizes)
    report(
        "criterion 7 (representation type)",
        True,
        f"corrected table tame with sizes {tame_sizes}; errata {errata} wild; "
        f"{time.time()-t0:.1f}s",
    )


def test_criterion_8_oracle_equivalence(corpus):
    """jacobian_basis agrees with the dense all-paths oracle (dimension and
    Cartan) on every corpus QP with <= 5 vertices."""
    t0 = time.time()
    small = [s for s in corpus if sum(s.sizes) - 2 * s.N <= 5]
    assert small
    for spec in small:
        qp = polytree.build_polygon_tree(spec)
        r = jacobian.jacobian_basis(qp)
        dim, cartan = jacobian.dense_jacobian(qp)
        assert r.dimension == dim, spec
        assert r.cartan == cartan, spec
    report(
        "criterion 8 (oracle equivalence)",
        True,
        f"{len(small)} small QPs in {time.time()-t0:.1f}s",
    )


def test_criterion_9_canonical_algebra_corollary():
    """Dropping the middle-arm vertex of the canonical cluster-tilted quiver
    yields the floriated quiver of the proof; the invariant is the theorem
    value (p2 + p3 - 1), which reads p1 + p3 - 1 whenever p2 = p1 = 2.

    The paper's displayed subscript uses p1 for all weights, which its own
    theorem contradicts at p2 > 2 (two glued 4-cycles must give N_5); see
    the decisions ledger.
    """
    p1 = 2
    rows = []
    for p2, p3 in itertools.product((2, 3, 4), repeat=2):
        qp = polytree.build_canonical_ct(p1, p2, p3)
        dropped = singularity.drop_vertex(qp, "c1")
        dec = polytree.decompose(dropped.underlying_quiver())
        assert sorted(dec.spec.sizes) == sorted((p2 + 1, p3 + 1)), (p2, p3)
        desc = singularity.singularity_invariant(dec.spec)
        assert desc.d == p2 + p3 - 1, (p2, p3, desc)
        if p2 == p1:
            assert desc.d == p1 + p3 - 1, (p2, p3, desc)
        # cross-check against the certified chain
        trace = singularity.replay_theorem_chain(dec.spec)
        assert trace.summary["terminal_cycle_length"] == desc.d
        rows.append((p2, p3, desc.d))
    report(
        "criterion 9 (canonical-algebra corollary)",
        True,
        f"rows (p2,p3,d): {rows}",
    )
