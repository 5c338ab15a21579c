from pathlib import Path

import pytest

from cubicpetersen.certificates import check_witness
from cubicpetersen.circuits import Circuit, circuits_up_to, find_breakers, girth, is_interesting, pentagons, short_circuits
from cubicpetersen.containment import UNKNOWN, contains_petersen
from cubicpetersen.cuts import edge_cut, find_shore, is_shore, is_theta_connected
from cubicpetersen.fixtures import cube, fixture, heawood, petersen, starfish
from cubicpetersen.graph import GraphError, is_cubic, read_catalog
from cubicpetersen.isomorphism import is_isomorphic
from cubicpetersen.reduction import (
    LABEL,
    ReductionStep,
    ThetaReport,
    all_figure2_matchings,
    build_figure2,
    build_shore_replacement,
    classify_theta_connected,
    delete_reduce_step,
    figure2_variants,
    girth4_contraction,
    reduction_chain,
    reduction_pipeline,
    stated_figure2_variant,
)

from constructions import shore_k3, shore_k5, triangle_shore_instance, truncated_heawood

DATA = Path(__file__).parent / "data"


# -- figure 2 ---------------------------------------------------------------------


def test_figure2_enumeration():
    assert len(all_figure2_matchings()) == 24
    vs = figure2_variants()
    assert len(vs) == 4
    for v in vs:
        pairs = v.pairs()
        assert ("b3", "q3") in pairs and ("c3", "r3") in pairs
        assert len({b for _, b in pairs}) == 6


def test_printed_pairs_conflict():
    # the printed list sends two of b1, b2, c1, c2 to r2
    printed = [("b1", "r1"), ("b2", "r2"), ("c1", "r2"), ("c2", "r1")]
    assert len({b for _, b in printed}) < len(printed)
    assert stated_figure2_variant() in figure2_variants()


def test_inconsistent_variant_raises():
    bad = [v for v in all_figure2_matchings() if v not in figure2_variants()]
    assert bad
    for v in bad:
        with pytest.raises(GraphError):
            build_figure2(v)


def test_figure2_graph_shape():
    f = build_figure2(stated_figure2_variant())
    g = f.graph
    assert g.order == 16 and is_cubic(g)
    assert [c.canonical() for c in short_circuits(g)] == [f.quadrilateral.canonical()]
    assert f.quadrilateral.vertex_set == {LABEL[x] for x in ("b3", "c3", "r3", "q3")}
    assert f.reduced.order == 14 and girth(f.reduced) >= 5
    assert f.contraction.claims_hold


def test_figure2_reduced_graphs_agree():
    hs = [build_figure2(v).reduced for v in figure2_variants()]
    assert all(is_isomorphic(hs[0], h) for h in hs[1:])
    assert is_isomorphic(fixture("figure2"), hs[0])


def test_every_variant_contains_petersen():
    for v in figure2_variants():
        f = build_figure2(v)
        for g in (f.graph, f.reduced):
            w = contains_petersen(g)
            assert w is not None and w is not UNKNOWN
            check_witness(g, petersen(), w)


# -- girth four -------------------------------------------------------------------


def test_cube_contraction_skips_claims():
    r = girth4_contraction(cube(), short_circuits(cube())[0])
    assert r.graph.order == 6 and is_cubic(r.graph)
    assert not r.hypotheses_met


def test_contraction_needs_quadrilateral():
    with pytest.raises(GraphError):
        girth4_contraction(petersen(), short_circuits(petersen())[0])


def test_contraction_claims_on_catalog_instances():
    for rec in read_catalog(DATA / "girth4_n16.g6"):
        g = rec.graph
        (c,) = short_circuits(g)
        r = girth4_contraction(g, c)
        assert r.hypotheses_met and r.claims_hold
        assert girth(r.graph) >= 5
        ends = set(r.e3_ends)
        assert all(p.vertex_set & ends for p in pentagons(r.graph))
        check_witness(g, r.graph, r.witness)


# -- shore replacement ------------------------------------------------------------


@pytest.mark.parametrize("make,k", [(shore_k3, 3), (shore_k5, 5)], ids=["k3", "k5"])
def test_shore_replacement(make, k):
    g, side = make()
    assert is_shore(g, side) and len(edge_cut(g, side)) == k
    sr = build_shore_replacement(g, side)
    h = sr.graph
    assert is_cubic(h) and is_interesting(h) and h.order < g.order
    assert len(sr.circuit) == k
    if k < 6:
        assert sr.circuit.canonical() in find_breakers(h)
    check_witness(g, h, sr.witness)
    assert side <= h.vertex_set


def test_shore_replacement_rejects_bad_sides():
    g = heawood()
    hexagon = min(circuits_up_to(g, 6), key=lambda c: c.vertices).vertex_set
    assert len(edge_cut(g, hexagon)) == 6
    with pytest.raises(GraphError):
        build_shore_replacement(g, hexagon)
    h, _ = shore_k5()
    with pytest.raises(GraphError):
        build_shore_replacement(h, frozenset([min(h.vertices)]))


def test_step_verify_catches_bad_results():
    g = truncated_heawood()
    step = delete_reduce_step(g, next(iter(g.edges)))
    bogus = ReductionStep("delete_reduce", step.result, g, step.witness)
    with pytest.raises(AssertionError):
        bogus.verify()
    with pytest.raises(ValueError):
        ReductionStep("teleport", g, g, step.witness)


# -- classification and pipeline -------------------------------------------------


def test_classify_heawood():
    rep = classify_theta_connected(heawood())
    assert rep.apex is None and rep.doublecross is None and rep.starfish_iso is False
    assert rep.petersen is not None and rep.consistent is True


def test_classify_petersen():
    rep = classify_theta_connected(petersen())
    assert rep.apex is None and rep.doublecross is None
    assert rep.petersen is not None and rep.consistent is True


def test_classify_starfish():
    rep = classify_theta_connected(starfish())
    assert rep.starfish_iso is True and rep.petersen is None
    assert rep.apex is None and rep.doublecross is None
    assert rep.consistent is True


def test_classify_needs_theta_connected():
    with pytest.raises(GraphError):
        classify_theta_connected(cube())


def test_report_semantics():
    assert ThetaReport(None, None, None, None).consistent is None
    assert ThetaReport(None, None, None, object()).consistent is True
    assert ThetaReport(3, None, False, object()).consistent is False
    assert ThetaReport(None, None, False, UNKNOWN).consistent is None
    assert ThetaReport(None, None, False, None).consistent is False


def test_pipeline_heawood_terminal():
    out = reduction_pipeline(heawood())
    assert out.kind == "terminal" and out.witness is not None
    check_witness(heawood(), petersen(), out.witness)


def test_pipeline_girth3_delete_reduce():
    g = triangle_shore_instance()
    assert girth(g) == 3 and len(short_circuits(g)) == 1
    out = reduction_pipeline(g)
    assert out.kind == "step" and out.step.kind == "delete_reduce"
    out.step.verify()


def test_pipeline_shore_replace():
    g, _ = shore_k5()
    assert girth(g) >= 6 and find_shore(g) is not None
    out = reduction_pipeline(g)
    assert out.kind == "step" and out.step.kind == "shore_replace"
    out.step.verify()


def test_pipeline_girth4_case():
    recs = list(read_catalog(DATA / "girth4_n16.g6"))
    kinds = [reduction_pipeline(r.graph).kind for r in recs]
    assert "step" in kinds
    for r in recs:
        out = reduction_pipeline(r.graph)
        if out.kind == "step":
            assert out.step.kind == "girth4_case"
            out.step.verify()
        else:
            check_witness(r.graph, petersen(), out.witness)


def test_pipeline_rejects_uninteresting():
    with pytest.raises(GraphError):
        reduction_pipeline(petersen())


@pytest.mark.parametrize("make", [triangle_shore_instance, lambda: shore_k3()[0], lambda: shore_k5()[0]])
def test_chain_ends_in_petersen(make):
    g = make()
    steps, out = reduction_chain(g)
    for s in steps:
        s.verify()
    assert out.kind in ("witness", "terminal") and out.witness is not None
    last = steps[-1].result if steps else g
    check_witness(last, petersen(), out.witness)
    assert is_theta_connected(last) or out.kind == "witness"


def test_breaker_circuit_type():
    g = triangle_shore_instance()
    (tri,) = short_circuits(g)
    assert isinstance(tri, Circuit) and find_breakers(g) == [tri]
