"""Randomised invariants, each run for at least ``HEAVY`` trials (10^4 by
default; set CUBICPETERSEN_TRIALS to change it)."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubicpetersen.certificates import check_witness
from cubicpetersen.circuits import girth
from cubicpetersen.containment import UNKNOWN, search_subdivision
from cubicpetersen.cuts import edge_cut, find_shore, is_theta_connected
from cubicpetersen.fixtures import complete, complete_bipartite, petersen
from cubicpetersen.planarity import check_euler, faces, planar_embedding

from conftest import HEAVY, catalog, cubic_upto, multigraphs
from oracles import brute_theta_connected

heavy = settings(max_examples=HEAVY)


@heavy
@given(multigraphs(max_n=10, max_m=18), st.data())
def test_cut_submodularity(g, data):
    vs = sorted(g.vertices)
    x = data.draw(st.frozensets(st.sampled_from(vs)))
    y = data.draw(st.frozensets(st.sampled_from(vs)))
    d = lambda s: len(edge_cut(g, s))
    assert d(x & y) + d(x | y) <= d(x) + d(y)


@heavy
@given(multigraphs(max_n=10, max_m=18), st.data())
def test_cut_symmetry(g, data):
    x = data.draw(st.frozensets(st.sampled_from(sorted(g.vertices))))
    a = edge_cut(g, x)
    b = edge_cut(g, g.vertex_set - x)
    assert a.boundary == b.boundary
    assert all((g.endpoints(e)[0] in x) != (g.endpoints(e)[1] in x) for e in a.boundary)


@heavy
@given(multigraphs(max_n=9, max_m=14))
def test_euler_identity_on_embeddings(g):
    emb = planar_embedding(g)
    if emb is None:
        return
    check_euler(emb)
    fs = faces(emb)
    comps = [c for c in g.components() if any(g.degree(v) for v in c)]
    isolated = g.order - sum(len(c) for c in comps)
    # V - E + F = 2 summed over the components that carry edges
    assert (g.order - isolated) - g.size + len(fs) == 2 * len(comps)
    assert sum(len(f) for f in fs) == 2 * g.size


_PATTERNS = [complete(4), complete_bipartite(3, 3)]


@heavy
@given(multigraphs(max_n=9, max_m=16), st.sampled_from(_PATTERNS))
def test_witness_replay(g, pat):
    res = search_subdivision(g, pat, budget=10**5)
    if res.status == "found":
        check_witness(g, pat, res.witness)
    assert res.outcome is UNKNOWN or res.status in ("found", "none")


@settings(max_examples=max(HEAVY // 20, 50))
@given(st.sampled_from(cubic_upto(12)), st.data())
def test_petersen_witness_replay_relabelled(g, data):
    perm = data.draw(st.permutations(sorted(g.vertices)))
    h = g.relabeled(dict(zip(sorted(g.vertices), perm)))
    res = search_subdivision(h, petersen())
    assert res.status in ("found", "none")
    if res.status == "found":
        check_witness(h, petersen(), res.witness)


def _girth5_upto_14():
    return [g for g in cubic_upto(14) if girth(g) >= 5]


def test_theta_equivalence_girth5_to_14():
    gs = _girth5_upto_14()
    assert len(gs) == 12
    for g in gs:
        direct = is_theta_connected(g, method="direct")
        assert direct == is_theta_connected(g, method="shores")
        assert direct == (find_shore(g) is None)
        assert direct == brute_theta_connected(g)


def test_theta_equivalence_girth5_sixteen():
    for rec in catalog("cubic_girth5_n16.g6"):
        g = rec.graph
        assert is_theta_connected(g, method="direct") == is_theta_connected(g, method="shores")


def test_theta_requires_girth_five():
    for g in cubic_upto(12):
        if girth(g) < 5:
            assert not is_theta_connected(g)


@pytest.mark.parametrize("n", [10, 12, 14])
def test_shores_replay_by_definition(n):
    from cubicpetersen.cuts import all_shores, circuit_count_at_least_two
    from cubicpetersen.graph import induced

    for g in cubic_upto(n)[-20:]:
        for s in all_shores(g)[:5]:
            assert len(s.boundary) <= 5
            assert circuit_count_at_least_two(induced(g, s.side))
            assert circuit_count_at_least_two(induced(g, g.vertex_set - s.side))
