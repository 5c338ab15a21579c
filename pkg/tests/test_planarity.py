import networkx as nx
import pytest

from cubicpetersen.circuits import girth, pentagon_count
from cubicpetersen.fixtures import (
    complete,
    complete_bipartite,
    cube,
    cycle,
    dodeca_apex_with_hub,
    dodecahedron,
    petersen,
    prism,
    theta,
)
from cubicpetersen.graph import GraphError, MultiGraph, delete_vertices
from cubicpetersen.planarity import (
    DoublecrossWitness,
    Embedding,
    EmbeddingError,
    apex_face_bound,
    apex_pentagon_bound,
    check_euler,
    doublecross_pentagon_bound,
    face_vertices,
    faces,
    is_apex,
    is_doublecross,
    is_planar,
    pentagonal_face_count,
    planar_embedding,
    verify_doublecross,
)

from conftest import catalog, cubic_upto
from oracles import brute_contains, brute_doublecross_possible, dc_face_condition


def _crossed_octagon():
    # outer 8-cycle, chords 0-2, 1-3, 4-6, 5-7: two crossing pairs
    return MultiGraph(range(8), [(i, (i + 1) % 8) for i in range(8)] + [(0, 2), (1, 3), (4, 6), (5, 7)])


def test_dodecahedron_faces():
    emb = planar_embedding(dodecahedron())
    fs = faces(emb)
    assert len(fs) == 12 and all(len(f) == 5 for f in fs)
    assert pentagonal_face_count(emb) == 12


def test_nonplanar_examples():
    assert planar_embedding(complete(5)) is None
    assert planar_embedding(complete_bipartite(3, 3)) is None
    assert not is_planar(petersen())


def test_petersen_minus_vertex_is_not_planar():
    # contains a K3,3 subdivision, found by the slow oracle
    h = delete_vertices(petersen(), [0])
    assert not is_planar(h)
    assert brute_contains(h, complete_bipartite(3, 3))


def test_planarity_matches_kuratowski_on_small_cubic():
    # max degree 3 rules out K5, so non-planar iff a K3,3 subdivision exists
    for g in cubic_upto(10):
        assert is_planar(g) == (not brute_contains(g, complete_bipartite(3, 3)))


def test_small_faces():
    e5 = planar_embedding(cycle(5))
    assert sorted(len(f) for f in faces(e5)) == [5, 5]
    assert pentagonal_face_count(e5) == 2
    assert pentagonal_face_count(planar_embedding(cycle(6))) == 0
    assert len(faces(planar_embedding(theta()))) == 3


def test_loops_and_parallels_embed():
    g = MultiGraph([0, 1], [(0, 0), (0, 1), (0, 1), (1, 1)])
    emb = planar_embedding(g)
    check_euler(emb)
    assert len(faces(emb)) == 2 - g.order + g.size


def test_bad_rotation_rejected():
    emb = planar_embedding(cycle(4))
    broken = dict(emb.rotation)
    v = next(iter(broken))
    broken[v] = broken[v][:1]
    with pytest.raises(EmbeddingError):
        faces(Embedding(emb.graph, broken))


def test_edges_lie_on_two_face_sides():
    emb = planar_embedding(prism(5))
    seen = {}
    for f in faces(emb):
        for e, _ in f:
            seen[e] = seen.get(e, 0) + 1
    assert set(seen.values()) == {2} and set(seen) == set(prism(5).edges)


def test_bridge_lies_twice_on_one_face():
    g = MultiGraph(range(6), [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)])
    emb = planar_embedding(g)
    holder = [f for f in faces(emb) if any(e == 3 for e, _ in f)]
    assert len(holder) == 1 and sum(1 for e, _ in holder[0] if e == 3) == 2


def test_is_apex_examples():
    g, hub, _ = dodeca_apex_with_hub()
    assert is_apex(g) == hub
    assert is_apex(complete(6)) is None
    assert is_apex(cube()) == 0  # planar: least id
    assert is_apex(complete(5)) == 0


def test_petersen_is_not_apex():
    # every single-vertex deletion leaves a nonplanar graph
    assert is_apex(petersen()) is None
    for v in range(10):
        h = nx.petersen_graph()
        h.remove_node(v)
        assert not nx.check_planarity(h)[0]


def test_apex_bound_preconditions():
    with pytest.raises(GraphError):
        apex_pentagon_bound(cube())  # girth 4
    with pytest.raises(GraphError):
        apex_pentagon_bound(petersen())  # not apex
    with pytest.raises(GraphError):
        apex_pentagon_bound(cycle(5))


def test_apex_bound_on_catalog():
    n12 = [r.graph for r in catalog("cubic_n12.g6") if girth(r.graph) >= 5]
    apex = [g for g in n12 if is_apex(g) is not None]
    assert apex
    for g in apex:
        k, ok = apex_pentagon_bound(g)
        assert ok and k == pentagon_count(g)
        v, pf = apex_face_bound(g)
        assert v == is_apex(g) and pf >= 6


def test_doublecross_hand_built():
    g = _crossed_octagon()
    w = is_doublecross(g)
    assert isinstance(w, DoublecrossWitness)
    assert verify_doublecross(g, w)
    assert dc_face_condition(g, w.removed)
    cyc = face_vertices(w.embedding, w.embedding.outer_face)
    assert set(w.order) <= set(cyc)


def test_doublecross_small_planar_graph():
    assert is_doublecross(cube()) is None
    assert not brute_doublecross_possible(cube())
    assert is_doublecross(complete(4)) is None
    assert is_doublecross(cycle(3)) is None


def test_petersen_doublecross_matches_definition_replay():
    assert is_doublecross(petersen()) is None
    assert not brute_doublecross_possible(petersen())


def test_verify_rejects_tampering():
    g = _crossed_octagon()
    w = is_doublecross(g)
    swapped = DoublecrossWitness(w.removed, w.embedding, w.order[1:] + w.order[:1])
    assert not verify_doublecross(g, swapped)
    assert not verify_doublecross(g, DoublecrossWitness(w.removed[:3] + (w.removed[0],), w.embedding, w.order))
    assert not verify_doublecross(g, DoublecrossWitness(w.removed, Embedding(w.embedding.graph, w.embedding.rotation), w.order))


def test_reflection_flag_same_verdicts():
    g = _crossed_octagon()
    assert (is_doublecross(g, allow_reflection=False) is None) == (is_doublecross(g) is None)


def test_doublecross_bound_on_catalog_instance():
    hits = [r.graph for r in catalog("cubic_n14.g6") if girth(r.graph) >= 5 and is_doublecross(r.graph)]
    assert hits
    for g in hits:
        k, ok = doublecross_pentagon_bound(g)
        assert ok and k >= 6
        w = is_doublecross(g)
        assert verify_doublecross(g, w) and dc_face_condition(g, w.removed)


def test_doublecross_bound_preconditions():
    with pytest.raises(GraphError):
        doublecross_pentagon_bound(_crossed_octagon())  # girth 3
    with pytest.raises(GraphError):
        doublecross_pentagon_bound(petersen())  # not doublecross


def test_doublecross_agrees_with_replay_on_catalogs():
    gs = [g for g in cubic_upto(10) if g.is_simple()]
    gs += [r.graph for r in catalog("cubic_n14.g6") if girth(r.graph) >= 5]
    for g in gs:
        assert (is_doublecross(g) is not None) == brute_doublecross_possible(g)
