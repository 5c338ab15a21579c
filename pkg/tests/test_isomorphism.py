import networkx as nx
from hypothesis import given
from hypothesis import strategies as st

from cubicpetersen.fixtures import complete_bipartite, cube, heawood, petersen, petersen_kneser, prism
from cubicpetersen.graph import MultiGraph
from cubicpetersen.isomorphism import automorphisms, find_isomorphism, is_isomorphic

from conftest import cubic_upto, multigraphs, relabeled


def test_two_petersen_constructions():
    assert is_isomorphic(petersen(), petersen_kneser())
    assert not is_isomorphic(petersen(), heawood())


def test_mapping_is_an_isomorphism():
    g, h = petersen(), petersen_kneser()
    m = find_isomorphism(g, h)
    assert sorted(tuple(sorted((m[u], m[v]))) for u, v in g.edges.values()) == h.edge_key_multiset()


def test_automorphism_group_orders():
    assert len(automorphisms(petersen())) == 120
    assert len(automorphisms(heawood())) == 336
    assert len(automorphisms(cube())) == 48


def test_multigraph_sensitivity():
    a = MultiGraph([0, 1, 2], [(0, 1), (0, 1), (1, 2), (2, 2)])
    b = MultiGraph([0, 1, 2], [(0, 1), (1, 2), (1, 2), (0, 0)])
    c = MultiGraph([0, 1, 2], [(0, 1), (0, 1), (1, 2), (1, 2)])
    assert is_isomorphic(a, b)
    assert not is_isomorphic(a, c)


def test_prism_is_not_k33():
    assert not is_isomorphic(prism(3), complete_bipartite(3, 3))


@given(st.data())
def test_relabelled_copies(data):
    g = data.draw(st.sampled_from([petersen(), heawood(), prism(4)]))
    assert is_isomorphic(g, data.draw(relabeled(g)))


@given(multigraphs(max_n=6, max_m=9), multigraphs(max_n=6, max_m=9))
def test_agrees_with_networkx(g, h):
    def nxm(x):
        m = nx.MultiGraph()
        m.add_nodes_from(x.vertices)
        m.add_edges_from(x.edges.values())
        return m

    assert is_isomorphic(g, h) == nx.is_isomorphic(nxm(g), nxm(h))


def test_catalog_is_isomorph_free():
    gs = cubic_upto(10)
    for i, g in enumerate(gs):
        for h in gs[i + 1:]:
            assert not is_isomorphic(g, h)
