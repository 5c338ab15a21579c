import networkx as nx
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cubicpetersen.fixtures import complete, cycle, heawood, petersen
from cubicpetersen.graph import (
    GraphError,
    GraphRecord,
    MultiGraph,
    ParseError,
    contract_edge,
    delete_edge,
    delete_vertices,
    induced,
    is_cubic,
    parse_adjacency,
    parse_graph6,
    reduce_delete,
    reduce_delete_traced,
    subdivide_edge,
    suppress_degree_two,
    to_adjacency,
    to_graph6,
    to_sparse6,
)
from cubicpetersen.isomorphism import is_isomorphic

from conftest import multigraphs, simple_graphs


# -- parsing ---------------------------------------------------------------------


def test_petersen_graph6_against_networkx_encoder():
    line = nx.to_graph6_bytes(nx.petersen_graph(), header=False).strip()
    g = parse_graph6(line)
    assert (g.order, g.size) == (10, 15)
    assert is_cubic(g)
    assert is_isomorphic(g, petersen())


def test_single_vertex_graph6():
    g = parse_graph6("@")
    assert (g.order, g.size) == (1, 0)


def test_sparse6_loop_and_parallel_pair():
    g = MultiGraph(range(2), [(0, 0), (0, 1), (0, 1)])
    h = parse_graph6(to_sparse6(g))
    assert sorted(h.edge_key_multiset()) == [(0, 0), (0, 1), (0, 1)]
    assert h.degree(0) == 4 and h.degree(1) == 2


def test_sparse6_agrees_with_networkx_reader():
    g = MultiGraph(range(5), [(0, 1), (1, 1), (1, 2), (2, 3), (2, 3), (3, 4), (4, 0)])
    h = nx.from_sparse6_bytes(to_sparse6(g).encode())
    assert sorted(tuple(sorted(e)) for e in h.edges()) == g.edge_key_multiset()


@pytest.mark.parametrize("bad", ["", "A~", "Bw_", "~~", ":"])
def test_malformed_records_raise_with_offset(bad):
    with pytest.raises(ParseError) as info:
        parse_graph6(bad)
    assert hasattr(info.value, "offset")


@given(simple_graphs(max_n=16))
def test_graph6_roundtrip(g):
    assert parse_graph6(to_graph6(g)).edge_key_multiset() == g.edge_key_multiset()
    assert nx.from_graph6_bytes(to_graph6(g).encode()).number_of_edges() == g.size


@given(multigraphs(max_n=40, max_m=30))
def test_sparse6_roundtrip(g):
    h = parse_graph6(to_sparse6(g))
    assert h.order == g.order
    assert h.edge_key_multiset() == g.edge_key_multiset()


def test_adjacency_roundtrip_and_errors():
    g = petersen()
    h = parse_adjacency(to_adjacency(g))
    assert h.edge_key_multiset() == g.edge_key_multiset()
    with pytest.raises(ParseError):
        parse_adjacency("3 2\n0 1\n")
    with pytest.raises(ParseError):
        parse_adjacency("2 1\n0 5\n")


def test_record_source_required():
    with pytest.raises(ValueError):
        GraphRecord(petersen(), "")


# -- basic predicates and edits ---------------------------------------------------


def test_cubic_examples():
    assert is_cubic(petersen())
    assert is_cubic(complete(4))
    assert not is_cubic(MultiGraph([0], [(0, 0)]))


@given(multigraphs())
def test_handshake(g):
    assert sum(g.degree(v) for v in g.vertices) == 2 * g.size


def test_delete_edge():
    g = petersen()
    assert delete_edge(g, 0).size == 14
    two = MultiGraph(range(2), [(0, 1), (0, 1)])
    h = delete_edge(two, 0)
    assert h.edge_key_multiset() == [(0, 1)]
    loop = MultiGraph([0, 1], [(0, 0), (0, 1)])
    assert delete_edge(loop, 0).degree(0) == loop.degree(0) - 2
    with pytest.raises(GraphError):
        delete_edge(g, 99)


def test_delete_vertices():
    g = petersen()
    h = delete_vertices(g, [0])
    assert (h.order, h.size) == (9, 12)
    assert delete_vertices(g, []) == g
    assert delete_vertices(g, g.vertices).order == 0
    with pytest.raises(GraphError):
        delete_vertices(g, [42])


def test_induced_outer_pentagon():
    g = petersen()  # 0..4 outer cycle, 5..9 inner pentagram
    h = induced(g, range(5))
    assert (h.order, h.size) == (5, 5)
    assert induced(g, g.vertices) == g
    one = induced(MultiGraph([0, 1], [(0, 0), (0, 1)]), [0])
    assert one.order == 1 and all(u == v for u, v in one.edges.values())


@given(multigraphs(), st.data())
def test_induced_is_complement_deletion(g, data):
    xs = data.draw(st.sets(st.sampled_from(list(g.vertices))))
    assert induced(g, xs) == delete_vertices(g, g.vertex_set - xs)


def test_contract_examples():
    tri = cycle(3)
    h = contract_edge(tri, 0)
    assert h.order == 2 and h.edge_key_multiset() == [(0, 2), (0, 2)]
    path = MultiGraph(range(3), [(0, 1), (1, 2)])
    assert contract_edge(path, 0).edge_key_multiset() == [(0, 2)]
    with pytest.raises(GraphError):
        contract_edge(MultiGraph([0], [(0, 0)]), 0)


def _matrix_contract(n, pairs, u, v):
    """Simple-graph contraction on a 0/1 adjacency matrix."""
    a = np.zeros((n, n), dtype=int)
    for x, y in pairs:
        if x != y:
            a[x, y] = a[y, x] = 1
    a[u] |= a[v]
    a[:, u] |= a[:, v]
    a[u, u] = 0
    keep = [i for i in range(n) if i != v]
    return a[np.ix_(keep, keep)], keep


@given(simple_graphs(min_n=2, max_n=8), st.data())
def test_contract_matches_matrix_oracle(g, data):
    if not g.size:
        return
    e = data.draw(st.sampled_from(list(g.edges)))
    u, v = g.endpoints(e)
    h = contract_edge(g, e)
    simple = {(min(a, b), max(a, b)) for a, b in h.edges.values() if a != b}
    mat, keep = _matrix_contract(g.order, g.edges.values(), u, v)
    expect = {(keep[i], keep[j]) for i in range(len(keep)) for j in range(i + 1, len(keep)) if mat[i, j]}
    assert simple == expect


def test_contract_chord_of_four_cycle():
    g = MultiGraph(range(4), [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])
    h = contract_edge(g, 4)
    assert h.order == 3
    assert h.edge_key_multiset() == [(0, 1), (0, 1), (0, 3), (0, 3)]


def test_subdivide_then_suppress():
    k4 = complete(4)
    g = k4
    for e in list(k4.edges):
        g, _ = subdivide_edge(g, e)
    assert g.order == 10
    assert is_isomorphic(suppress_degree_two(g), k4)


def test_suppress_conventions():
    assert suppress_degree_two(cycle(4)).order == 0
    g = heawood()
    assert suppress_degree_two(g) == g


def test_reduce_delete_examples():
    h = reduce_delete(heawood(), 0)
    assert h.order == 12 and is_cubic(h)
    k = reduce_delete(complete(4), 0)
    assert k.order == 2 and k.size == 3 and len(set(k.edge_key_multiset())) == 1
    theta = MultiGraph(range(2), [(0, 1)] * 3)
    assert reduce_delete(theta, 0).order == 0


@pytest.mark.parametrize("g", [petersen(), heawood(), complete(4)], ids=["petersen", "heawood", "k4"])
def test_reduce_delete_cubic_or_empty(g):
    for e in g.edges:
        h = reduce_delete(g, e)
        assert h.order == 0 or is_cubic(h)


def test_reduce_delete_trace_covers_edges():
    g = petersen()
    h, trace = reduce_delete_traced(g, 3)
    used = [f for vp, ep in trace.values() for f in ep]
    assert len(used) == len(set(used)) == g.size - 1
    for f, (vp, ep) in trace.items():
        assert {vp[0], vp[-1]} == set(h.endpoints(f))
