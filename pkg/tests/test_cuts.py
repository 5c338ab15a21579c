import pytest
from hypothesis import given
from hypothesis import strategies as st

from cubicpetersen.circuits import Circuit, find_breakers
from cubicpetersen.cuts import (
    EXACT_LIMIT,
    BoundExceeded,
    all_shores,
    circuit_count_at_least_two,
    cyclomatic_number,
    edge_cut,
    find_shore,
    is_shore,
    is_theta_connected,
    push_shore,
)
from cubicpetersen.fixtures import complete, cube, cycle, dodecahedron, heawood, petersen, prism, theta
from cubicpetersen.graph import GraphError, MultiGraph, delete_vertices, induced

from conftest import cubic_upto, multigraphs
from constructions import glue, shore_k3, shore_k5, triangle_shore_instance, truncated_heawood
from oracles import brute_theta_connected


def test_edge_cut_examples():
    g = petersen()
    assert edge_cut(g, []).boundary == ()
    assert len(edge_cut(g, [0])) == 3
    assert len(edge_cut(g, range(5))) == 5
    with pytest.raises(GraphError):
        edge_cut(g, [99])


def test_loops_never_cross():
    g = MultiGraph([0, 1], [(0, 0), (0, 1)])
    assert edge_cut(g, [0]).boundary == (1,)


def test_circuit_count():
    assert not circuit_count_at_least_two(cycle(6))
    assert circuit_count_at_least_two(theta())
    assert not circuit_count_at_least_two(MultiGraph(range(3), [(0, 1), (1, 2)]))


def test_find_shore_examples():
    assert find_shore(petersen()) is None
    assert find_shore(complete(4)) is None
    half = delete_vertices(petersen(), [0])
    g, side = glue(half, half)
    s = find_shore(g)
    assert s is not None and len(s.boundary) == 3
    assert is_shore(g, s.side)


def test_shore_tie_break_is_least_side():
    half = delete_vertices(petersen(), [0])
    g, side = glue(half, half)
    shores = all_shores(g)
    best = [s for s in shores if len(s.boundary) == len(shores[0].boundary)]
    assert find_shore(g).side == min(best, key=lambda s: tuple(sorted(s.side))).side


def test_theta_examples():
    assert is_theta_connected(petersen())
    assert is_theta_connected(heawood())
    assert not is_theta_connected(cube())
    assert not is_theta_connected(prism(3))


def test_theta_needs_cubic():
    with pytest.raises(GraphError):
        is_theta_connected(cycle(5))


def test_exact_bound_reported():
    assert find_shore(dodecahedron()) is None  # 20 vertices, inside the bound
    big, _ = shore_k3()
    assert big.order > EXACT_LIMIT
    with pytest.raises(BoundExceeded):
        all_shores(big)


def test_theta_agrees_with_subset_oracle():
    for g in cubic_upto(12):
        assert is_theta_connected(g) == brute_theta_connected(g)


def test_push_shore_avoids_breaker():
    g = triangle_shore_instance()
    b = find_breakers(g)[0]
    y = push_shore(g, b)
    assert y is not None and not (y.side & b.vertex_set)
    assert is_shore(g, y.side)
    assert len(y.boundary) == len(all_shores(g)[0].boundary)


def test_push_shore_none_and_errors():
    g = truncated_heawood()
    assert push_shore(g, find_breakers(g)[0]) is None
    with pytest.raises(GraphError):
        push_shore(petersen(), Circuit.from_vertices(petersen(), [0, 1, 2, 3, 4]))


def test_cyclomatic():
    assert cyclomatic_number(petersen()) == 6
    assert cyclomatic_number(theta()) == 2


@given(multigraphs(max_n=8, max_m=14), st.data())
def test_symmetry_and_submodularity(g, data):
    vs = list(g.vertices)
    x = data.draw(st.sets(st.sampled_from(vs)))
    y = data.draw(st.sets(st.sampled_from(vs)))
    d = lambda s: len(edge_cut(g, s))
    assert set(edge_cut(g, x).boundary) == set(edge_cut(g, g.vertex_set - x).boundary)
    assert d(x & y) + d(x | y) <= d(x) + d(y)


def test_shores_replay_on_constructions():
    for g, side in (shore_k5(),):
        for s in all_shores(g):
            assert len(s.boundary) <= 5
            assert circuit_count_at_least_two(induced(g, s.side))
            assert circuit_count_at_least_two(induced(g, g.vertex_set - s.side))
