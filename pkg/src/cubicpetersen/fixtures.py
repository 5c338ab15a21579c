"""Named graphs used throughout the tests and the CLI."""

from __future__ import annotations

from functools import lru_cache
from importlib import resources
from itertools import combinations

from .graph import GraphError, MultiGraph, is_cubic, parse_adjacency, subdivide_edge


class FixtureUnavailable(LookupError):
    pass


def lcf(n: int, jumps: list[int], repeats: int, name: str | None = None) -> MultiGraph:
    """Hamiltonian cubic graph from LCF notation ``[jumps]^repeats``."""
    pairs = [(i, (i + 1) % n) for i in range(n)]
    seq = jumps * repeats
    for i, j in enumerate(seq):
        k = (i + j) % n
        if i < k:
            pairs.append((i, k))
    return MultiGraph.from_edges(pairs, n=n, name=name)


def complete(n: int) -> MultiGraph:
    return MultiGraph.from_edges(combinations(range(n), 2), n=n, name=f"K{n}")


def complete_bipartite(a: int, b: int) -> MultiGraph:
    pairs = [(i, a + j) for i in range(a) for j in range(b)]
    return MultiGraph.from_edges(pairs, n=a + b, name=f"K{a},{b}")


def cycle(n: int) -> MultiGraph:
    if n == 1:
        return MultiGraph([0], {0: (0, 0)}, name="C1")
    return MultiGraph.from_edges([(i, (i + 1) % n) for i in range(n)], n=n, name=f"C{n}")


def petersen() -> MultiGraph:
    """Outer pentagon 0..4, spokes i -- i+5, inner pentagram on 5..9."""
    pairs = [(i, (i + 1) % 5) for i in range(5)]
    pairs += [(i, i + 5) for i in range(5)]
    pairs += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return MultiGraph.from_edges(pairs, n=10, name="petersen")


def petersen_kneser() -> MultiGraph:
    """Kneser graph K(5,2): 2-subsets of {0..4}, adjacent when disjoint."""
    subsets = list(combinations(range(5), 2))
    pairs = [
        (i, j)
        for i, j in combinations(range(10), 2)
        if not set(subsets[i]) & set(subsets[j])
    ]
    return MultiGraph.from_edges(pairs, n=10, name="petersen_kneser")


def heawood() -> MultiGraph:
    return lcf(14, [5, -5], 7, name="heawood")


def dodecahedron() -> MultiGraph:
    return lcf(20, [10, 7, 4, -4, -7, 10, -4, 7, -7, 4], 2, name="dodecahedron")


def prism(k: int = 3) -> MultiGraph:
    pairs = [(i, (i + 1) % k) for i in range(k)]
    pairs += [(k + i, k + (i + 1) % k) for i in range(k)]
    pairs += [(i, k + i) for i in range(k)]
    return MultiGraph.from_edges(pairs, n=2 * k, name=f"prism{k}")


def cube() -> MultiGraph:
    pairs = [(u, u ^ (1 << b)) for u in range(8) for b in range(3) if u < u ^ (1 << b)]
    return MultiGraph.from_edges(pairs, n=8, name="Q3")


def theta() -> MultiGraph:
    """Two vertices joined by three parallel edges."""
    return MultiGraph([0, 1], [(0, 1)] * 3, name="theta")


def _induced_matchings(g: MultiGraph, size: int):
    edges = sorted(g.edges.items())

    def rec(start, chosen, blocked):
        if len(chosen) == size:
            yield list(chosen)
            return
        for i in range(start, len(edges)):
            e, (u, v) = edges[i]
            if u in blocked or v in blocked:
                continue
            # induced: no edge may join the new pair to a chosen pair
            nb = g.neighbors(u) | g.neighbors(v) | {u, v}
            chosen.append(e)
            yield from rec(i + 1, chosen, blocked | nb)
            chosen.pop()

    yield from rec(0, [], frozenset())


def apex_over(h: MultiGraph, matching: list[int]) -> tuple[MultiGraph, int]:
    """Subdivide each matching edge once and join a new hub to the new vertices."""
    g = h
    mids = []
    for e in matching:
        g, w = subdivide_edge(g, e)
        mids.append(w)
    hub = g.next_vertex_id()
    return g.with_edges([(hub, w) for w in mids], new_vertices=[hub]), hub


@lru_cache(maxsize=None)
def dodeca_apex_with_hub() -> tuple[MultiGraph, int, tuple[int, ...]]:
    """Dodecahedron + hub over the first induced 6-matching giving girth 6.

    Only matchings hitting every face work (each face needs one subdivided
    edge to grow past length five), so candidates are filtered by girth.
    """
    from .circuits import girth

    h = dodecahedron()
    for m in _induced_matchings(h, 6):
        g, hub = apex_over(h, m)
        if girth(g) == 6:
            g.name = "dodeca_apex"
            return g, hub, tuple(m)
    raise GraphError("no induced 6-matching of the dodecahedron yields girth 6")


def starfish() -> MultiGraph:
    try:
        text = resources.files("cubicpetersen").joinpath("data/starfish.adj").read_text()
    except (FileNotFoundError, OSError):
        raise FixtureUnavailable("starfish fixture unavailable: data/starfish.adj missing") from None
    g = parse_adjacency(text, name="starfish")
    validate_starfish(g)
    return g


def validate_starfish(g: MultiGraph) -> None:
    """Acceptance gate for supplied Starfish data: cubic, girth 5, and three
    pairwise vertex-disjoint pentagons."""
    from .circuits import girth, pentagons

    if not is_cubic(g) or girth(g) != 5:
        raise FixtureUnavailable("starfish data is not a cubic girth-5 graph")
    pents = pentagons(g)
    for a, b, c in combinations(pents, 3):
        if not (a.vertex_set & b.vertex_set or a.vertex_set & c.vertex_set or b.vertex_set & c.vertex_set):
            return
    raise FixtureUnavailable("starfish data lacks three pairwise disjoint pentagons")


def _figure2() -> MultiGraph:
    from .reduction import build_figure2, figure2_variants

    h = build_figure2(figure2_variants()[0]).reduced
    h.name = "figure2"
    return h


_BUILDERS = {
    "petersen": petersen,
    "heawood": heawood,
    "dodecahedron": dodecahedron,
    "dodeca_apex": lambda: dodeca_apex_with_hub()[0],
    "figure2": _figure2,
    "starfish": starfish,
    "k4": lambda: complete(4),
    "k33": lambda: complete_bipartite(3, 3),
    "prism": prism,
    "cube": cube,
}

FIXTURE_NAMES = tuple(_BUILDERS)


def fixture(name: str) -> MultiGraph:
    try:
        build = _BUILDERS[name]
    except KeyError:
        raise GraphError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURE_NAMES)}") from None
    return build()
