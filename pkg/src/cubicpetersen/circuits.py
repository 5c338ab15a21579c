"""Circuits, girth, short circuits, breakers and the interesting predicate."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

from .graph import GraphError, MultiGraph, is_cubic

SHORT = 5


@dataclass(frozen=True)
class Circuit:
    """A circuit as parallel cyclic sequences: ``edges[i]`` joins
    ``vertices[i]`` and ``vertices[(i + 1) % len]``."""

    vertices: tuple[int, ...]
    edges: tuple[int, ...]

    def __post_init__(self):
        if not self.edges or len(self.edges) != len(self.vertices):
            raise GraphError("a circuit needs as many vertices as edges, at least one")
        if len(set(self.vertices)) != len(self.vertices):
            raise GraphError("circuit repeats a vertex")
        if len(set(self.edges)) != len(self.edges):
            raise GraphError("circuit repeats an edge")

    def __len__(self):
        return len(self.edges)

    @property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertices)

    @property
    def edge_set(self) -> frozenset[int]:
        return frozenset(self.edges)

    @classmethod
    def from_vertices(cls, g: MultiGraph, seq) -> Circuit:
        """Build from a cyclic vertex sequence of a graph, keeping the given order.

        With parallel edges the least edge id is used for each step.
        """
        seq = tuple(seq)
        if len(seq) < 3:
            raise GraphError("use explicit edges for circuits of length < 3")
        edges = []
        for i, u in enumerate(seq):
            v = seq[(i + 1) % len(seq)]
            between = g.edges_between(u, v)
            if not between:
                raise GraphError(f"{u} and {v} are not adjacent")
            edges.append(min(between))
        return cls(seq, tuple(edges))

    def canonical(self) -> Circuit:
        """Least rotation/reflection of the vertex sequence."""
        n = len(self.vertices)
        best = None
        for direction in (1, -1):
            if direction == 1:
                vs, es = self.vertices, self.edges
            else:
                vs = tuple(reversed(self.vertices))
                # edge i joined v[i], v[i+1]; reversed, edge before each vertex
                es = tuple(reversed(self.edges[-1:] + self.edges[:-1]))
            for r in range(n):
                cand = (vs[r:] + vs[:r], es[r:] + es[:r])
                if best is None or cand < best:
                    best = cand
        return Circuit(best[0], best[1])

    def is_valid_in(self, g: MultiGraph) -> bool:
        n = len(self.vertices)
        for i, e in enumerate(self.edges):
            if e not in g.edges:
                return False
            a, b = self.vertices[i], self.vertices[(i + 1) % n]
            if g.edges[e] not in ((a, b), (b, a)):
                return False
        return True


def girth(g: MultiGraph) -> float:
    """Length of a shortest circuit; ``math.inf`` for forests."""
    best = math.inf
    seen = set()
    for u, v in g.edges.values():
        if u == v:
            return 1
        key = (min(u, v), max(u, v))
        if key in seen:
            best = 2
        seen.add(key)
    if best == 2:
        return 2
    adj = g.simple_adjacency
    for s in g.vertices:
        dist = {s: 0}
        parent = {s: None}
        q = deque([s])
        while q:
            x = q.popleft()
            if 2 * dist[x] + 1 >= best:
                break
            for y in adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    q.append(y)
                elif parent[x] != y:
                    best = min(best, dist[x] + dist[y] + 1)
    return best


def circuits_up_to(g: MultiGraph, max_len: int) -> list[Circuit]:
    """Every circuit with at most ``max_len`` edges, once each, canonical form,
    sorted by (length, vertices, edges)."""
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    found: dict[frozenset[int], Circuit] = {}
    inc = g.incidence
    for e, (u, v) in g.edges.items():
        if u == v:
            found[frozenset((e,))] = Circuit((u,), (e,))
    if max_len >= 2:
        for s in g.vertices:
            for i, (e1, a) in enumerate(inc[s]):
                for e2, b in inc[s][i + 1 :]:
                    if a == b and a != s and e1 != e2 and s < a:
                        found.setdefault(frozenset((e1, e2)), Circuit((s, a), (e1, e2)))
    if max_len >= 3:
        for s in g.vertices:
            path = [s]
            on_path = {s}
            epath: list[int] = []

            def dfs(x):
                for e, y in inc[x]:
                    if y == x or (epath and e == epath[-1]):
                        continue
                    if y == s:
                        if len(path) >= 3:
                            key = frozenset(epath + [e])
                            if key not in found:
                                found[key] = Circuit(tuple(path), tuple(epath + [e])).canonical()
                        continue
                    if y < s or y in on_path or len(path) >= max_len:
                        continue
                    path.append(y)
                    on_path.add(y)
                    epath.append(e)
                    dfs(y)
                    epath.pop()
                    on_path.discard(y)
                    path.pop()

            dfs(s)
    return sorted(found.values(), key=lambda c: (len(c), c.vertices, c.edges))


def all_circuits(g: MultiGraph) -> list[Circuit]:
    return circuits_up_to(g, max(g.order, 1))


def short_circuits(g: MultiGraph) -> list[Circuit]:
    return circuits_up_to(g, SHORT)


def meets(c1: Circuit, c2: Circuit) -> bool:
    return not c1.vertex_set.isdisjoint(c2.vertex_set)


def find_breakers(g: MultiGraph, shorts: list[Circuit] | None = None) -> list[Circuit]:
    """Short circuits meeting every short circuit of ``g``."""
    shorts = short_circuits(g) if shorts is None else shorts
    return [c for c in shorts if all(meets(c, d) for d in shorts)]


def is_interesting(g: MultiGraph) -> bool:
    """Cubic, at least ten vertices, and girth >= 6 or a breaker exists."""
    if g.order < 10 or not is_cubic(g):
        return False
    if girth(g) >= 6:
        return True
    return bool(find_breakers(g))


def pentagons(g: MultiGraph) -> list[Circuit]:
    return [c for c in circuits_up_to(g, 5) if len(c) == 5]


def pentagon_count(g: MultiGraph) -> int:
    return len(pentagons(g))
