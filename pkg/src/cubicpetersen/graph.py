"""Multigraph model, editing operations and catalog ingestion.

Graphs are immutable. Every edit returns a new graph; vertex and edge ids
survive edits so that witnesses can always be read against the original.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path


class GraphError(ValueError):
    """Unknown vertex/edge or an operation applied outside its domain."""


class ParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class MultiGraph:
    """Finite multigraph; loops and parallel edges allowed.

    ``edges`` maps an integer edge id to its endpoint pair ``(u, v)``; a loop
    has ``u == v`` and contributes 2 to the degree of its vertex.
    """

    __slots__ = ("_vertices", "_edges", "name", "__dict__")

    def __init__(
        self,
        vertices: Iterable[int] = (),
        edges: Mapping[int, tuple[int, int]] | Iterable[tuple[int, int]] = (),
        name: str | None = None,
    ):
        vs = frozenset(vertices)
        if isinstance(edges, Mapping):
            es = {int(e): (u, v) for e, (u, v) in edges.items()}
        else:
            es = {i: (u, v) for i, (u, v) in enumerate(edges)}
        for e, (u, v) in es.items():
            if u not in vs or v not in vs:
                raise GraphError(f"edge {e} has an endpoint outside the vertex set")
        self._vertices = vs
        self._edges = dict(sorted(es.items()))
        self.name = name

    @classmethod
    def from_edges(cls, pairs: Iterable[tuple[int, int]], n: int | None = None, name=None):
        pairs = list(pairs)
        vs = set(range(n)) if n is not None else set()
        for u, v in pairs:
            vs.update((u, v))
        return cls(vs, pairs, name=name)

    # -- basic queries -------------------------------------------------------

    @cached_property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted(self._vertices))

    @property
    def vertex_set(self) -> frozenset[int]:
        return self._vertices

    @property
    def edges(self) -> dict[int, tuple[int, int]]:
        return self._edges

    @property
    def order(self) -> int:
        return len(self._vertices)

    @property
    def size(self) -> int:
        return len(self._edges)

    def endpoints(self, e: int) -> tuple[int, int]:
        try:
            return self._edges[e]
        except KeyError:
            raise GraphError(f"unknown edge {e}") from None

    @cached_property
    def incidence(self) -> dict[int, tuple[tuple[int, int], ...]]:
        """vertex -> ((edge id, other end), ...); a loop is listed twice."""
        inc: dict[int, list[tuple[int, int]]] = {v: [] for v in self._vertices}
        for e, (u, v) in self._edges.items():
            inc[u].append((e, v))
            inc[v].append((e, u))
        return {v: tuple(lst) for v, lst in inc.items()}

    def degree(self, v: int) -> int:
        try:
            return len(self.incidence[v])
        except KeyError:
            raise GraphError(f"unknown vertex {v}") from None

    def neighbors(self, v: int) -> set[int]:
        return {w for _, w in self.incidence[v]}

    def edges_between(self, u: int, v: int) -> list[int]:
        return [e for e, (a, b) in self._edges.items() if (a, b) in ((u, v), (v, u))]

    def has_vertex(self, v) -> bool:
        return v in self._vertices

    @cached_property
    def simple_adjacency(self) -> dict[int, frozenset[int]]:
        return {v: frozenset(w for _, w in inc if w != v) for v, inc in self.incidence.items()}

    def is_simple(self) -> bool:
        seen = set()
        for u, v in self._edges.values():
            if u == v:
                return False
            key = (u, v) if u < v else (v, u)
            if key in seen:
                return False
            seen.add(key)
        return True

    def components(self) -> list[frozenset[int]]:
        seen: set[int] = set()
        comps = []
        for s in self.vertices:
            if s in seen:
                continue
            stack, comp = [s], {s}
            seen.add(s)
            while stack:
                x = stack.pop()
                for _, y in self.incidence[x]:
                    if y not in seen:
                        seen.add(y)
                        comp.add(y)
                        stack.append(y)
            comps.append(frozenset(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def next_vertex_id(self) -> int:
        return max(self._vertices, default=-1) + 1

    def next_edge_id(self) -> int:
        return max(self._edges, default=-1) + 1

    # -- structural edits (all return new graphs) ----------------------------

    def with_edges(self, pairs: Iterable[tuple[int, int]], new_vertices: Iterable[int] = ()):
        """Add vertices and edges; new edges get fresh consecutive ids."""
        vs = set(self._vertices) | set(new_vertices)
        es = dict(self._edges)
        nxt = self.next_edge_id()
        for u, v in pairs:
            es[nxt] = (u, v)
            nxt += 1
        return MultiGraph(vs, es, name=self.name)

    def relabeled(self, mapping: Mapping[int, int]) -> MultiGraph:
        return MultiGraph(
            (mapping[v] for v in self._vertices),
            {e: (mapping[u], mapping[v]) for e, (u, v) in self._edges.items()},
            name=self.name,
        )

    def canonical_copy(self) -> MultiGraph:
        """Relabel vertices 0..n-1 and edges 0..m-1 in sorted order."""
        idx = {v: i for i, v in enumerate(self.vertices)}
        return MultiGraph(
            range(len(idx)),
            [(idx[u], idx[v]) for u, v in self._edges.values()],
            name=self.name,
        )

    def edge_key_multiset(self) -> list[tuple[int, int]]:
        return sorted((min(u, v), max(u, v)) for u, v in self._edges.values())

    def __eq__(self, other):
        if not isinstance(other, MultiGraph):
            return NotImplemented
        return self._vertices == other._vertices and self._edges == other._edges

    def __hash__(self):
        return hash((self._vertices, tuple(self._edges.items())))

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<MultiGraph{label} n={self.order} m={self.size}>"


@dataclass(frozen=True)
class GraphRecord:
    graph: MultiGraph
    source: str

    def __post_init__(self):
        if not self.source:
            raise ValueError("GraphRecord.source must be non-empty")


# -- predicates and edits -----------------------------------------------------


def is_cubic(g: MultiGraph) -> bool:
    return all(len(inc) == 3 for inc in g.incidence.values())


def min_degree(g: MultiGraph) -> int:
    return min((len(inc) for inc in g.incidence.values()), default=0)


def _check_vertices(g: MultiGraph, xs) -> frozenset[int]:
    xs = frozenset(xs)
    bad = xs - g.vertex_set
    if bad:
        raise GraphError(f"unknown vertices {sorted(bad)}")
    return xs


def delete_edge(g: MultiGraph, e: int) -> MultiGraph:
    g.endpoints(e)
    es = dict(g.edges)
    del es[e]
    return MultiGraph(g.vertex_set, es, name=g.name)


def delete_edges(g: MultiGraph, es_: Iterable[int]) -> MultiGraph:
    es = dict(g.edges)
    for e in es_:
        g.endpoints(e)
        es.pop(e, None)
    return MultiGraph(g.vertex_set, es, name=g.name)


def delete_vertices(g: MultiGraph, xs: Iterable[int]) -> MultiGraph:
    xs = _check_vertices(g, xs)
    if not xs:
        return g
    keep = g.vertex_set - xs
    es = {e: (u, v) for e, (u, v) in g.edges.items() if u in keep and v in keep}
    return MultiGraph(keep, es, name=g.name)


def induced(g: MultiGraph, xs: Iterable[int]) -> MultiGraph:
    """The subgraph G|X, i.e. G with V(G) - X deleted."""
    xs = _check_vertices(g, xs)
    return delete_vertices(g, g.vertex_set - xs)


def contract_edge(g: MultiGraph, e: int) -> MultiGraph:
    """Merge the ends of a non-loop edge; the first endpoint survives.

    Other edges between the two ends become loops at the survivor.
    """
    u, v = g.endpoints(e)
    if u == v:
        raise GraphError(f"edge {e} is a loop; delete it instead of contracting")
    es = {}
    for f, (a, b) in g.edges.items():
        if f == e:
            continue
        es[f] = (u if a == v else a, u if b == v else b)
    return MultiGraph(g.vertex_set - {v}, es, name=g.name)


def subdivide_edge(g: MultiGraph, e: int, new_vertex: int | None = None) -> tuple[MultiGraph, int]:
    """Replace ``e`` by a path of length two; returns (graph, new vertex)."""
    u, v = g.endpoints(e)
    w = g.next_vertex_id() if new_vertex is None else new_vertex
    if w in g.vertex_set:
        raise GraphError(f"vertex {w} already exists")
    es = dict(g.edges)
    es[e] = (u, w)
    es[g.next_edge_id()] = (w, v)
    return MultiGraph(g.vertex_set | {w}, es, name=g.name), w


class _Tracer:
    """Tracks, for every surviving edge, the vertex path it stands for in the
    original graph. Used to lift reductions back to subdivision witnesses."""

    def __init__(self, g: MultiGraph):
        self.paths = {e: (u, v) for e, (u, v) in g.edges.items()}
        self.edge_paths = {e: (e,) for e in g.edges}

    def oriented(self, e: int, start: int):
        p, q = self.paths[e], self.edge_paths[e]
        if p[0] == start:
            return p, q
        return tuple(reversed(p)), tuple(reversed(q))


def _suppress(g: MultiGraph, tracer: _Tracer | None) -> MultiGraph:
    vs = set(g.vertex_set)
    es = dict(g.edges)
    inc: dict[int, list[int]] = {v: [] for v in vs}
    for e, (u, v) in es.items():
        inc[u].append(e)
        inc[v].append(e)
    nxt = g.next_edge_id()
    queue = sorted(v for v in vs if len(inc[v]) == 2)
    while queue:
        x = queue.pop(0)
        if x not in vs or len(inc[x]) != 2:
            continue
        e1, e2 = inc[x]
        if e1 == e2:
            # a vertex whose only edge is a loop: the vertex vanishes
            del es[e1]
            vs.discard(x)
            del inc[x]
            continue
        a = es[e1][0] if es[e1][1] == x else es[e1][1]
        b = es[e2][0] if es[e2][1] == x else es[e2][1]
        del es[e1], es[e2]
        vs.discard(x)
        del inc[x]
        inc[a].remove(e1)
        inc[b].remove(e2)
        f = nxt
        nxt += 1
        es[f] = (a, b)
        inc[a].append(f)
        inc[b].append(f)
        if tracer is not None:
            p1, q1 = tracer.oriented(e1, a)
            p2, q2 = tracer.oriented(e2, x)
            tracer.paths[f] = p1 + p2[1:]
            tracer.edge_paths[f] = q1 + q2
        for y in (a, b):
            if len(inc[y]) == 2:
                queue.append(y)
    return MultiGraph(vs, es, name=g.name)


def suppress_degree_two(g: MultiGraph) -> MultiGraph:
    """Suppress every degree-2 vertex until none remains.

    A degree-2 vertex carrying a single loop is removed together with the
    loop, so a bare circuit suppresses to the empty graph.
    """
    return _suppress(g, None)


def _prune_low_degree(g: MultiGraph) -> MultiGraph:
    vs = set(g.vertex_set)
    es = dict(g.edges)
    deg = {v: g.degree(v) for v in vs}
    stack = [v for v in vs if deg[v] <= 1]
    inc = {v: [e for e, _ in g.incidence[v]] for v in vs}
    while stack:
        x = stack.pop()
        if x not in vs:
            continue
        for e in inc[x]:
            if e in es:
                a, b = es.pop(e)
                y = b if a == x else a
                if y != x:
                    deg[y] -= 1
                    if deg[y] <= 1:
                        stack.append(y)
        vs.discard(x)
    return MultiGraph(vs, es, name=g.name)


def reduce_delete(g: MultiGraph, e: int) -> MultiGraph:
    """Delete ``e``, strip vertices of degree <= 1, suppress degree-2 vertices."""
    if not is_cubic(g):
        raise GraphError("reduce_delete expects a cubic graph")
    return _suppress(_prune_low_degree(delete_edge(g, e)), None)


def reduce_delete_traced(g: MultiGraph, e: int):
    """Like :func:`reduce_delete`, also returning the host path behind every
    edge of the result as ``{edge id: (vertex path, edge path)}``."""
    if not is_cubic(g):
        raise GraphError("reduce_delete expects a cubic graph")
    tracer = _Tracer(g)
    h = _suppress(_prune_low_degree(delete_edge(g, e)), tracer)
    return h, {f: (tracer.paths[f], tracer.edge_paths[f]) for f in h.edges}


# -- graph6 / sparse6 -------------------------------------------------------------


def _decode_n(data: bytes, pos: int) -> tuple[int, int]:
    if pos >= len(data):
        raise ParseError("missing vertex count", pos)
    c = data[pos]
    if c < 63 or c > 126:
        raise ParseError(f"invalid character {chr(c)!r}", pos)
    if c != 126:
        return c - 63, pos + 1
    if pos + 1 < len(data) and data[pos + 1] == 126:
        need, start = 6, pos + 2
    else:
        need, start = 3, pos + 1
    if start + need > len(data):
        raise ParseError("truncated vertex count", len(data))
    n = 0
    for i in range(start, start + need):
        c = data[i]
        if c < 63 or c > 126:
            raise ParseError(f"invalid character {chr(c)!r}", i)
        n = (n << 6) | (c - 63)
    return n, start + need


def _encode_n(n: int) -> bytes:
    if n < 63:
        return bytes([n + 63])
    if n < 258048:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])


def _bits(data: bytes, start: int):
    for i in range(start, len(data)):
        c = data[i]
        if c < 63 or c > 126:
            raise ParseError(f"invalid character {chr(c)!r}", i)
        x = c - 63
        for s in range(5, -1, -1):
            yield (x >> s) & 1, i


def parse_graph6(line: str | bytes, name: str | None = None) -> MultiGraph:
    """Decode a graph6 or sparse6 record (sparse6 lines start with ``:``).

    Vertex ids are ``0..n-1``; edge ids follow the encoding order.
    """
    data = line.encode() if isinstance(line, str) else bytes(line)
    data = data.strip()
    if data.startswith(b">>graph6<<"):
        data = data[10:]
    elif data.startswith(b">>sparse6<<"):
        data = data[11:]
    if data.startswith(b":"):
        return _parse_sparse6(data, name)
    if data.startswith(b";"):
        raise ParseError("incremental sparse6 is not supported", 0)
    n, pos = _decode_n(data, 0)
    need = n * (n - 1) // 2
    nbytes = (need + 5) // 6
    if len(data) - pos != nbytes:
        raise ParseError(f"expected {nbytes} adjacency bytes, got {len(data) - pos}", pos)
    pairs = []
    it = _bits(data, pos)
    for j in range(1, n):
        for i in range(j):
            bit, _ = next(it)
            if bit:
                pairs.append((i, j))
    for bit, off in it:
        if bit:
            raise ParseError("nonzero padding bits", off)
    return MultiGraph.from_edges(pairs, n=n, name=name)


def _parse_sparse6(data: bytes, name) -> MultiGraph:
    n, pos = _decode_n(data, 1)
    k = max(1, (n - 1).bit_length())
    bits = list(_bits(data, pos))
    pairs = []
    v = 0
    i = 0
    while i < len(bits):
        b, off = bits[i]
        i += 1
        if i + k > len(bits):
            break
        x = 0
        for _ in range(k):
            x = (x << 1) | bits[i][0]
            i += 1
        if b:
            v += 1
        if x >= n or v >= n:
            break
        if x > v:
            v = x
        else:
            pairs.append((x, v))
    return MultiGraph.from_edges(pairs, n=n, name=name)


def _pack(bits: list[int]) -> bytes:
    while len(bits) % 6:
        bits.append(0)
    return bytes(
        63 + int("".join(map(str, bits[i : i + 6])), 2) for i in range(0, len(bits), 6)
    )


def to_graph6(g: MultiGraph) -> str:
    """graph6 encoding (simple graphs only); vertices ordered by id."""
    if not g.is_simple():
        raise GraphError("graph6 cannot encode loops or parallel edges; use sparse6")
    idx = {v: i for i, v in enumerate(g.vertices)}
    n = len(idx)
    adj = {(min(idx[u], idx[v]), max(idx[u], idx[v])) for u, v in g.edges.values()}
    bits = [1 if (i, j) in adj else 0 for j in range(1, n) for i in range(j)]
    return (_encode_n(n) + _pack(bits)).decode()


def to_sparse6(g: MultiGraph) -> str:
    idx = {v: i for i, v in enumerate(g.vertices)}
    n = len(idx)
    k = max(1, (n - 1).bit_length())
    edges = sorted((max(idx[u], idx[v]), min(idx[u], idx[v])) for u, v in g.edges.values())
    bits: list[int] = []

    def put(x):
        bits.extend((x >> s) & 1 for s in range(k - 1, -1, -1))

    cur = 0
    for v, u in edges:
        if v == cur:
            bits.append(0)
            put(u)
        elif v == cur + 1:
            cur = v
            bits.append(1)
            put(u)
        else:
            cur = v
            bits.append(1)
            put(v)
            bits.append(0)
            put(u)
    pad = (-len(bits)) % 6
    if k < 6 and n == (1 << k) and pad >= k and cur < n - 1:
        # trailing 1-bits would otherwise decode as a loop at n-1
        bits.append(0)
    bits.extend([1] * ((-len(bits)) % 6))
    return ":" + (_encode_n(n) + _pack(bits)).decode()


# -- adjacency-list text format -------------------------------------------------


def parse_adjacency(text: str, name: str | None = None) -> MultiGraph:
    """Header ``n m`` then ``m`` lines ``u v`` (0-indexed). ``#`` starts a comment."""
    rows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append(line.split())
    if not rows or len(rows[0]) != 2:
        raise ParseError("missing 'n m' header", 0)
    try:
        n, m = int(rows[0][0]), int(rows[0][1])
        pairs = [(int(a), int(b)) for a, b in rows[1:]]
    except ValueError as exc:
        raise ParseError(f"non-integer token: {exc}", 0) from None
    if len(pairs) != m:
        raise ParseError(f"header promises {m} edges, found {len(pairs)}", 0)
    for u, v in pairs:
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"edge ({u}, {v}) out of range", 0)
    return MultiGraph.from_edges(pairs, n=n, name=name)


def to_adjacency(g: MultiGraph) -> str:
    idx = {v: i for i, v in enumerate(g.vertices)}
    lines = [f"{g.order} {g.size}"]
    lines += [f"{idx[u]} {idx[v]}" for u, v in g.edges.values()]
    return "\n".join(lines) + "\n"


def read_catalog(path: str | Path):
    """Yield ``GraphRecord`` for every non-blank line of a graph6/sparse6 file."""
    path = Path(path)
    with path.open("rb") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            src = f"{path.name}:{lineno}"
            yield GraphRecord(parse_graph6(line, name=src), src)


def load_graph_file(path: str | Path) -> MultiGraph:
    """Load the first graph of a graph6/sparse6 file or an adjacency-list file."""
    path = Path(path)
    text = path.read_text()
    first = next((ln for ln in text.splitlines() if ln.strip()), "")
    head = first.split("#", 1)[0].split()
    if len(head) == 2 and all(t.lstrip("-").isdigit() for t in head):
        return parse_adjacency(text, name=path.name)
    return parse_graph6(first, name=path.name)
