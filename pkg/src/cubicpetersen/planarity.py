"""Planar embeddings as rotation systems, faces, apex and doublecross tests.

A dart is ``(edge id, end)``: it leaves ``edges[e][end]`` and enters the other
end. An embedding stores, for every vertex, the cyclic order of the darts
leaving it. Planarity itself is decided by networkx's left-right test; the
rotation it returns is translated into darts and re-checked with Euler's
formula before being handed out.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import networkx as nx

from .circuits import girth, pentagon_count
from .cuts import BoundExceeded
from .graph import GraphError, MultiGraph, delete_edges, delete_vertices, is_cubic

Dart = tuple[int, int]
DOUBLECROSS_MAX_EDGES = 60


class EmbeddingError(ValueError):
    pass


@dataclass(frozen=True)
class Embedding:
    graph: MultiGraph
    rotation: dict[int, tuple[Dart, ...]]
    outer_face: tuple[Dart, ...] | None = None

    def head(self, d: Dart) -> int:
        e, i = d
        return self.graph.edges[e][1 - i]

    def tail(self, d: Dart) -> int:
        e, i = d
        return self.graph.edges[e][i]


def _nx_view(g: MultiGraph):
    """networkx graph on which planarity of ``g`` can be decided; parallel
    edges and loops are subdivided so the view is simple."""
    h = nx.Graph()
    h.add_nodes_from(("v", v) for v in g.vertices)
    subdivided = not g.is_simple()
    for e, (u, v) in g.edges.items():
        if not subdivided:
            h.add_edge(("v", u), ("v", v), eid=e)
        elif u == v:
            h.add_edge(("v", u), ("e", e, 0))
            h.add_edge(("e", e, 0), ("e", e, 1))
            h.add_edge(("e", e, 1), ("v", v))
        else:
            h.add_edge(("v", u), ("e", e, 0))
            h.add_edge(("e", e, 0), ("v", v))
    return h, subdivided


def _rotation_from_nx(g: MultiGraph, h, subdivided: bool, emb) -> dict[int, tuple[Dart, ...]]:
    rot = {}
    for v in g.vertices:
        darts = []
        for nb in emb.neighbors_cw_order(("v", v)):
            if not subdivided:
                e = h.edges[("v", v), nb]["eid"]
                u, w = g.edges[e]
                darts.append((e, 0 if u == v else 1))
            else:
                e = nb[1]
                u, w = g.edges[e]
                if u != w:
                    darts.append((e, 0 if u == v else 1))
                else:
                    darts.append((e, nb[2]))
        rot[v] = tuple(darts)
    return rot


def planar_embedding(g: MultiGraph) -> Embedding | None:
    """A rotation system of ``g`` if it is planar, otherwise ``None``."""
    h, subdivided = _nx_view(g)
    ok, emb = nx.check_planarity(h)
    if not ok:
        return None
    out = Embedding(g, _rotation_from_nx(g, h, subdivided, emb))
    check_euler(out)
    return out


def is_planar(g: MultiGraph) -> bool:
    h, _ = _nx_view(g)
    return nx.check_planarity(h)[0]


def faces(emb: Embedding) -> list[tuple[Dart, ...]]:
    """Face boundary walks as dart cycles; each dart lies on exactly one face."""
    g = emb.graph
    succ: dict[Dart, Dart] = {}
    seen_darts = set()
    for v, darts in emb.rotation.items():
        for i, d in enumerate(darts):
            if d[0] not in g.edges or emb.tail(d) != v:
                raise EmbeddingError(f"dart {d} listed at wrong vertex {v}")
            if d in seen_darts:
                raise EmbeddingError(f"dart {d} listed twice")
            seen_darts.add(d)
            succ[d] = darts[(i + 1) % len(darts)]
    expected = {(e, i) for e in g.edges for i in (0, 1)}
    if seen_darts != expected:
        raise EmbeddingError("rotation does not cover every dart exactly once")
    out = []
    used = set()
    for start in sorted(expected):
        if start in used:
            continue
        walk = []
        d = start
        while d not in used:
            used.add(d)
            walk.append(d)
            e, i = d
            d = succ[(e, 1 - i)]
        if d != start:
            raise EmbeddingError("face traversal does not close")
        out.append(tuple(walk))
    return out


def face_vertices(emb: Embedding, face: tuple[Dart, ...]) -> tuple[int, ...]:
    return tuple(emb.tail(d) for d in face)


def check_euler(emb: Embedding) -> None:
    """Assert V - E + F = 2 on every component (isolated vertices count one face)."""
    g = emb.graph
    fs = faces(emb)
    comp_of = {}
    comps = g.components()
    for i, c in enumerate(comps):
        for v in c:
            comp_of[v] = i
    f_count = [0] * len(comps)
    e_count = [0] * len(comps)
    for f in fs:
        f_count[comp_of[emb.tail(f[0])]] += 1
    for u, _ in g.edges.values():
        e_count[comp_of[u]] += 1
    for i, c in enumerate(comps):
        fc = f_count[i] if e_count[i] else 1
        if len(c) - e_count[i] + fc != 2:
            raise EmbeddingError(f"Euler's formula fails on component {i}")


def _is_circuit_walk(emb: Embedding, face) -> bool:
    vs = face_vertices(emb, face)
    return len(set(vs)) == len(vs)


def pentagonal_face_count(emb: Embedding) -> int:
    return sum(1 for f in faces(emb) if len(f) == 5 and _is_circuit_walk(emb, f))


def is_apex(g: MultiGraph) -> int | None:
    """A vertex whose deletion leaves a planar graph (least id), or ``None``."""
    if is_planar(g):
        return min(g.vertices, default=None)
    for v in g.vertices:
        if is_planar(delete_vertices(g, [v])):
            return v
    return None


def _require_cubic_girth5(g: MultiGraph):
    if not is_cubic(g):
        raise GraphError("bound applies to cubic graphs")
    if girth(g) < 5:
        raise GraphError("bound applies to graphs of girth at least five")


def apex_pentagon_bound(g: MultiGraph) -> tuple[int, bool]:
    """(pentagon count, count >= 6) for a cubic apex graph of girth >= 5."""
    _require_cubic_girth5(g)
    if is_apex(g) is None:
        raise GraphError("graph is not apex")
    k = pentagon_count(g)
    return k, k >= 6


def apex_face_bound(g: MultiGraph) -> tuple[int, int]:
    """(apex vertex, pentagonal faces of an embedding of G minus that vertex).

    Counting faces in one embedding already gives six pentagons whenever the
    graph is cubic of girth >= 5, so this is a second, face-level check.
    """
    _require_cubic_girth5(g)
    v = is_apex(g)
    if v is None:
        raise GraphError("graph is not apex")
    emb = planar_embedding(delete_vertices(g, [v]))
    return v, pentagonal_face_count(emb)


# -- doublecross -------------------------------------------------------------------


@dataclass(frozen=True)
class DoublecrossWitness:
    removed: tuple[int, int, int, int]
    embedding: Embedding
    order: tuple[int, ...]  # u1, u2, v1, v2, u3, u4, v3, v4


_PATTERN = (0, 1, 0, 1, 2, 3, 2, 3)


def _normalise(labels) -> tuple[int, ...]:
    first: dict = {}
    return tuple(first.setdefault(x, len(first)) for x in labels)


def _pattern_forms(allow_reflection: bool) -> set[tuple[int, ...]]:
    seqs = [_PATTERN]
    if allow_reflection:
        seqs.append(tuple(reversed(_PATTERN)))
    forms = set()
    for s in seqs:
        for r in range(8):
            forms.add(_normalise(s[r:] + s[:r]))
    return forms


_FORMS = {flag: _pattern_forms(flag) for flag in (True, False)}
_PREFIXES = {flag: {f[:k] for f in forms for k in range(9)} for flag, forms in _FORMS.items()}


def _order_from_cycle(cycle_vertices, label_of, g: MultiGraph, removed, allow_reflection):
    """Rotate/reflect the endpoint sequence on a circuit into u1,u2,v1,v2,u3,u4,v3,v4."""
    ends = [v for v in cycle_vertices if v in label_of]
    if len(ends) != 8:
        return None
    directions = [ends, list(reversed(ends))] if allow_reflection else [ends]
    for seq in directions:
        for r in range(8):
            rot = seq[r:] + seq[:r]
            labs = [label_of[v] for v in rot]
            if _normalise(labs) == _PATTERN:
                # labels: positions 0/2 edge e1, 1/3 e2, 4/6 e3, 5/7 e4
                es = (labs[0], labs[1], labs[4], labs[5])
                return tuple(rot), es
    return None


def _faces_with_pattern(emb: Embedding, label_of, removed, allow_reflection):
    for f in faces(emb):
        if not _is_circuit_walk(emb, f):
            continue
        vs = face_vertices(emb, f)
        hit = _order_from_cycle(vs, label_of, emb.graph, removed, allow_reflection)
        if hit:
            return f, hit
    return None


def _circuits_through(gp: MultiGraph, label_of, allow_reflection):
    """Circuits of ``gp`` through all eight endpoints whose endpoint labels,
    read along the circuit, fit the crossing pattern. Yields vertex tuples
    with their edge tuples."""
    ends = sorted(label_of)
    s = ends[0]
    inc = gp.incidence
    prefixes = _PREFIXES[allow_reflection]
    path, epath, labs = [s], [], [label_of[s]]
    on = {s}

    def dfs(x):
        for e, y in inc[x]:
            if epath and e == epath[-1]:
                continue
            if y == s:
                if len(labs) == 8 and len(path) >= 3:
                    yield tuple(path), tuple(epath + [e])
                continue
            if y in on:
                continue
            pushed = y in label_of
            if pushed:
                labs.append(label_of[y])
                if _normalise(labs) not in prefixes:
                    labs.pop()
                    continue
            path.append(y)
            epath.append(e)
            on.add(y)
            yield from dfs(y)
            on.discard(y)
            epath.pop()
            path.pop()
            if pushed:
                labs.pop()

    seen = set()
    for vs, es in dfs(s):
        key = frozenset(es)
        if key not in seen:
            seen.add(key)
            yield vs, es


def _embed_with_outer_circuit(gp: MultiGraph, cyc_v, cyc_e) -> Embedding | None:
    """Embedding of ``gp`` in which the circuit bounds a face, or ``None``.

    A circuit bounds a face in some embedding iff adding a vertex joined to
    all of it keeps the graph planar. The circuit's edges are subdivided and
    the midpoints joined to the new vertex too, so the new vertex's rotation
    pins which side every dart lies on; pieces hanging inside its triangles
    attach at a single circuit vertex and are flipped to the other side.
    """
    h = nx.Graph()
    for v in gp.vertices:
        h.add_node(("v", v))
    on_cycle = set(cyc_e)
    for e, (u, v) in gp.edges.items():
        if e in on_cycle:
            continue
        if u == v or h.has_edge(("v", u), ("v", v)):
            return None  # multigraph remainders are out of reach here
        h.add_edge(("v", u), ("v", v), eid=e)
    z = ("z",)
    for e, v in zip(cyc_e, cyc_v):
        a, b = gp.edges[e]
        m = ("m", e)
        h.add_edge(("v", a), m, eid=e)
        h.add_edge(m, ("v", b), eid=e)
        h.add_edge(z, m)
        h.add_edge(z, ("v", v))
    ok, emb = nx.check_planarity(h)
    if not ok:
        return None
    cyc_set = set(cyc_v)
    k = len(cyc_v)
    rot = {}
    for v in gp.vertices:
        order = list(emb.neighbors_cw_order(("v", v)))
        darts = []
        zpos = None
        for nb in order:
            if nb == z:
                zpos = len(darts)
                darts.append(None)
                continue
            e = h.edges[("v", v), nb]["eid"]
            a, _ = gp.edges[e]
            darts.append((e, 0 if a == v else 1))
        if v in cyc_set:
            i = cyc_v.index(v)
            prev_e, next_e = cyc_e[(i - 1) % k], cyc_e[i]
            n = len(darts)
            ip = next(j for j, d in enumerate(darts) if d and d[0] == prev_e)
            inn = next(j for j, d in enumerate(darts) if d and d[0] == next_e)
            # walk forward from prev to next; decide whether z lies on that arc
            fwd, j = [], (ip + 1) % n
            while j != inn:
                fwd.append(j)
                j = (j + 1) % n
            bwd, j = [], (inn + 1) % n
            while j != ip:
                bwd.append(j)
                j = (j + 1) % n
            others = [darts[j] for j in fwd + bwd if darts[j] is not None]
            if zpos in fwd:
                darts = [darts[ip], darts[inn]] + others
            else:
                darts = [darts[ip]] + others + [darts[inn]]
        else:
            darts = [d for d in darts if d is not None]
        rot[v] = tuple(darts)
    out = Embedding(gp, rot)
    try:
        check_euler(out)
    except EmbeddingError:
        return None
    target = frozenset(cyc_e)
    for f in faces(out):
        if frozenset(d[0] for d in f) == target and len(f) == k:
            return Embedding(gp, rot, outer_face=f)
    return None


def is_doublecross(g: MultiGraph, allow_reflection: bool = True) -> DoublecrossWitness | None:
    """Search 4-edge sets whose deletion leaves a plane graph with outer
    circuit carrying the endpoints in the crossing order.

    Subsets are tried in increasing edge-id order; the first hit is returned.
    ``allow_reflection`` also accepts the mirrored endpoint order; since the
    mirrored pattern has the same shape, both modes give the same verdicts.
    """
    if g.size > DOUBLECROSS_MAX_EDGES:
        raise BoundExceeded(f"doublecross search limited to {DOUBLECROSS_MAX_EDGES} edges")
    if g.size < 4:
        return None
    for quad in combinations(sorted(g.edges), 4):
        ends = [g.edges[e] for e in quad]
        flat = [x for uv in ends for x in uv]
        if len(set(flat)) != 8:
            continue
        gp = delete_edges(g, quad)
        if not is_planar(gp):
            continue
        label_of = {x: e for e, uv in zip(quad, ends) for x in uv}
        probe = nx.Graph(_nx_view(gp)[0])
        probe.add_edges_from((("z",), ("v", x)) for x in flat)
        if not nx.check_planarity(probe)[0]:
            continue
        emb = planar_embedding(gp)
        hit = _faces_with_pattern(emb, label_of, quad, allow_reflection)
        if hit:
            f, (order, es) = hit
            return DoublecrossWitness(es, Embedding(gp, emb.rotation, outer_face=f), order)
        for cyc_v, cyc_e in _circuits_through(gp, label_of, allow_reflection):
            emb2 = _embed_with_outer_circuit(gp, list(cyc_v), list(cyc_e))
            if emb2 is None:
                continue
            vs = face_vertices(emb2, emb2.outer_face)
            got = _order_from_cycle(vs, label_of, gp, quad, allow_reflection)
            if got:
                order, es = got
                return DoublecrossWitness(es, emb2, order)
    return None


def verify_doublecross(g: MultiGraph, w: DoublecrossWitness, allow_reflection: bool = True) -> bool:
    """Replay a witness against the definition."""
    if len(set(w.removed)) != 4 or any(e not in g.edges for e in w.removed):
        return False
    gp = delete_edges(g, w.removed)
    emb = w.embedding
    if emb.graph != gp or emb.outer_face is None:
        return False
    try:
        check_euler(emb)
        fs = faces(emb)
    except EmbeddingError:
        return False
    if emb.outer_face not in fs or not _is_circuit_walk(emb, emb.outer_face):
        return False
    if len(set(w.order)) != 8:
        return False
    u1, u2, v1, v2, u3, u4, v3, v4 = w.order
    for e, (a, b) in zip(w.removed, ((u1, v1), (u2, v2), (u3, v3), (u4, v4))):
        if {a, b} != set(g.edges[e]):
            return False
    cyc = face_vertices(emb, emb.outer_face)
    pos = [cyc.index(x) if x in cyc else -1 for x in w.order]
    if -1 in pos:
        return False
    ranks = [sorted(pos).index(p) for p in pos]
    # cyclic order along the face, forwards (or backwards when reflections allowed)
    for seq in ([ranks, [(-r) % 8 for r in ranks]] if allow_reflection else [ranks]):
        if all((seq[i + 1] - seq[i]) % 8 == 1 for i in range(7)):
            return True
    return False


def doublecross_pentagon_bound(g: MultiGraph) -> tuple[int, bool]:
    """(pentagon count, count >= 6) for a cubic doublecross graph of girth >= 5."""
    _require_cubic_girth5(g)
    if is_doublecross(g) is None:
        raise GraphError("graph is not doublecross")
    k = pentagon_count(g)
    return k, k >= 6
