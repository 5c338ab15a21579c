"""Multigraph isomorphism by colour refinement and backtracking."""

from __future__ import annotations

from collections import Counter, deque
from collections.abc import Iterator

from .graph import MultiGraph


def _multiplicities(g: MultiGraph) -> dict[int, Counter]:
    mult = {v: Counter() for v in g.vertices}
    for u, v in g.edges.values():
        mult[u][v] += 1
        if u != v:
            mult[v][u] += 1
    return mult


def _refine_pair(g: MultiGraph, mg, h: MultiGraph, mh):
    """Stable colouring of both graphs with one shared palette, so equal
    colours mean equal refinement histories across the two graphs."""
    cg = {v: (len(g.incidence[v]), mg[v][v]) for v in g.vertices}
    ch = {v: (len(h.incidence[v]), mh[v][v]) for v in h.vertices}
    classes = -1
    while True:
        sg = {v: (cg[v], tuple(sorted((cg[w], k) for w, k in mg[v].items() if w != v))) for v in g.vertices}
        sh = {v: (ch[v], tuple(sorted((ch[w], k) for w, k in mh[v].items() if w != v))) for v in h.vertices}
        palette = {s: i for i, s in enumerate(sorted(set(sg.values()) | set(sh.values())))}
        cg = {v: palette[sg[v]] for v in g.vertices}
        ch = {v: palette[sh[v]] for v in h.vertices}
        if len(palette) == classes:
            return cg, ch
        classes = len(palette)


def _invariant(g: MultiGraph, colour) -> tuple:
    return (g.order, g.size, tuple(sorted(Counter(colour.values()).items())))


def iter_isomorphisms(g: MultiGraph, h: MultiGraph) -> Iterator[dict[int, int]]:
    """Yield every vertex bijection g -> h preserving edge multiplicities."""
    if g.order != h.order or g.size != h.size:
        return
    mg, mh = _multiplicities(g), _multiplicities(h)
    cg, ch = _refine_pair(g, mg, h, mh)
    if _invariant(g, cg) != _invariant(h, ch):
        return
    by_colour: dict = {}
    for v in h.vertices:
        by_colour.setdefault(ch[v], []).append(v)

    # BFS order inside components keeps every new vertex adjacent to the mapped part
    order: list[int] = []
    seen: set[int] = set()
    for s in sorted(g.vertices, key=lambda v: (len(by_colour.get(cg[v], ())), v)):
        if s in seen:
            continue
        seen.add(s)
        q = deque([s])
        while q:
            x = q.popleft()
            order.append(x)
            for w in sorted(mg[x]):
                if w not in seen:
                    seen.add(w)
                    q.append(w)

    fwd: dict[int, int] = {}
    used: set[int] = set()

    def consistent(x, y) -> bool:
        if mg[x][x] != mh[y][y]:
            return False
        for w, k in mg[x].items():
            if w != x and w in fwd and mh[y][fwd[w]] != k:
                return False
        # mapped neighbours of y must come from mapped neighbours of x
        mapped_nbrs = sum(1 for w in mg[x] if w != x and w in fwd)
        mapped_nbrs_h = sum(1 for w in mh[y] if w != y and w in used)
        return mapped_nbrs == mapped_nbrs_h

    def rec(i):
        if i == len(order):
            yield dict(fwd)
            return
        x = order[i]
        anchor = next((fwd[w] for w in mg[x] if w in fwd and w != x), None)
        cands = by_colour[cg[x]]
        if anchor is not None:
            cands = [y for y in cands if y in mh[anchor]]
        for y in cands:
            if y in used or not consistent(x, y):
                continue
            fwd[x] = y
            used.add(y)
            yield from rec(i + 1)
            del fwd[x]
            used.discard(y)

    yield from rec(0)


def find_isomorphism(g: MultiGraph, h: MultiGraph) -> dict[int, int] | None:
    return next(iter_isomorphisms(g, h), None)


def is_isomorphic(g: MultiGraph, h: MultiGraph) -> bool:
    return find_isomorphism(g, h) is not None


def automorphisms(g: MultiGraph) -> list[dict[int, int]]:
    return list(iter_isomorphisms(g, g))
