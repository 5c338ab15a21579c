"""Edge boundaries, shores and theta-connectivity.

Shore and theta-connectivity searches are exact: every vertex subset is
scanned with vectorised boundary counts, so the cost is ``2**(n-1)``.
Graphs above :data:`EXACT_LIMIT` vertices raise :class:`BoundExceeded`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuits import Circuit, find_breakers, girth, is_interesting
from .graph import GraphError, MultiGraph, _check_vertices, is_cubic

EXACT_LIMIT = 26
_CHUNK_BITS = 20


class BoundExceeded(RuntimeError):
    """An exact search was asked to run beyond its documented size bound."""


@dataclass(frozen=True)
class Cut:
    side: frozenset[int]
    boundary: tuple[int, ...]

    def __len__(self):
        return len(self.boundary)


@dataclass(frozen=True)
class Shore:
    cut: Cut

    @property
    def side(self) -> frozenset[int]:
        return self.cut.side

    @property
    def boundary(self) -> tuple[int, ...]:
        return self.cut.boundary

    def sort_key(self):
        return (len(self.boundary), tuple(sorted(self.side)))


def edge_cut(g: MultiGraph, xs) -> Cut:
    xs = _check_vertices(g, xs)
    bd = tuple(e for e, (u, v) in g.edges.items() if (u in xs) != (v in xs))
    return Cut(xs, bd)


def cyclomatic_number(g: MultiGraph) -> int:
    return g.size - g.order + len(g.components())


def circuit_count_at_least_two(g: MultiGraph) -> bool:
    """Cyclomatic number 0 means no circuit, 1 exactly one, 2+ at least two."""
    return cyclomatic_number(g) >= 2


def _side_cyclomatic(g: MultiGraph, xs: frozenset[int]) -> int:
    inc = g.incidence
    seen: set[int] = set()
    comps = 0
    edges2 = 0  # each inner edge counted from both ends, loops twice at one end
    for s in xs:
        for _, w in inc[s]:
            if w in xs:
                edges2 += 1
        if s in seen:
            continue
        comps += 1
        stack = [s]
        seen.add(s)
        while stack:
            x = stack.pop()
            for _, y in inc[x]:
                if y in xs and y not in seen:
                    seen.add(y)
                    stack.append(y)
    return edges2 // 2 - len(xs) + comps


def is_shore(g: MultiGraph, xs, max_boundary: int = 5) -> bool:
    xs = _check_vertices(g, xs)
    if len(edge_cut(g, xs)) > max_boundary:
        return False
    rest = g.vertex_set - xs
    return _side_cyclomatic(g, xs) >= 2 and _side_cyclomatic(g, rest) >= 2


def _subset_scan(g: MultiGraph):
    """Yield ``(masks, boundary_sizes, popcounts)`` chunks over all subsets
    that exclude the highest-indexed vertex (complements cover the rest)."""
    n = g.order
    if n > EXACT_LIMIT:
        raise BoundExceeded(f"exact subset scan limited to {EXACT_LIMIT} vertices, got {n}")
    idx = {v: i for i, v in enumerate(g.vertices)}
    pairs = [(idx[u], idx[v]) for u, v in g.edges.values() if u != v]
    total = 1 << max(n - 1, 0)
    step = 1 << _CHUNK_BITS
    for start in range(0, total, step):
        masks = np.arange(start, min(total, start + step), dtype=np.uint32)
        bd = np.zeros(masks.shape, dtype=np.uint8)
        for a, b in pairs:
            bd += (((masks >> a) ^ (masks >> b)) & 1).astype(np.uint8)
        pop = np.zeros(masks.shape, dtype=np.uint8)
        for i in range(n):
            pop += ((masks >> i) & 1).astype(np.uint8)
        yield masks, bd, pop


def _mask_to_set(g: MultiGraph, mask: int) -> frozenset[int]:
    vs = g.vertices
    return frozenset(vs[i] for i in range(len(vs)) if mask >> i & 1)


def all_shores(g: MultiGraph, max_boundary: int = 5) -> list[Shore]:
    """Every shore (both X and V-X are reported), sorted by boundary size
    then by the sorted vertex tuple."""
    n = g.order
    cubic = is_cubic(g)
    out = []
    full = frozenset(g.vertices)
    for masks, bd, pop in _subset_scan(g):
        ok = (bd <= max_boundary) & (pop > 0)
        for i in np.flatnonzero(ok):
            m = int(masks[i])
            b = int(bd[i])
            size = int(pop[i])
            xs = _mask_to_set(g, m)
            rest = full - xs
            # in a cubic graph a side of size s with boundary b has cyclomatic
            # number (s - b)/2 + components, so s - b >= 2 settles it
            if cubic and size - b >= 2:
                left = True
            else:
                left = _side_cyclomatic(g, xs) >= 2
            if not left:
                continue
            if cubic and (n - size) - b >= 2:
                right = True
            else:
                right = _side_cyclomatic(g, rest) >= 2
            if right:
                cut = edge_cut(g, xs)
                out.append(Shore(cut))
                out.append(Shore(edge_cut(g, rest)))
    out.sort(key=Shore.sort_key)
    return out


def find_shore(g: MultiGraph, max_boundary: int = 5) -> Shore | None:
    """A shore of minimum boundary size, ties broken by the lexicographically
    least sorted vertex tuple; ``None`` if there is none."""
    shores = all_shores(g, max_boundary)
    return shores[0] if shores else None


def _theta_direct(g: MultiGraph) -> bool:
    n = g.order
    for _, bd, pop in _subset_scan(g):
        bad = (pop >= 7) & (n - pop.astype(np.int64) >= 7) & (bd <= 5)
        if bad.any():
            return False
    return True


def is_theta_connected(g: MultiGraph, method: str = "direct") -> bool:
    """Girth >= 5 and |delta(X)| >= 6 whenever both sides have >= 7 vertices.

    ``method="direct"`` scans the cut condition itself; ``method="shores"``
    decides it as girth >= 5 plus absence of a shore.
    """
    if not is_cubic(g):
        raise GraphError("theta-connectivity is defined for cubic graphs")
    if girth(g) < 5:
        return False
    if method == "direct":
        return _theta_direct(g)
    if method == "shores":
        return find_shore(g) is None
    raise ValueError(f"unknown method {method!r}")


def push_shore(g: MultiGraph, c: Circuit) -> Shore | None:
    """Among shores of least boundary size, one avoiding the breaker ``c``.

    The selection minimises |Y ∩ V(c)| after |delta(Y)|, then takes the least
    vertex tuple; for an interesting graph the intersection is always empty.
    """
    if not is_interesting(g):
        raise GraphError("push_shore expects an interesting graph")
    if c.canonical() not in find_breakers(g):
        raise GraphError("push_shore expects a breaker of g")
    shores = all_shores(g)
    if not shores:
        return None
    k = len(shores[0].boundary)
    cv = c.vertex_set
    best = [s for s in shores if len(s.boundary) == k]
    return min(best, key=lambda s: (len(s.side & cv), tuple(sorted(s.side))))
