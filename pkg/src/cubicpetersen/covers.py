"""Admissible weightings, circuit covers, and five-fold Eulerian covers.

Small exact searches meant as oracles on graphs with a few dozen edges.
Edge sets are Python ints used as bitmasks over the graph's sorted edge ids.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import product

from .circuits import Circuit, all_circuits
from .containment import UNKNOWN, contains_petersen
from .flows import FlowNetwork
from .graph import GraphError, MultiGraph, ParseError, is_cubic

MAX_COVER_WEIGHT = 4
MAX_COVER_EDGES = 30
COVER_NODE_BUDGET = 2_000_000
MAX_CYCLE_DIM = 22

EdgeWeighting = dict  # edge id -> non-negative int


def parse_weighting(text: str) -> dict[int, int]:
    """Read ``edge_id weight`` lines; blank lines and ``#`` comments skipped."""
    p = {}
    offset = 0
    for raw in text.splitlines(keepends=True):
        line = raw.split("#", 1)[0].strip()
        here, offset = offset, offset + len(raw.encode())
        if not line:
            continue
        parts = line.split()
        try:
            e, w = map(int, parts)
        except ValueError:
            raise ParseError("expected 'edge_id weight'", here) from None
        if e in p:
            raise ParseError(f"edge {e} given twice", here)
        p[e] = w
    return p


def format_weighting(p: dict[int, int]) -> str:
    return "".join(f"{e} {w}\n" for e, w in sorted(p.items()))


def _check_domain(g: MultiGraph, p):
    missing = set(g.edges) - set(p)
    if missing:
        raise GraphError(f"weighting misses edges {sorted(missing)}")
    extra = set(p) - set(g.edges)
    if extra:
        raise GraphError(f"weighting names unknown edges {sorted(extra)}")


def admissibility(g: MultiGraph, p) -> tuple[bool, str]:
    """(verdict, reason). Parity is checked on vertex stars, which span the
    cut space over GF(2); the bound on each non-loop edge uv is checked by a
    minimum u-v cut with capacities p."""
    _check_domain(g, p)
    for e in g.edges:
        if p[e] < 0:
            return False, f"edge {e} has negative weight {p[e]}"
    for v in g.vertices:
        s = sum(p[e] for e, w in g.incidence[v] if w != v)
        if s % 2:
            return False, f"odd weight {s} on the star of vertex {v}"
    net = FlowNetwork()
    for v in g.vertices:
        net.cap[v]  # isolated vertices still exist in the network
    for e, (u, v) in g.edges.items():
        if u != v and p[e]:
            net.add_edge(u, v, p[e])
    for e, (u, v) in g.edges.items():
        if u == v or not p[e]:
            continue
        need = 2 * p[e]
        value, _ = net.max_flow(u, v, limit=need)
        if value < need:
            return False, f"a cut through edge {e} weighs {value} < {need}"
    return True, "admissible"


def is_admissible(g: MultiGraph, p) -> bool:
    return admissibility(g, p)[0]


# -- circuit covers ---------------------------------------------------------------


@dataclass(frozen=True)
class CircuitCover:
    circuits: tuple[tuple[Circuit, int], ...]  # (circuit, multiplicity)

    def edge_counts(self) -> Counter:
        out = Counter()
        for c, k in self.circuits:
            for e in c.edges:
                out[e] += k
        return out


def check_circuit_cover(g: MultiGraph, p, cover: CircuitCover) -> bool:
    for c, k in cover.circuits:
        if k < 1 or not c.is_valid_in(g):
            return False
    counts = cover.edge_counts()
    return all(counts[e] == p[e] for e in g.edges) and set(counts) <= set(g.edges)


def circuit_cover_exists(g: MultiGraph, p, budget: int = COVER_NODE_BUDGET):
    """A list of circuits using every edge e exactly p(e) times, None if no
    such list exists, or UNKNOWN past the size caps or the node budget."""
    ok, why = admissibility(g, p)
    if not ok:
        raise GraphError(f"weighting is not admissible: {why}")
    if max(p.values(), default=0) > MAX_COVER_WEIGHT or g.size > MAX_COVER_EDGES:
        return UNKNOWN
    eids = sorted(g.edges)
    bit = {e: i for i, e in enumerate(eids)}
    circs = all_circuits(g)
    masks = [sum(1 << bit[e] for e in c.edges) for c in circs]
    through = [[j for j, m in enumerate(masks) if m >> i & 1] for i in range(len(eids))]
    stars = []
    for v in g.vertices:
        stars.append([bit[e] for e, w in g.incidence[v] if w != v])

    r = [p[e] for e in eids]
    chosen: list[int] = []
    failed: set[tuple[int, ...]] = set()
    nodes = 0

    def stars_ok():
        for st in stars:
            if st:
                vals = [r[i] for i in st]
                if 2 * max(vals) > sum(vals):
                    return False
        return True

    def rec() -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise _OutOfBudget
        key = tuple(r)
        if key in failed:
            return False
        best = None
        for i, k in enumerate(r):
            if k:
                opts = [j for j in through[i] if all(r[t] for t in _bits(masks[j]))]
                if best is None or len(opts) < len(best[1]):
                    best = (i, opts)
                    if not opts:
                        break
        if best is None:
            return True
        for j in best[1]:
            idx = _bits(masks[j])
            for t in idx:
                r[t] -= 1
            chosen.append(j)
            if stars_ok() and rec():
                return True
            chosen.pop()
            for t in idx:
                r[t] += 1
        failed.add(key)
        return False

    try:
        found = rec()
    except _OutOfBudget:
        return UNKNOWN
    if not found:
        return None
    mult = Counter(chosen)
    return CircuitCover(tuple((circs[j], k) for j, k in sorted(mult.items())))


class _OutOfBudget(Exception):
    pass


_BITS_CACHE: dict[int, tuple[int, ...]] = {}


def _bits(m: int) -> tuple[int, ...]:
    out = _BITS_CACHE.get(m)
    if out is None:
        out = tuple(i for i in range(m.bit_length()) if m >> i & 1)
        _BITS_CACHE[m] = out
    return out


# -- cycle space ------------------------------------------------------------------


def cycle_space_basis(g: MultiGraph) -> tuple[list[int], list[int]]:
    """Fundamental cycles of a spanning forest as edge masks, and the edge ids
    in bit order."""
    eids = sorted(g.edges)
    bit = {e: i for i, e in enumerate(eids)}
    parent: dict[int, tuple[int, int] | None] = {}
    depth = {}
    basis = []
    for root in g.vertices:
        if root in parent:
            continue
        parent[root] = None
        depth[root] = 0
        stack = [root]
        while stack:
            x = stack.pop()
            for e, y in g.incidence[x]:
                if y not in parent:
                    parent[y] = (x, e)
                    depth[y] = depth[x] + 1
                    stack.append(y)
    tree = {pe[1] for pe in parent.values() if pe is not None}
    for e, (u, v) in g.edges.items():
        if e in tree:
            continue
        m = 1 << bit[e]
        a, b = u, v
        while a != b:
            if depth[a] < depth[b]:
                a, b = b, a
            x, f = parent[a]
            m ^= 1 << bit[f]
            a = x
        basis.append(m)
    return basis, eids


def even_subgraphs(g: MultiGraph) -> list[int]:
    """Every even subgraph as an edge mask (the whole cycle space)."""
    basis, _ = cycle_space_basis(g)
    space = [0]
    for b in basis:
        space += [s ^ b for s in space]
    return space


def is_bridgeless(g: MultiGraph) -> bool:
    basis, eids = cycle_space_basis(g)
    union = 0
    for b in basis:
        union |= b
    return g.is_connected() and union == (1 << len(eids)) - 1


def is_even_edge_set(g: MultiGraph, es) -> bool:
    deg = Counter()
    for e in es:
        u, v = g.endpoints(e)
        deg[u] += 1
        deg[v] += 1
    return all(d % 2 == 0 for d in deg.values())


# -- five Eulerian subgraphs ------------------------------------------------------


@dataclass(frozen=True)
class EulerianFiveCover:
    subgraphs: tuple[frozenset[int], ...]  # five edge sets, possibly empty


def check_five_cover(g: MultiGraph, cover: EulerianFiveCover) -> bool:
    if len(cover.subgraphs) != 5:
        return False
    counts = Counter(e for s in cover.subgraphs for e in s)
    if set(counts) - set(g.edges):
        return False
    return all(counts[e] == 2 for e in g.edges) and all(is_even_edge_set(g, s) for s in cover.subgraphs)


def five_eulerian_cover(g: MultiGraph, budget=None, check_petersen: bool = True):
    """Five even subgraphs covering every edge exactly twice, None if the
    exhaustive search finds none, UNKNOWN past the dimension bound.

    Four subgraphs are chosen in nondecreasing order; the fifth is then forced
    to be the set of edges covered once so far.
    """
    if not is_cubic(g):
        raise GraphError("five_eulerian_cover expects a cubic graph")
    if not is_bridgeless(g):
        raise GraphError("five_eulerian_cover expects a 2-edge-connected graph")
    if check_petersen:
        w = contains_petersen(g, budget)
        if w is UNKNOWN:
            return UNKNOWN
        if w is not None:
            raise GraphError("graph contains the Petersen graph")
    basis, eids = cycle_space_basis(g)
    if len(basis) > MAX_CYCLE_DIM:
        return UNKNOWN
    space = even_subgraphs(g)
    members = set(space)
    space.sort()
    full = (1 << len(eids)) - 1

    def rec(start, depth, c1, c2, picked):
        if depth == 4:
            if c1 != full:
                return None
            last = c1 & ~c2
            return picked + [last] if last in members else None
        for i in range(start, len(space)):
            a = space[i]
            if a & c2:
                continue
            out = rec(i, depth + 1, c1 | a, c2 | (c1 & a), picked + [a])
            if out is not None:
                return out
        return None

    found = rec(0, 0, 0, 0, [])
    if found is None:
        return None
    return EulerianFiveCover(tuple(frozenset(eids[i] for i in _bits(m)) for m in found))


# -- an uncoverable weighting -----------------------------------------------------


def find_uncoverable_weighting(g: MultiGraph, max_value: int = 2, budget: int = COVER_NODE_BUDGET):
    """Search weightings with values up to ``max_value`` for one that is
    admissible but has no circuit cover.

    Edges of odd weight must form an even subgraph, so candidates are built
    from an even subgraph (the odd part) plus even values elsewhere. Fewer
    zero entries are tried first, then smaller totals. Returns
    ``(weighting, nodes)`` or ``None``; raises if a cover search runs out of
    budget.
    """
    eids = sorted(g.edges)
    odd_vals = [v for v in range(1, max_value + 1) if v % 2]
    even_vals = [v for v in range(0, max_value + 1) if v % 2 == 0]
    cands = []
    for o in even_subgraphs(g):
        odd = [eids[i] for i in _bits(o)]
        rest = [e for e in eids if e not in set(odd)]
        for ov in product(odd_vals, repeat=len(odd)):
            for ev in product(even_vals, repeat=len(rest)):
                p = dict(zip(odd, ov))
                p.update(zip(rest, ev))
                cands.append((sum(1 for v in p.values() if v == 0), sum(p.values()), tuple(p[e] for e in eids)))
    cands.sort()
    tried = 0
    for _, _, vals in cands:
        p = dict(zip(eids, vals))
        if not any(vals) or not is_admissible(g, p):
            continue
        tried += 1
        res = circuit_cover_exists(g, p, budget)
        if res is UNKNOWN:
            raise RuntimeError("cover search ran out of budget")
        if res is None:
            return p, tried
    return None
