"""Subdivision (topological minor) containment with witnesses.

The search grows the pattern one edge at a time. A pattern edge whose ends
are both placed is realised by a host path through unused vertices; an edge
leading to an unplaced pattern vertex is realised by a path whose far end
becomes that vertex's branch image. After every realised edge a forward check
looks at remaining edge capacity at branch images and at whether the pending
edges can still be routed through the free part of the host.

Two symmetry reductions keep the exhaustive negative answers cheap:

* the root pattern vertex is tried at one host vertex per host orbit (orbits
  from whatever automorphisms refinement finds), and a host vertex that failed
  as root is barred from imaging anything in the root's pattern orbit;
* when the root's stabiliser permutes its incident pattern edges arbitrarily,
  those edges must leave the root image along increasing host edge ids.

Every call is exact up to a node budget; running out of budget gives the
:data:`UNKNOWN` outcome, never ``None``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from itertools import islice, permutations

import networkx as nx

from .certificates import SubdivisionWitness, check_witness
from .graph import MultiGraph
from .isomorphism import automorphisms, is_isomorphic, iter_isomorphisms  # noqa: F401 (is_isomorphic re-exported)

DEFAULT_BUDGET = 10**7
BUDGET_ENV = "CUBICPETERSEN_BUDGET"
_AUT_SAMPLE = 2000


class _Unknown:
    """Outcome of a search that ran out of budget. Truth-testing it is an
    error so it can't be mistaken for ``None``."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __bool__(self):
        raise TypeError("UNKNOWN has no truth value; compare with `is UNKNOWN`")

    def __repr__(self):
        return "UNKNOWN"


UNKNOWN = _Unknown()


class BudgetExceeded(RuntimeError):
    pass


@dataclass
class SearchResult:
    status: str  # "found" | "none" | "unknown"
    witness: SubdivisionWitness | None
    nodes: int

    @property
    def outcome(self):
        if self.status == "unknown":
            return UNKNOWN
        return self.witness


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    return int(raw) if raw else DEFAULT_BUDGET


# ---------------------------------------------------------------- pattern prep


@dataclass(frozen=True)
class _Plan:
    root: int
    steps: tuple  # ("open"|"close", eid, a, b) or ("place", None, None, b)
    root_edges: tuple[int, ...]  # root-incident pattern edges in step order
    root_orbit: frozenset[int]
    root_symmetric: bool
    nonplanar: bool  # the pattern itself is non-planar
    robust: bool  # every single vertex or edge deletion stays non-planar


def _edge_order(pattern: MultiGraph, root: int):
    placed = {root}
    done: set[int] = set()
    steps = []
    vs = pattern.vertices
    while len(done) < pattern.size or len(placed) < pattern.order:
        closing = [
            e for e, (a, b) in pattern.edges.items()
            if e not in done and a in placed and b in placed
        ]
        if closing:
            e = closing[0]
            a, b = pattern.endpoints(e)
            if b == root:
                a, b = b, a
            steps.append(("close", e, a, b))
            done.add(e)
            continue
        frontier = [
            (e, a, b) if a in placed else (e, b, a)
            for e, (a, b) in pattern.edges.items()
            if e not in done and (a in placed) != (b in placed)
        ]
        if frontier:
            def score(item):
                _, a, b = item
                links = sum(1 for _, w in pattern.incidence[b] if w in placed)
                return (-links, -pattern.degree(b), b, a)

            e, a, b = min(frontier, key=score)
            steps.append(("open", e, a, b))
            done.add(e)
            placed.add(b)
            continue
        b = next(v for v in vs if v not in placed)
        steps.append(("place", None, None, b))
        placed.add(b)
    return tuple(steps)


@lru_cache(maxsize=64)
def _plan_for(pattern: MultiGraph) -> _Plan:
    root = min(pattern.vertices, key=lambda v: (-pattern.degree(v), v))
    steps = _edge_order(pattern, root)
    auts = automorphisms(pattern) if pattern.order <= 12 else [
        {v: v for v in pattern.vertices}
    ]
    orbit = frozenset(a[root] for a in auts)
    root_edges = tuple(
        e for kind, e, a, b in steps if kind in ("open", "close") and root in (a, b)
    )
    # the stabiliser acts on neighbours; for a simple pattern this is the
    # action on root edges
    nbrs = sorted(w for _, w in pattern.incidence[root])
    symmetric = False
    if pattern.is_simple and len(nbrs) > 1:
        images = {tuple(a[w] for w in nbrs) for a in auts if a[root] == root}
        symmetric = images == set(permutations(nbrs))
    nonplanar = not _planar(pattern.vertices, pattern.edges.values())
    robust = nonplanar and all(
        not _planar([w for w in pattern.vertices if w != v],
                    [uv for uv in pattern.edges.values() if v not in uv])
        for v in pattern.vertices
    ) and all(
        not _planar(pattern.vertices, [uv for f, uv in pattern.edges.items() if f != e])
        for e in pattern.edges
    )
    return _Plan(root, steps, root_edges, orbit, symmetric, nonplanar, robust)


def _planar(vertices, pairs) -> bool:
    h = nx.Graph()
    h.add_nodes_from(vertices)
    h.add_edges_from((u, v) for u, v in pairs if u != v)
    return nx.check_planarity(h)[0]


# ---------------------------------------------------------------- host orbits


def _host_orbits(host: MultiGraph) -> dict[int, int]:
    """Vertex -> orbit representative, using a bounded sample of automorphisms
    (a subgroup's orbits refine the true ones, so this is always sound)."""
    parent = {v: v for v in host.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for aut in islice(iter_isomorphisms(host, host), _AUT_SAMPLE):
        for v, w in aut.items():
            rv, rw = find(v), find(w)
            if rv != rw:
                parent[max(rv, rw)] = min(rv, rw)
    return {v: find(v) for v in host.vertices}


# ---------------------------------------------------------------- search


class _Search:
    """Backtracking state over integer-indexed host and pattern."""

    def __init__(self, host: MultiGraph, pattern: MultiGraph, budget: int, planar_cuts: bool = True):
        self.host = host
        self.pattern = pattern
        self.plan = _plan_for(pattern)
        self.budget = budget
        self.nodes = 0

        self.hv = host.vertices
        hidx = {v: i for i, v in enumerate(self.hv)}
        self.heid = list(host.edges)
        n = self.n = len(self.hv)
        self.inc = [[] for _ in range(n)]
        for k, e in enumerate(self.heid):
            u, v = host.endpoints(e)
            self.inc[hidx[u]].append((k, hidx[v]))
            if u != v:
                self.inc[hidx[v]].append((k, hidx[u]))
            else:
                self.inc[hidx[u]].append((k, hidx[u]))
        self.hdeg = [len(x) for x in self.inc]

        self.pv = pattern.vertices
        pidx = {p: i for i, p in enumerate(self.pv)}
        np_ = len(self.pv)
        self.pdeg = [pattern.degree(p) for p in self.pv]
        self.padj = [[0] * np_ for _ in range(np_)]
        for a, b in pattern.edges.values():
            self.padj[pidx[a]][pidx[b]] += 1
            if a != b:
                self.padj[pidx[b]][pidx[a]] += 1
        plan = self.plan
        self.steps = [
            (kind, e, pidx[a] if a is not None else None, pidx[b])
            for kind, e, a, b in plan.steps
        ]
        self.root = pidx[plan.root]
        self.in_orbit = [p in plan.root_orbit for p in self.pv]
        self.root_edges = set(plan.root_edges) if plan.root_symmetric else set()
        self.hidx = hidx

        self.role = [0] * n  # 0 free, 1 branch, 2 interior
        self.used = bytearray(len(self.heid))
        self.img = [-1] * np_
        self.pre = [-1] * n
        self.pending = list(self.pdeg)
        self.unplaced = np_
        self.paths: dict[int, tuple[list[int], list[int]]] = {}
        self.banned = bytearray(n)
        self.root_first: list[int] = []
        self.planar_cuts = planar_cuts and self.plan.nonplanar

    def tick(self):
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(self.nodes)

    # forward check -----------------------------------------------------
    def feasible(self):
        """Propagate dead vertices and test routability; returns the usable
        mask of free vertices, or ``None`` when the state is hopeless."""
        n, role, inc, pre, pending, used = self.n, self.role, self.inc, self.pre, self.pending, self.used
        usable = bytearray(n)
        live = [0] * n
        stack = []
        for v in range(n):
            if role[v]:
                continue
            c = 0
            for _, y in inc[v]:
                r = role[y]
                if r == 0:
                    if y != v:
                        c += 1
                elif r == 1 and pending[pre[y]]:
                    c += 1
            live[v] = c
            if c >= 2:
                usable[v] = 1
            else:
                stack.append(v)
        # a free vertex with fewer than two live edges can only stay unused
        while stack:
            v = stack.pop()
            for _, y in inc[v]:
                if usable[y] and y != v:
                    live[y] -= 1
                    if live[y] < 2:
                        usable[y] = 0
                        stack.append(y)

        if self.unplaced:
            need = min(self.pdeg[q] for q in range(len(self.pv)) if self.img[q] < 0)
            if sum(1 for v in range(n) if usable[v] and live[v] >= need) < self.unplaced:
                return None

        comp = [-1] * n
        ncomp = 0
        for s in range(n):
            if not usable[s] or comp[s] >= 0:
                continue
            comp[s] = ncomp
            st = [s]
            while st:
                x = st.pop()
                for _, y in inc[x]:
                    if usable[y] and comp[y] < 0:
                        comp[y] = ncomp
                        st.append(y)
            ncomp += 1

        if self.paths and not self._no_shortcuts(usable):
            return None

        img, padj = self.img, self.padj
        touch = {}
        for p, x in enumerate(img):
            if x < 0 or not pending[p]:
                continue
            have = 0
            cs = set()
            row = padj[p]
            for k, y in inc[x]:
                if used[k]:
                    continue
                r = role[y]
                if r == 0:
                    if usable[y]:
                        have += 1
                        cs.add(comp[y])
                elif r == 1 and row[pre[y]] and (y != x or row[p]):
                    have += 1
            if have < pending[p]:
                return None
            touch[p] = cs

        for p, cs in touch.items():
            row = padj[p]
            x = img[p]
            for q in range(len(row)):
                if not row[q]:
                    continue
                if img[q] < 0:
                    continue
                if q == p:
                    continue  # pattern loops are rare; left to the path search
                if cs & touch[q]:
                    continue
                xq = img[q]
                if any(not used[k] and y == xq for k, y in inc[x]):
                    continue
                return None

        # an unplaced vertex's placed neighbours must reach one common component
        for q in range(len(img)):
            if img[q] >= 0:
                continue
            common = None
            for p, cs in touch.items():
                if padj[q][p]:
                    common = cs if common is None else common & cs
            if common is not None and not common:
                return None
        return usable

    def _no_shortcuts(self, usable) -> bool:
        """A vertex that is free but no longer usable stays unused, so a
        path that could be shortened through such vertices is never part of
        a witness with fewest edges."""
        role, inc, used = self.role, self.inc, self.used
        for vp, ep in self.paths.values():
            if len(vp) < 4:
                continue
            on = set(vp)
            if not any(
                role[y] == 0 and not usable[y] for x in vp for _, y in inc[x]
            ):
                continue
            own = set(ep)
            target = vp[-1]
            dist = {vp[0]: 0}
            frontier = [vp[0]]
            limit = len(ep) - 1
            d = 0
            while frontier and d < limit:
                d += 1
                nxt = []
                for x in frontier:
                    for k, y in inc[x]:
                        if y in dist:
                            continue
                        if y in on:
                            if used[k] and k not in own:
                                continue
                        elif role[y] != 0 or usable[y]:
                            continue
                        if y == target:
                            return False
                        dist[y] = d
                        nxt.append(y)
                frontier = nxt
        return True

    def _survivor_graph(self, usable):
        """Everything a completion could still use: path edges so far plus
        unused edges among usable free vertices and branch images that
        still need edges."""
        role, inc, used, pre, pending, padj = self.role, self.inc, self.used, self.pre, self.pending, self.padj
        h = nx.Graph()
        for v in range(self.n):
            r = role[v]
            if r == 2 or (r == 1) or usable[v]:
                h.add_node(v)
        for v in h:
            for k, y in inc[v]:
                if y <= v or y not in h:
                    continue
                if used[k]:
                    h.add_edge(v, y)
                    continue
                rv, ry = role[v], role[y]
                if rv == 2 or ry == 2:
                    continue
                if rv == 1 and not pending[pre[v]]:
                    continue
                if ry == 1 and not pending[pre[y]]:
                    continue
                if rv == 1 and ry == 1 and not padj[pre[v]][pre[y]]:
                    continue
                h.add_edge(v, y)
        return h

    def planar_ok(self, usable, fresh) -> bool:
        """A subdivision of a non-planar pattern needs a non-planar host
        part. When the pattern stays non-planar after deleting any vertex or
        edge, the survivor graph must also stay non-planar after deleting any
        single vertex."""
        h = self._survivor_graph(usable)
        if nx.check_planarity(h)[0]:
            return False
        if self.plan.robust:
            # S - y is non-planar for every y, used or not; testing only the
            # newly used vertices and the heavy ones keeps this cheap
            cand = set(fresh)
            cand.update(v for v, d in h.degree() if d >= 4)
            for y in sorted(cand):
                sub = h.copy()
                sub.remove_node(y)
                if nx.check_planarity(sub)[0]:
                    return False
        return True

    # moves -------------------------------------------------------------
    def place(self, p, x):
        self.img[p] = x
        self.pre[x] = p
        self.role[x] = 1
        self.unplaced -= 1

    def unplace(self, p, x):
        self.img[p] = -1
        self.pre[x] = -1
        self.role[x] = 0
        self.unplaced += 1

    def can_branch(self, p, x) -> bool:
        return (
            self.role[x] == 0
            and self.hdeg[x] >= self.pdeg[p]
            and not (self.banned[x] and self.in_orbit[p])
        )

    def run_from(self, x: int):
        r = self.root
        self.place(r, x)
        try:
            usable = self.feasible()
            if usable is not None and self.planar_cuts and not self.planar_ok(usable, (x,)):
                usable = None
            if usable is not None:
                yield from self.step(0, usable)
        finally:
            self.unplace(r, x)

    def step(self, i: int, usable):
        if i == len(self.steps):
            yield self.witness()
            return
        kind, e, a, b = self.steps[i]
        self.tick()
        if kind == "place":
            for x in range(self.n):
                if usable[x] and self.can_branch(b, x):
                    self.place(b, x)
                    nxt = self.feasible()
                    if nxt is not None and self.planar_cuts and not self.planar_ok(nxt, (x,)):
                        nxt = None
                    if nxt is not None:
                        yield from self.step(i + 1, nxt)
                    self.unplace(b, x)
            return
        for vpath, epath in self.paths_from(e, a, b, kind == "close", usable):
            yield from self.commit(i, e, a, b, kind, vpath, epath)

    def commit(self, i, e, a, b, kind, vpath, epath):
        role, used = self.role, self.used
        inner = vpath[1:-1]
        for y in inner:
            role[y] = 2
        for k in epath:
            used[k] = 1
        if kind == "open":
            self.place(b, vpath[-1])
        self.pending[a] -= 1
        self.pending[b] -= 1
        self.padj[a][b] -= 1
        if a != b:
            self.padj[b][a] -= 1
        self.paths[e] = (vpath, epath)
        root_edge = e in self.root_edges
        if root_edge:
            self.root_first.append(epath[0])
        try:
            usable = self.feasible()
            if usable is not None and self.planar_cuts:
                fresh = vpath[1:] if kind == "open" else inner
                if not self.planar_ok(usable, fresh):
                    usable = None
            if usable is not None:
                yield from self.step(i + 1, usable)
        finally:
            if root_edge:
                self.root_first.pop()
            del self.paths[e]
            self.padj[a][b] += 1
            if a != b:
                self.padj[b][a] += 1
            self.pending[a] += 1
            self.pending[b] += 1
            if kind == "open":
                self.unplace(b, vpath[-1])
            for k in epath:
                used[k] = 0
            for y in inner:
                role[y] = 0

    def paths_from(self, e, a, b, closing: bool, usable):
        """Simple host paths from img(a) through usable free vertices that
        either reach img(b) (closing) or stop at a fresh branch image for b."""
        role, used, inc, img, padj, pre = self.role, self.used, self.inc, self.img, self.padj, self.pre
        s = img[a]
        t = img[b] if closing else -1
        floor = self.root_first[-1] if (e in self.root_edges and self.root_first) else -1
        need = self.pdeg[b] - 1
        vpath = [s]
        epath: list[int] = []
        on_path = {s}
        t_nbrs = {y for _, y in inc[t]} if closing else ()

        def spare(y):
            # live edges at y besides the arrival edge, were y to image b
            c = 0
            for k, z in inc[y]:
                if z in on_path or used[k]:
                    continue
                if role[z] == 0:
                    if usable[z]:
                        c += 1
                elif role[z] == 1 and padj[b][pre[z]]:
                    c += 1
            return c

        def ext(x):
            self.tick()
            if closing and x != s and x in t_nbrs:
                # x touches the target, so the induced path must end there
                for k, y in inc[x]:
                    if y == t and not used[k]:
                        yield vpath + [t], epath + [k]
                return
            for k, y in inc[x]:
                if used[k] or k in epath:
                    continue
                if x == s and k <= floor:
                    continue
                if y == t:
                    # y == s only for a pattern loop
                    yield vpath + [y], epath + [k]
                    continue
                if role[y] or not usable[y] or y in on_path:
                    continue
                # witnesses of least size use induced paths: a chord from y
                # back onto the path would shorten it
                if any(z in on_path and z != x for _, z in inc[y]):
                    continue
                vpath.append(y)
                epath.append(k)
                on_path.add(y)
                if not closing and self.can_branch(b, y) and spare(y) >= need:
                    yield list(vpath), list(epath)
                yield from ext(y)
                on_path.discard(y)
                epath.pop()
                vpath.pop()

        yield from ext(s)

    def witness(self) -> SubdivisionWitness:
        hv, heid = self.hv, self.heid
        return SubdivisionWitness(
            branch_map={p: hv[self.img[i]] for i, p in enumerate(self.pv)},
            path_map={e: tuple(hv[x] for x in vp) for e, (vp, _) in sorted(self.paths.items())},
            path_edges={e: tuple(heid[k] for k in ep) for e, (_, ep) in sorted(self.paths.items())},
        )


def _orient(pattern: MultiGraph, w: SubdivisionWitness) -> SubdivisionWitness:
    """Store each path from the image of the pattern edge's first end."""
    pm, pe = {}, {}
    for e, (a, _) in pattern.edges.items():
        vp, ep = w.path_map[e], w.path_edges[e]
        if vp[0] != w.branch_map[a]:
            vp, ep = vp[::-1], ep[::-1]
        pm[e], pe[e] = vp, ep
    return SubdivisionWitness(w.branch_map, pm, pe)


def search_subdivision(
    host: MultiGraph,
    pattern: MultiGraph,
    budget: int | None = None,
    use_orbits: bool = True,
    planar_cuts: bool = True,
) -> SearchResult:
    """Exact search for a subdivision of ``pattern`` inside ``host``."""
    budget = default_budget() if budget is None else budget
    if pattern.order == 0:
        return SearchResult("found", SubdivisionWitness({}, {}, {}), 0)
    # cheap necessary conditions
    big = sorted((host.degree(v) for v in host.vertices), reverse=True)
    need = sorted((pattern.degree(p) for p in pattern.vertices), reverse=True)
    if len(big) < len(need) or any(h < p for h, p in zip(big, need)) or host.size < pattern.size:
        return SearchResult("none", None, 0)

    s = _Search(host, pattern, budget, planar_cuts)
    orbit_of = _host_orbits(host) if use_orbits else {v: v for v in host.vertices}
    tried: set[int] = set()
    rdeg = pattern.degree(s.plan.root)
    try:
        for x in sorted(host.vertices, key=lambda v: (-host.degree(v), v)):
            rep = orbit_of[x]
            if host.degree(x) < rdeg or rep in tried:
                continue
            tried.add(rep)
            for w in s.run_from(s.hidx[x]):
                return SearchResult("found", _orient(pattern, w), s.nodes)
            # x's orbit images no vertex of the root's orbit in any witness
            for v in host.vertices:
                if orbit_of[v] == rep:
                    s.banned[s.hidx[v]] = 1
    except BudgetExceeded:
        return SearchResult("unknown", None, s.nodes)
    return SearchResult("none", None, s.nodes)


def contains_subdivision(host: MultiGraph, pattern: MultiGraph, budget: int | None = None):
    """Witness, ``None`` (exhaustively absent) or :data:`UNKNOWN`."""
    return search_subdivision(host, pattern, budget).outcome


@lru_cache(maxsize=1)
def _petersen() -> MultiGraph:
    from .fixtures import petersen

    return petersen()


def contains_petersen(host: MultiGraph, budget: int | None = None):
    return contains_subdivision(host, _petersen(), budget)


def replay(host: MultiGraph, pattern: MultiGraph, w: SubdivisionWitness) -> None:
    check_witness(host, pattern, w)


_REDUCTION_NAMES = {
    "ReductionStep", "classify_theta_connected", "build_shore_replacement", "girth4_contraction",
    "build_figure2", "figure2_variants", "reduction_pipeline",
}


def __getattr__(name):
    # the reduction pipeline sits on top of this module; expose it lazily
    if name in _REDUCTION_NAMES:
        from . import reduction

        return getattr(reduction, name)
    raise AttributeError(name)
