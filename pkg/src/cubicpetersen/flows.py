"""Integer max-flow by shortest augmenting paths (Edmonds-Karp)."""

from __future__ import annotations

from collections import defaultdict, deque


class FlowNetwork:
    def __init__(self):
        self.cap: dict = defaultdict(lambda: defaultdict(int))

    def add_arc(self, u, v, c: int):
        if c < 0:
            raise ValueError("negative capacity")
        self.cap[u][v] += c
        self.cap[v][u] += 0  # make the residual arc visible to the search

    def add_edge(self, u, v, c: int):
        """Undirected edge of capacity c: an arc each way."""
        self.add_arc(u, v, c)
        self.add_arc(v, u, c)

    def max_flow(self, s, t, limit: int | None = None):
        """Return (value, flow) where flow[u][v] is the net flow on u->v.
        Stops early once ``limit`` is reached."""
        if s == t:
            raise ValueError("source equals sink")
        flow: dict = defaultdict(lambda: defaultdict(int))
        value = 0
        cap = self.cap
        while limit is None or value < limit:
            parent = {s: None}
            q = deque([s])
            while q and t not in parent:
                u = q.popleft()
                for v, c in cap[u].items():
                    if v not in parent and c - flow[u][v] > 0:
                        parent[v] = u
                        q.append(v)
            if t not in parent:
                break
            push = None
            v = t
            while parent[v] is not None:
                u = parent[v]
                r = cap[u][v] - flow[u][v]
                push = r if push is None else min(push, r)
                v = u
            if limit is not None:
                push = min(push, limit - value)
            v = t
            while parent[v] is not None:
                u = parent[v]
                flow[u][v] += push
                flow[v][u] -= push
                v = u
            value += push
        return value, flow

    def reachable(self, s, flow) -> set:
        """Source side of a minimum cut, after :meth:`max_flow`."""
        seen = {s}
        q = deque([s])
        while q:
            u = q.popleft()
            for v, c in self.cap[u].items():
                if v not in seen and c - flow[u][v] > 0:
                    seen.add(v)
                    q.append(v)
        return seen


def disjoint_paths(adj, sources, targets) -> list[list] | None:
    """Vertex-disjoint paths, one from each source, ending in distinct
    targets; each path stops at the first target it reaches.

    ``adj`` maps vertex -> iterable of neighbours. Returns None when fewer
    than ``len(sources)`` disjoint paths exist.
    """
    sources = list(sources)
    if len(set(sources)) != len(sources):
        return None
    targets = set(targets)
    net = FlowNetwork()
    S, T = ("src",), ("sink",)
    for v, nbrs in adj.items():
        net.add_arc(("in", v), ("out", v), 1)
        for w in nbrs:
            if w != v:
                net.add_arc(("out", v), ("in", w), 1)
        if v in targets:
            net.add_arc(("out", v), T, 1)
    for s in sources:
        net.add_arc(S, ("in", s), 1)
    value, flow = net.max_flow(S, T, limit=len(sources))
    if value < len(sources):
        return None
    paths = []
    for s in sources:
        path = [s]
        node = ("out", s)
        while path[-1] not in targets:
            nxt = next(
                w for w, f in flow[node].items() if f > 0 and w[0] == "in"
            )
            flow[node][nxt] -= 1
            path.append(nxt[1])
            node = ("out", nxt[1])
        paths.append(path)
    return paths
