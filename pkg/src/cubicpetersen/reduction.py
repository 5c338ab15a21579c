"""Reductions from an interesting graph to a smaller one it contains.

Three moves, each returning a :class:`ReductionStep` whose certificate is a
subdivision witness of the output inside the input:

* ``delete_reduce``: drop an edge shared by a circuit of length <= 3 and a
  breaker, then clean up degrees;
* ``shore_replace``: keep one side X of a shore and replace the other side
  by a k-circuit wired to the boundary;
* ``girth4_case``: delete one edge of a quadrilateral and contract the two
  edges next to it.

``reduction_pipeline`` applies the first move that yields an interesting
graph, or ends with a direct Petersen search / a classification of a
theta-connected terminal graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations

from .certificates import SubdivisionWitness, WitnessError, check_witness
from .circuits import Circuit, all_circuits, find_breakers, girth, is_interesting, pentagons, short_circuits
from .containment import UNKNOWN, contains_petersen, is_isomorphic
from .cuts import BoundExceeded, Shore, all_shores, find_shore, is_shore, is_theta_connected, push_shore
from .flows import disjoint_paths
from .graph import GraphError, MultiGraph, contract_edge, delete_edge, induced, is_cubic, reduce_delete_traced
from .planarity import DoublecrossWitness, is_apex, is_doublecross

KINDS = ("delete_reduce", "shore_replace", "girth4_case")


@dataclass
class ReductionStep:
    kind: str
    source: MultiGraph
    result: MultiGraph
    witness: SubdivisionWitness  # result inside source
    breaker: Circuit | None = None  # of result; None when its girth is >= 6
    detail: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown reduction kind {self.kind!r}")

    def verify(self) -> None:
        """Raise unless the result is interesting, smaller, and contained in
        the source via the stored witness."""
        if self.result.order >= self.source.order:
            raise AssertionError("reduction did not shrink the graph")
        if not is_interesting(self.result):
            raise AssertionError("reduction output is not interesting")
        if self.breaker is not None and self.breaker.canonical() not in find_breakers(self.result):
            raise AssertionError("recorded breaker is not a breaker of the output")
        check_witness(self.source, self.result, self.witness)


# -- delete and reduce ------------------------------------------------------------


def _identity_lift(g, h, trace) -> SubdivisionWitness:
    paths, epaths = {}, {}
    for f, (a, b) in h.edges.items():
        vp, ep = trace[f]
        if vp[0] != a:
            vp, ep = tuple(reversed(vp)), tuple(reversed(ep))
        paths[f], epaths[f] = tuple(vp), tuple(ep)
    return SubdivisionWitness({v: v for v in h.vertices}, paths, epaths)


def delete_reduce_step(g: MultiGraph, e: int) -> ReductionStep:
    h, trace = reduce_delete_traced(g, e)
    brk = find_breakers(h)
    return ReductionStep(
        "delete_reduce", g, h, _identity_lift(g, h, trace), brk[0] if brk else None, {"edge": e}
    )


def _delete_candidates(g):
    shorts = short_circuits(g)
    breakers = find_breakers(g, shorts)
    for c in sorted((c for c in shorts if len(c) <= 3), key=lambda c: (len(c), c.vertices)):
        for b in breakers:
            for e in sorted(c.edge_set & b.edge_set):
                yield e


# -- shore replacement ------------------------------------------------------------


@dataclass
class ShoreReplacement:
    graph: MultiGraph
    witness: SubdivisionWitness
    circuit: Circuit  # C'' in the new graph
    host_circuit: Circuit  # C' in g - X
    paths: list[tuple[int, ...]]  # boundary vertex u_i, then the path into C'


def build_shore_replacement(g: MultiGraph, shore: Shore | frozenset) -> ShoreReplacement:
    """Keep the side X of ``shore`` and replace the rest of ``g`` by a circuit
    of length k = |delta(X)| attached to the boundary vertices.

    The new circuit follows the order in which k disjoint paths from the
    boundary reach a circuit C' of g - X, so the result sits inside ``g``.
    """
    xs = frozenset(shore.side if isinstance(shore, Shore) else shore)
    if not is_interesting(g):
        raise GraphError("shore replacement expects an interesting graph")
    if not is_shore(g, xs):
        raise GraphError("not a shore (boundary above 5 or a side with fewer than two circuits)")
    bd = sorted(e for e, (u, v) in g.edges.items() if (u in xs) != (v in xs))
    k = len(bd)
    inner, outer = [], []
    for e in bd:
        u, v = g.endpoints(e)
        inner.append(u if u in xs else v)
        outer.append(v if u in xs else u)
    if len(set(inner)) < k or len(set(outer)) < k:
        raise GraphError("shore boundary is not a matching")

    rest = induced(g, g.vertex_set - xs)
    adj = {v: [w for _, w in rest.incidence[v]] for v in rest.vertices}
    found = None
    for c in sorted(all_circuits(rest), key=lambda c: (len(c), c.vertices)):
        if len(c) < k:
            continue
        ps = disjoint_paths(adj, outer, c.vertex_set)
        if ps is not None:
            found = c, ps
            break
    if found is None:
        raise GraphError(f"no circuit of g - X with {k} disjoint paths from the boundary")
    cp, ps = found

    pos = {v: i for i, v in enumerate(cp.vertices)}
    order = sorted(range(k), key=lambda i: pos[ps[i][-1]])
    base = g.next_vertex_id()
    w = {i: base + j for j, i in enumerate(order)}  # boundary index -> new vertex

    es = dict(induced(g, xs).edges)
    nxt = g.next_edge_id()
    ring = []
    for j in range(k):
        es[nxt] = (base + j, base + (j + 1) % k)
        ring.append(nxt)
        nxt += 1
    spokes = {}
    for i in range(k):
        es[nxt] = (inner[i], w[i])
        spokes[i] = nxt
        nxt += 1
    h = MultiGraph(xs | {base + j for j in range(k)}, es, name=(g.name or "G") + "/shore")
    c2 = Circuit(tuple(base + j for j in range(k)), tuple(ring))

    # witness: identity on X, w_j -> v_j, spokes -> boundary edge + path, ring -> arcs of C'
    branch = {x: x for x in xs}
    for i in range(k):
        branch[w[i]] = ps[i][-1]
    paths, epaths = {}, {}
    for f in induced(g, xs).edges:
        paths[f] = g.endpoints(f)
        epaths[f] = (f,)
    for i in range(k):
        vp = (inner[i],) + tuple(ps[i])
        paths[spokes[i]] = vp
        epaths[spokes[i]] = (bd[i],) + tuple(_edge_between(rest, a, b) for a, b in zip(ps[i], ps[i][1:]))
    L = len(cp)
    for j in range(k):
        a, b = pos[ps[order[j]][-1]], pos[ps[order[(j + 1) % k]][-1]]
        steps = (b - a) % L or L
        paths[ring[j]] = tuple(cp.vertices[(a + t) % L] for t in range(steps + 1))
        epaths[ring[j]] = tuple(cp.edges[(a + t) % L] for t in range(steps))
    wit = SubdivisionWitness(branch, paths, epaths)
    return ShoreReplacement(h, wit, c2, cp, [(inner[i],) + tuple(ps[i]) for i in range(k)])


def _edge_between(g, a, b):
    # paths meet C' only at their last vertex, so any a-b edge will do
    return min(g.edges_between(a, b))


def shore_replace_step(g: MultiGraph, shore) -> ReductionStep:
    rep = build_shore_replacement(g, shore)
    h = rep.graph
    brk = rep.circuit if rep.circuit.canonical() in find_breakers(h) else None
    side = shore.side if isinstance(shore, Shore) else frozenset(shore)
    return ReductionStep("shore_replace", g, h, rep.witness, brk, {"shore": tuple(sorted(side))})


def _shore_candidates(g):
    try:
        shores = all_shores(g)
    except BoundExceeded:
        return
    if not shores:
        return
    brk = find_breakers(g)
    if brk:
        first = push_shore(g, brk[0])
        if first is not None:
            yield first
        avoid = brk[0].vertex_set
        shores = [s for s in shores if not (s.side & avoid)]
    yield from shores


# -- the girth-four case ----------------------------------------------------------


@dataclass
class Girth4Result:
    graph: MultiGraph
    witness: SubdivisionWitness | None  # graph inside g
    e3_ends: tuple[int, int]  # labels in graph
    hypotheses_met: bool
    girth_ok: bool
    pentagons_ok: bool

    @property
    def claims_hold(self) -> bool:
        return self.girth_ok and self.pentagons_ok


def _girth4_hypotheses(g: MultiGraph, c: Circuit) -> bool:
    if g.order < 14:
        return False
    shorts = short_circuits(g)
    if [s.canonical() for s in shorts] != [c.canonical()]:
        return False
    return find_shore(g) is None


def girth4_contraction(g: MultiGraph, c: Circuit, check_hypotheses: bool = True) -> Girth4Result:
    """Delete e1 of the quadrilateral u1u2u3u4 and contract e2 and e4.

    ``c.edges[i]`` joins ``u_{i+1}`` and ``u_{i+2}``, so e1 = u1u2 and so on.
    The claims about the output (girth at least five, every pentagon through
    an end of e3) are evaluated always and asserted only when ``g`` meets the
    setting they are made in: the quadrilateral is the only short circuit,
    at least 14 vertices, no shore.
    """
    if not is_cubic(g):
        raise GraphError("girth4_contraction expects a cubic graph")
    if len(c) != 4 or not c.is_valid_in(g):
        raise GraphError("expected a quadrilateral of g")
    u1, u2, u3, u4 = c.vertices
    e1, e2, e3, e4 = c.edges
    h = contract_edge(contract_edge(delete_edge(g, e1), e2), e4)
    merged = {u2: (u3, e2), u1: (u4, e4)}  # degree-2 end -> (degree-3 end, contracted edge)
    label = {}
    for d, (t, e) in merged.items():
        keep = t if t in h.vertex_set else d
        label[d] = label[t] = keep

    # each output edge keeps its id; lift it through the contracted edges
    branch = {v: v for v in h.vertices}
    for d, (t, _) in merged.items():
        branch[label[t]] = t
    paths, epaths = {}, {}
    for f, (a, b) in h.edges.items():
        x, y = g.endpoints(f)
        if label.get(x, x) != a:
            x, y = y, x
        vp, ep = [], []
        if x in merged:
            vp += [merged[x][0]]
            ep += [merged[x][1]]
        vp.append(x)
        ep.append(f)
        vp.append(y)
        if y in merged:
            vp.append(merged[y][0])
            ep.append(merged[y][1])
        paths[f], epaths[f] = tuple(vp), tuple(ep)
    wit = SubdivisionWitness(branch, paths, epaths)
    try:
        check_witness(g, h, wit)
    except WitnessError:
        wit = None

    ends = (label[u3], label[u4])
    gh = girth(h)
    girth_ok = gh >= 5
    pent_ok = girth_ok and all(c5.vertex_set & set(ends) for c5 in pentagons(h))
    hyp = check_hypotheses and _girth4_hypotheses(g, c)
    res = Girth4Result(h, wit, ends, hyp, girth_ok, pent_ok)
    if hyp and not res.claims_hold:
        raise AssertionError(
            f"girth-4 contraction claims fail: girth {gh}, pentagon condition {pent_ok}"
        )
    return res


def girth4_step(g: MultiGraph, c: Circuit) -> ReductionStep:
    res = girth4_contraction(g, c)
    if res.witness is None:
        raise GraphError("could not lift the contraction to a witness")
    brk = find_breakers(res.graph)
    return ReductionStep(
        "girth4_case", g, res.graph, res.witness, brk[0] if brk else None, {"quadrilateral": c.vertices}
    )


# -- the Figure-2 construction ----------------------------------------------------

NAMES = ("a", "b1", "b2", "b3", "c1", "c2", "c3", "d", "p", "q1", "q2", "q3", "r1", "r2", "r3", "s")
LABEL = {n: i for i, n in enumerate(NAMES)}


@dataclass(frozen=True)
class Figure2Variant:
    """Partners of b1, b2, c1, c2 under the matching (b3-q3 and c3-r3 are fixed)."""

    partners: tuple[str, str, str, str]

    def pairs(self) -> list[tuple[str, str]]:
        own = [("b3", "q3"), ("c3", "r3")]
        return own + list(zip(("b1", "b2", "c1", "c2"), self.partners))

    def __str__(self):
        return " ".join(f"{x}-{y}" for x, y in self.pairs())


@dataclass
class Figure2:
    variant: Figure2Variant
    graph: MultiGraph
    quadrilateral: Circuit
    reduced: MultiGraph
    contraction: Girth4Result


def _figure2_graph(variant: Figure2Variant) -> MultiGraph:
    pairs = []
    for i in (1, 2, 3):
        pairs += [("a", f"b{i}"), (f"b{i}", f"c{i}"), (f"c{i}", "d")]
        pairs += [("p", f"q{i}"), (f"q{i}", f"r{i}"), (f"r{i}", "s")]
    pairs += variant.pairs()
    return MultiGraph(range(16), [(LABEL[x], LABEL[y]) for x, y in pairs], name="figure2-G")


def _quadrilateral(g: MultiGraph) -> Circuit:
    # u1..u4 = b3, q3, r3, c3: e1 = b3q3 and e3 = r3c3 are the fixed matching edges
    return Circuit.from_vertices(g, [LABEL[n] for n in ("b3", "q3", "r3", "c3")])


def _consistent(g: MultiGraph) -> bool:
    if not is_cubic(g) or not g.is_simple():
        return False
    shorts = short_circuits(g)
    return [c.canonical() for c in shorts] == [_quadrilateral(g).canonical()]


def all_figure2_matchings() -> list[Figure2Variant]:
    """Every bijection from {b1, b2, c1, c2} to {q1, q2, r1, r2}."""
    return [Figure2Variant(p) for p in permutations(("q1", "q2", "r1", "r2"))]


def figure2_variants() -> list[Figure2Variant]:
    """Matchings for which the quadrilateral b3 q3 r3 c3 is the only circuit of
    length at most five, which is the situation the construction lives in."""
    return [v for v in all_figure2_matchings() if _consistent(_figure2_graph(v))]


def stated_figure2_variant() -> Figure2Variant:
    """The reading of the printed pairs that respects the stated rule
    (b's to q's, c's to r's): b1-q1, b2-q2, c1-r2, c2-r1."""
    return Figure2Variant(("q1", "q2", "r2", "r1"))


def build_figure2(variant: Figure2Variant) -> Figure2:
    g = _figure2_graph(variant)
    if not _consistent(g):
        raise GraphError(f"inconsistent matching {variant}: quadrilateral is not the only short circuit")
    c = _quadrilateral(g)
    res = girth4_contraction(g, c, check_hypotheses=False)
    h = res.graph.canonical_copy()
    h.name = "figure2"
    return Figure2(variant, g, c, h, res)


# -- theta-connected terminal graphs ----------------------------------------------


@dataclass
class ThetaReport:
    apex: int | None
    doublecross: DoublecrossWitness | None
    starfish_iso: bool | None  # None when the Starfish data is not installed
    petersen: object  # SubdivisionWitness, None, or UNKNOWN

    @property
    def petersen_free(self):
        if self.petersen is UNKNOWN:
            return None
        return self.petersen is None

    @property
    def consistent(self):
        """Petersen-free iff (apex or doublecross or Starfish); None when a
        needed input is unknown."""
        free = self.petersen_free
        if free is None:
            return None
        structured = self.apex is not None or self.doublecross is not None
        if not structured and self.starfish_iso is None:
            return None if free else True
        return free == (structured or bool(self.starfish_iso))


def classify_theta_connected(g: MultiGraph, budget: int | None = None) -> ThetaReport:
    if not is_theta_connected(g):
        raise GraphError("classify_theta_connected expects a theta-connected graph")
    from .fixtures import FixtureUnavailable, starfish

    try:
        sf = is_isomorphic(g, starfish())
    except FixtureUnavailable:
        sf = None
    return ThetaReport(is_apex(g), is_doublecross(g), sf, contains_petersen(g, budget))


# -- pipeline ---------------------------------------------------------------------


@dataclass
class PipelineOutcome:
    kind: str  # "step", "witness", "terminal" or "unknown"
    step: ReductionStep | None = None
    witness: SubdivisionWitness | None = None
    report: ThetaReport | None = None


def _accept(step: ReductionStep) -> bool:
    return step.result.order < step.source.order and is_interesting(step.result)


def reduction_pipeline(g: MultiGraph, budget: int | None = None) -> PipelineOutcome:
    """One round: a reduction to a smaller interesting graph if one of the
    three moves gives it, otherwise a Petersen search on ``g`` itself."""
    if not is_interesting(g):
        raise GraphError("reduction_pipeline expects an interesting graph")
    if girth(g) < 4:
        for e in _delete_candidates(g):
            step = delete_reduce_step(g, e)
            if _accept(step):
                return PipelineOutcome("step", step=step)
    for shore in _shore_candidates(g):
        try:
            step = shore_replace_step(g, shore)
        except GraphError:
            continue
        if _accept(step):
            return PipelineOutcome("step", step=step)
    if girth(g) == 4:
        for c in short_circuits(g):
            if len(c) != 4:
                continue
            try:
                step = girth4_step(g, c)
            except GraphError:
                continue
            if _accept(step):
                return PipelineOutcome("step", step=step)
    try:
        theta = is_theta_connected(g)
    except BoundExceeded:
        theta = False
    if theta:
        rep = classify_theta_connected(g, budget)
        return PipelineOutcome("terminal", witness=rep.petersen if rep.petersen not in (None, UNKNOWN) else None, report=rep)
    w = contains_petersen(g, budget)
    if w is UNKNOWN:
        return PipelineOutcome("unknown")
    return PipelineOutcome("witness", witness=w)


def reduction_chain(g: MultiGraph, budget: int | None = None) -> tuple[list[ReductionStep], PipelineOutcome]:
    """Iterate :func:`reduction_pipeline` until it stops reducing."""
    steps = []
    while True:
        out = reduction_pipeline(g, budget)
        if out.kind != "step":
            return steps, out
        steps.append(out.step)
        g = out.step.result
