"""Subdivision witnesses, their text certificate, and an independent checker.

Certificate format::

    branch 0 -> 5
    branch 1 -> 9
    path (0,1): 5 7 9

``branch`` lines map pattern vertices to host vertices; ``path`` lines come
in pattern edge-id order and list the host vertices of the path realising
that edge. The checker below re-derives everything from the host graph and
does not use any of the search code.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field

from .graph import MultiGraph


@dataclass(frozen=True)
class SubdivisionWitness:
    branch_map: dict[int, int]
    path_map: dict[int, tuple[int, ...]]  # pattern edge id -> host vertex path
    path_edges: dict[int, tuple[int, ...]] = field(default_factory=dict, compare=False)

    def host_vertices(self) -> set[int]:
        out = set(self.branch_map.values())
        for p in self.path_map.values():
            out.update(p)
        return out


class WitnessError(ValueError):
    pass


def format_certificate(pattern: MultiGraph, w: SubdivisionWitness) -> str:
    lines = [f"branch {p} -> {w.branch_map[p]}" for p in pattern.vertices]
    for e, (a, b) in pattern.edges.items():
        lines.append(f"path ({a},{b}): " + " ".join(map(str, w.path_map[e])))
    return "\n".join(lines) + "\n"


_BRANCH = re.compile(r"^branch\s+(-?\d+)\s*->\s*(-?\d+)$")
_PATH = re.compile(r"^path\s*\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)\s*:\s*((?:-?\d+\s*)+)$")


def parse_certificate(text: str, pattern: MultiGraph) -> SubdivisionWitness:
    branch: dict[int, int] = {}
    raw_paths: list[tuple[int, int, tuple[int, ...]]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        m = _BRANCH.match(line)
        if m:
            p, v = int(m.group(1)), int(m.group(2))
            if p in branch:
                raise WitnessError(f"line {lineno}: pattern vertex {p} mapped twice")
            branch[p] = v
            continue
        m = _PATH.match(line)
        if m:
            raw_paths.append((int(m.group(1)), int(m.group(2)), tuple(map(int, m.group(3).split()))))
            continue
        raise WitnessError(f"line {lineno}: cannot parse {line!r}")
    pedges = list(pattern.edges.items())
    if len(raw_paths) != len(pedges):
        raise WitnessError(f"expected {len(pedges)} path lines, got {len(raw_paths)}")
    paths = {}
    for (e, (a, b)), (x, y, vs) in zip(pedges, raw_paths):
        if {x, y} != {a, b}:
            raise WitnessError(f"path line ({x},{y}) does not match pattern edge {e}=({a},{b})")
        paths[e] = vs if (x, y) == (a, b) else tuple(reversed(vs))
    return SubdivisionWitness(branch, paths)


def check_witness(host: MultiGraph, pattern: MultiGraph, w: SubdivisionWitness) -> None:
    """Raise :class:`WitnessError` unless ``w`` exhibits a subdivision of
    ``pattern`` inside ``host``."""
    if set(w.branch_map) != set(pattern.vertices):
        raise WitnessError("branch map does not cover exactly the pattern vertices")
    images = list(w.branch_map.values())
    if len(set(images)) != len(images):
        raise WitnessError("branch map is not injective")
    for v in images:
        if v not in host.vertex_set:
            raise WitnessError(f"branch image {v} is not a host vertex")
    if set(w.path_map) != set(pattern.edges):
        raise WitnessError("paths do not cover exactly the pattern edges")

    available = Counter()
    for u, v in host.edges.values():
        available[(min(u, v), max(u, v))] += 1
    used = Counter()
    branch_set = set(images)
    interior_owner: dict[int, int] = {}

    for e, (a, b) in pattern.edges.items():
        path = w.path_map[e]
        if len(path) < 2:
            raise WitnessError(f"path for pattern edge {e} has no edge")
        if path[0] != w.branch_map[a] or path[-1] != w.branch_map[b]:
            raise WitnessError(f"path for pattern edge {e} has wrong ends")
        inner = path[1:-1]
        if len(set(inner)) != len(inner):
            raise WitnessError(f"path for pattern edge {e} repeats a vertex")
        if path[0] in inner or path[-1] in inner:
            raise WitnessError(f"path for pattern edge {e} revisits an end")
        for x in inner:
            if x in branch_set:
                raise WitnessError(f"path for pattern edge {e} passes through branch vertex {x}")
            if x in interior_owner:
                raise WitnessError(f"vertex {x} is interior to two paths")
            interior_owner[x] = e
        for x, y in zip(path, path[1:]):
            used[(min(x, y), max(x, y))] += 1
        if e in w.path_edges:
            pe = w.path_edges[e]
            if len(pe) != len(path) - 1:
                raise WitnessError(f"edge list for pattern edge {e} has wrong length")
            for f, x, y in zip(pe, path, path[1:]):
                if f not in host.edges or set(host.edges[f]) != {x, y}:
                    raise WitnessError(f"host edge {f} does not join {x} and {y}")
    for key, k in used.items():
        if available[key] < k:
            raise WitnessError(f"host edge {key} used {k} times, only {available[key]} present")
    if any(len(set(pe)) != len(pe) for pe in w.path_edges.values()):
        raise WitnessError("a path reuses a host edge")
    all_edges = [f for pe in w.path_edges.values() for f in pe]
    if len(set(all_edges)) != len(all_edges):
        raise WitnessError("two paths share a host edge")


def validate_witness(host: MultiGraph, pattern: MultiGraph, w: SubdivisionWitness) -> bool:
    try:
        check_witness(host, pattern, w)
    except WitnessError:
        return False
    return True
