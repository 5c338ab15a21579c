"""Command line front end.

Exit codes: 0 success or witness found, 1 negative answer, 2 usage or parse
error, 3 undecided within the node budget.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .certificates import WitnessError, check_witness, format_certificate, parse_certificate
from .circuits import find_breakers, girth, is_interesting, pentagon_count, short_circuits
from .containment import BUDGET_ENV, UNKNOWN, search_subdivision
from .cuts import BoundExceeded, find_shore, is_theta_connected
from .fixtures import FIXTURE_NAMES, FixtureUnavailable, complete, complete_bipartite, fixture, petersen
from .graph import GraphError, MultiGraph, ParseError, is_cubic, load_graph_file, to_adjacency, to_graph6, to_sparse6
from .harness import CampaignError, load_campaign, run_campaign
from .planarity import is_apex

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_UNKNOWN = 0, 1, 2, 3

PATTERNS = {"petersen": petersen, "k4": lambda: complete(4), "k33": lambda: complete_bipartite(3, 3)}


class UsageError(Exception):
    pass


def _load_target(args) -> MultiGraph:
    if getattr(args, "fixture", None):
        if args.target:
            raise UsageError("give either a file or --fixture, not both")
        return fixture(args.fixture)
    if not args.target:
        raise UsageError("no target: give a graph file or --fixture NAME")
    try:
        return load_graph_file(args.target)
    except OSError as exc:
        raise UsageError(f"cannot read {args.target}: {exc.strerror or exc}") from None


def _load_pattern(spec: str) -> MultiGraph:
    if spec in PATTERNS:
        return PATTERNS[spec]()
    try:
        return load_graph_file(spec)
    except OSError:
        raise UsageError(f"unknown pattern {spec!r}: use petersen, k4, k33 or a graph file") from None


def _emit(args, data: dict, lines: list[str]):
    if args.json:
        print(json.dumps(data, sort_keys=True))
    else:
        for ln in lines:
            print(ln)


def _fmt_circuit(c) -> str:
    return " ".join(map(str, c.vertices))


def _guard(fn, *a):
    try:
        return fn(*a)
    except (BoundExceeded, GraphError):
        return None


# -- verbs ------------------------------------------------------------------------


def cmd_analyze(args) -> int:
    g = _load_target(args)
    cubic = is_cubic(g)
    gi = girth(g)
    shorts = short_circuits(g)
    brk = find_breakers(g, shorts)
    theta = _guard(is_theta_connected, g) if cubic else False
    shore = _guard(find_shore, g) if g.order else None
    apex = is_apex(g)
    data = {
        "name": g.name,
        "order": g.order,
        "size": g.size,
        "cubic": cubic,
        "girth": None if gi == float("inf") else int(gi),
        "short_circuits": [list(c.vertices) for c in shorts],
        "breakers": [list(c.vertices) for c in brk],
        "interesting": is_interesting(g),
        "theta_connected": theta,
        "pentagons": pentagon_count(g),
        "shore": sorted(shore.side) if shore is not None else None,
        "apex": apex,
    }
    lines = [
        f"graph: {g.name or '-'}",
        f"order: {g.order}",
        f"size: {g.size}",
        f"cubic: {str(cubic).lower()}",
        f"girth: {data['girth'] if data['girth'] is not None else 'inf'}",
        f"short circuits: {len(shorts)}",
    ]
    lines += [f"  {_fmt_circuit(c)}" for c in shorts[:20]]
    if len(shorts) > 20:
        lines.append(f"  ... {len(shorts) - 20} more")
    lines += [f"breakers: {len(brk)}"] + [f"  {_fmt_circuit(c)}" for c in brk[:20]]
    lines += [
        f"interesting: {str(data['interesting']).lower()}",
        f"theta-connected: {'unknown' if theta is None else str(theta).lower()}",
        f"pentagons: {data['pentagons']}",
        f"shore: {' '.join(map(str, data['shore'])) if shore is not None else 'none'}",
        f"apex vertex: {apex if apex is not None else 'none'}",
    ]
    _emit(args, data, lines)
    return EXIT_OK


def cmd_search(args) -> int:
    g = _load_target(args)
    pat = _load_pattern(args.pattern)
    res = search_subdivision(g, pat, budget=args.budget)
    data = {"status": res.status, "nodes": res.nodes}
    if res.status == "found":
        cert = format_certificate(pat, res.witness)
        data["certificate"] = cert
        _emit(args, data, cert.rstrip("\n").splitlines())
        return EXIT_OK
    if res.status == "unknown":
        _emit(args, data, [f"unknown(budget) after {res.nodes} nodes"])
        return EXIT_UNKNOWN
    _emit(args, data, ["none"])
    return EXIT_NEGATIVE


def cmd_classify(args) -> int:
    from .reduction import classify_theta_connected

    g = _load_target(args)
    try:
        rep = classify_theta_connected(g, args.budget)
    except GraphError as exc:
        raise UsageError(str(exc)) from None
    pet = rep.petersen
    pet_s = "unknown" if pet is UNKNOWN else ("witness" if pet is not None else "none")
    dc = rep.doublecross
    sf = rep.starfish_iso
    data = {
        "apex": rep.apex,
        "doublecross": list(dc.removed) if dc is not None else None,
        "starfish_iso": sf,
        "petersen": pet_s,
        "consistent": rep.consistent,
    }
    verdict = {True: "consistent", False: "INCONSISTENT", None: "undecided"}[rep.consistent]
    lines = [
        f"apex: {rep.apex if rep.apex is not None else 'none'}",
        f"doublecross: {' '.join(map(str, dc.removed)) if dc is not None else 'none'}",
        f"starfish: {'unavailable' if sf is None else str(sf).lower()}",
        f"petersen: {pet_s}",
        f"verdict: {verdict}",
    ]
    if pet not in (None, UNKNOWN) and not args.json:
        lines += ["certificate:"] + format_certificate(petersen(), pet).rstrip("\n").splitlines()
    _emit(args, data, lines)
    if rep.consistent is None:
        return EXIT_UNKNOWN
    return EXIT_OK if rep.consistent else EXIT_NEGATIVE


def cmd_campaign(args) -> int:
    try:
        camp = load_campaign(args.config)
        if args.workers:
            camp.workers = args.workers
        summary = run_campaign(camp)
    except CampaignError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(args, summary.as_dict(), summary.lines())
    t = summary.totals()
    if t["fail"]:
        return EXIT_NEGATIVE
    if t["unknown"]:
        return EXIT_UNKNOWN
    return EXIT_OK


def cmd_fixture(args) -> int:
    g = fixture(args.name)
    if args.format == "adj":
        sys.stdout.write(to_adjacency(g))
    else:
        print(to_graph6(g) if g.is_simple() else to_sparse6(g))
    return EXIT_OK


def cmd_validate(args) -> int:
    g = _load_target(args)
    pat = _load_pattern(args.pattern)
    try:
        text = Path(args.certificate).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {args.certificate}: {exc.strerror or exc}") from None
    try:
        w = parse_certificate(text, pat)
        check_witness(g, pat, w)
    except WitnessError as exc:
        _emit(args, {"valid": False, "reason": str(exc)}, [f"invalid: {exc}"])
        return EXIT_NEGATIVE
    _emit(args, {"valid": True}, ["valid"])
    return EXIT_OK


# -- parser -----------------------------------------------------------------------


def _target_args(p):
    p.add_argument("target", nargs="?", help="graph file (graph6, sparse6 or adjacency list)")
    p.add_argument("--fixture", choices=FIXTURE_NAMES, help="use a built-in graph instead of a file")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="cubicpetersen",
        description="Petersen containment tools for cubic graphs.",
        epilog=f"Default search budget comes from ${BUDGET_ENV} (10^7 nodes if unset). "
        "Exit codes: 0 ok/witness, 1 negative, 2 usage or parse error, 3 budget exhausted.",
    )
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("--json", action="store_true", help="machine-readable output")
    sub = ap.add_subparsers(dest="verb", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")

    p = sub.add_parser("analyze", parents=[common], help="structural report")
    _target_args(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("search", parents=[common], help="look for a subdivision of a pattern")
    _target_args(p)
    p.add_argument("--pattern", default="petersen", help="petersen, k4, k33 or a graph file")
    p.add_argument("--budget", type=int, default=None, help="node budget")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("classify", parents=[common], help="classify a theta-connected graph")
    _target_args(p)
    p.add_argument("--budget", type=int, default=None)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("campaign", parents=[common], help="run a catalog campaign")
    p.add_argument("config")
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=cmd_campaign)

    p = sub.add_parser("fixture", parents=[common], help="print a built-in graph")
    p.add_argument("name", choices=FIXTURE_NAMES)
    p.add_argument("--format", choices=("g6", "adj"), default="g6")
    p.set_defaults(func=cmd_fixture)

    p = sub.add_parser("validate-witness", parents=[common], help="check a certificate against a host graph")
    _target_args(p)
    p.add_argument("--pattern", default="petersen")
    p.add_argument("--certificate", required=True)
    p.set_defaults(func=cmd_validate)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ParseError, GraphError, FixtureUnavailable) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
