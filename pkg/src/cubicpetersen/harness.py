"""Batch campaigns over graph6/sparse6 catalogs with a resumable journal.

A campaign file is line oriented ``key = value``::

    name = girth6-contains-petersen
    input = ../catalogs/cubic_girth6_n14.g6, ../catalogs/cubic_girth6_n16.g6
    filter = cubic, connected, girth>=6
    assert = contains_petersen == witness
    journal = girth6.journal

Relative paths are resolved against the campaign file's directory. The
journal holds one tab-separated record per evaluated graph::

    key  outcome  witness-path-or-dash  millis  encoding

keyed by ``file:line``; a rerun skips keys already present.
"""

from __future__ import annotations

import json
import logging
import os
import re
import time
from collections import Counter, defaultdict
from collections.abc import Callable, Iterable, Iterator
from dataclasses import dataclass, field
from pathlib import Path

from .circuits import girth, is_interesting
from .containment import UNKNOWN, contains_petersen, contains_subdivision
from .certificates import format_certificate
from .cuts import is_theta_connected
from .fixtures import petersen
from .graph import GraphRecord, MultiGraph, is_cubic, parse_graph6, read_catalog, to_graph6, to_sparse6
from .planarity import is_apex

log = logging.getLogger(__name__)


class CampaignError(RuntimeError):
    pass


# -- filters and assertions -------------------------------------------------------

_GIRTH = re.compile(r"^girth\s*(>=|<=|==)\s*(\d+)$")


def _girth_filter(op: str, k: int):
    cmp = {">=": lambda a: a >= k, "<=": lambda a: a <= k, "==": lambda a: a == k}[op]
    return lambda g: cmp(girth(g))


FILTERS: dict[str, Callable[[MultiGraph], bool]] = {
    "cubic": is_cubic,
    "connected": lambda g: g.is_connected(),
    "simple": lambda g: g.is_simple(),
    "interesting": is_interesting,
    "theta_connected": is_theta_connected,
}


def make_filter(spec: str) -> Callable[[MultiGraph], bool]:
    spec = spec.strip()
    m = _GIRTH.match(spec)
    if m:
        return _girth_filter(m.group(1), int(m.group(2)))
    if spec.startswith("not "):
        inner = make_filter(spec[4:])
        return lambda g: not inner(g)
    try:
        return FILTERS[spec]
    except KeyError:
        raise CampaignError(f"unknown filter {spec!r}") from None


def _petersen_op(g, budget):
    w = contains_petersen(g, budget)
    if w is UNKNOWN:
        return "unknown", None
    return ("witness", w) if w is not None else ("none", None)


def _bool_op(fn):
    return lambda g, budget: ("true" if fn(g) else "false", None)


# each operation returns (outcome text, witness or None)
OPERATIONS: dict[str, Callable] = {
    "contains_petersen": _petersen_op,
    "is_interesting": _bool_op(is_interesting),
    "is_theta_connected": _bool_op(is_theta_connected),
    "is_apex": _bool_op(lambda g: is_apex(g) is not None),
    "is_cubic": _bool_op(is_cubic),
}


# -- campaign ---------------------------------------------------------------------


@dataclass
class Campaign:
    name: str
    inputs: list[Path]
    assertion: tuple[str, str]  # (operation, expected outcome)
    filters: list[str] = field(default_factory=list)
    journal: Path | None = None
    report: Path | None = None
    witness_dir: Path | None = None
    budget: int | None = None
    workers: int = 1

    def __post_init__(self):
        op, _ = self.assertion
        if op not in OPERATIONS:
            raise CampaignError(f"unknown operation {op!r}")
        for f in self.filters:
            make_filter(f)


def load_campaign(path: str | Path) -> Campaign:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise CampaignError(f"cannot read campaign file {path}: {exc}") from None
    kv: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise CampaignError(f"{path}:{lineno}: expected key = value")
        k, v = line.split("=", 1)  # first '=' only, so 'assert = op == x' survives
        kv[k.strip()] = v.strip()
    base = path.parent

    def p(v):
        q = Path(v)
        return q if q.is_absolute() else base / q

    for req in ("name", "input", "assert"):
        if req not in kv:
            raise CampaignError(f"{path}: missing key {req!r}")
    m = re.match(r"^(\w+)\s*==\s*(\w+)$", kv["assert"])
    if not m:
        raise CampaignError(f"{path}: assertion must read 'operation == outcome'")
    return Campaign(
        name=kv["name"],
        inputs=[p(s.strip()) for s in kv["input"].split(",") if s.strip()],
        assertion=(m.group(1), m.group(2)),
        filters=[s.strip() for s in kv.get("filter", "").split(",") if s.strip()],
        journal=p(kv["journal"]) if "journal" in kv else None,
        report=p(kv["report"]) if "report" in kv else None,
        witness_dir=p(kv["witness_dir"]) if "witness_dir" in kv else None,
        budget=int(kv["budget"]) if "budget" in kv else None,
        workers=int(kv.get("workers", "1")),
    )


@dataclass(frozen=True)
class ResultRecord:
    key: str
    outcome: str  # pass, fail or unknown
    witness: str | None
    millis: int
    encoding: str

    def line(self) -> str:
        return "\t".join([self.key, self.outcome, self.witness or "-", str(self.millis), self.encoding]) + "\n"

    @classmethod
    def parse(cls, line: str) -> ResultRecord:
        key, outcome, wit, ms, enc = line.rstrip("\n").split("\t")
        if outcome not in ("pass", "fail", "unknown"):
            raise CampaignError(f"bad journal outcome {outcome!r}")
        return cls(key, outcome, None if wit == "-" else wit, int(ms), enc)

    @property
    def order(self) -> int:
        return parse_graph6(self.encoding).order


def read_journal(path: Path) -> dict[str, ResultRecord]:
    out = {}
    if path is None or not path.exists():
        return out
    with path.open() as fh:
        for line in fh:
            if line.strip():
                rec = ResultRecord.parse(line)
                out[rec.key] = rec
    return out


def _encode(g: MultiGraph) -> str:
    return to_graph6(g) if g.is_simple() else to_sparse6(g)


def evaluate(g: MultiGraph, campaign: Campaign) -> tuple[str, object, int]:
    """Run the assertion on one graph: (pass/fail/unknown, witness, millis)."""
    op, expected = campaign.assertion
    t0 = time.perf_counter()
    got, wit = OPERATIONS[op](g, campaign.budget)
    ms = int((time.perf_counter() - t0) * 1000)
    if got == "unknown":
        return "unknown", None, ms
    return ("pass" if got == expected else "fail"), wit, ms


def _key(path: Path, rec: GraphRecord) -> str:
    return f"{path}:{rec.source.rsplit(':', 1)[1]}"


def _selected(campaign: Campaign, done: set[str]) -> Iterator[tuple[str, MultiGraph]]:
    filters = [make_filter(f) for f in campaign.filters]
    for path in campaign.inputs:
        for rec in read_catalog(path):
            key = _key(path, rec)
            if key in done:
                continue
            if all(f(rec.graph) for f in filters):
                yield key, rec.graph


def _work(args):
    key, enc, campaign = args
    g = parse_graph6(enc, name=key)
    outcome, wit, ms = evaluate(g, campaign)
    cert = format_certificate(petersen(), wit) if wit is not None and campaign.assertion[0] == "contains_petersen" else None
    return key, outcome, cert, ms, enc


@dataclass
class Summary:
    name: str
    by_order: dict[int, Counter]
    filtered_out: int = 0

    def totals(self) -> Counter:
        out = Counter()
        for c in self.by_order.values():
            out.update(c)
        return out

    @property
    def ok(self) -> bool:
        t = self.totals()
        return t["fail"] == 0 and t["unknown"] == 0

    def lines(self) -> list[str]:
        out = [f"campaign {self.name}"]
        for n in sorted(self.by_order):
            c = self.by_order[n]
            out.append(f"n={n} pass={c['pass']} fail={c['fail']} unknown={c['unknown']}")
        t = self.totals()
        out.append(f"total pass={t['pass']} fail={t['fail']} unknown={t['unknown']}")
        return out

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "by_order": {str(n): dict(self.by_order[n]) for n in sorted(self.by_order)},
            "totals": dict(self.totals()),
            "ok": self.ok,
        }


def run_campaign(campaign: Campaign, progress: Callable[[ResultRecord], None] | None = None) -> Summary:
    """Evaluate every selected graph not yet in the journal, append results,
    and summarise from the whole journal (or in memory without one)."""
    for path in campaign.inputs:
        if not os.access(path, os.R_OK):
            raise CampaignError(f"cannot read catalog {path}")
    journaled = read_journal(campaign.journal)
    records: dict[str, ResultRecord] = dict(journaled)
    fh = None
    if campaign.journal is not None:
        campaign.journal.parent.mkdir(parents=True, exist_ok=True)
        fh = campaign.journal.open("a")
    if campaign.witness_dir is not None:
        campaign.witness_dir.mkdir(parents=True, exist_ok=True)
    last = None
    try:
        jobs = ((key, _encode(g), campaign) for key, g in _selected(campaign, set(journaled)))
        if campaign.workers > 1:
            from multiprocessing import Pool

            pool = Pool(campaign.workers)
            results: Iterable = pool.imap(_work, jobs, chunksize=8)
        else:
            pool = None
            results = map(_work, jobs)
        try:
            for key, outcome, cert, ms, enc in results:
                wpath = None
                if cert is not None and campaign.witness_dir is not None:
                    wfile = campaign.witness_dir / (re.sub(r"[^\w.-]", "_", key) + ".cert")
                    wfile.write_text(cert)
                    wpath = str(wfile)
                rec = ResultRecord(key, outcome, wpath, ms, enc)
                records[key] = rec
                if fh is not None:
                    fh.write(rec.line())
                    fh.flush()
                last = key
                if progress is not None:
                    progress(rec)
        finally:
            if pool is not None:
                pool.close()
                pool.join()
    except OSError as exc:
        raise CampaignError(f"I/O failure after record {last}: {exc}") from exc
    finally:
        if fh is not None:
            os.fsync(fh.fileno())
            fh.close()

    by_order: dict[int, Counter] = defaultdict(Counter)
    wanted = {str(p) for p in campaign.inputs}
    for key in sorted(records):
        rec = records[key]
        if key.rsplit(":", 1)[0] not in wanted:
            continue
        by_order[rec.order][rec.outcome] += 1
    summary = Summary(campaign.name, dict(by_order))
    if campaign.report is not None:
        campaign.report.write_text(json.dumps(summary.as_dict(), indent=2, sort_keys=True) + "\n")
    return summary


# -- minimal interesting graphs ---------------------------------------------------


class MissingCatalog(CampaignError):
    pass


def minimality_filter(stream: Iterable[GraphRecord], smaller: dict[int, Iterable[GraphRecord]] | None = None,
                      budget: int | None = None) -> Iterator[GraphRecord]:
    """Yield the interesting graphs of ``stream`` that contain no interesting
    graph of smaller order.

    ``smaller`` maps every even order from 10 up to (not including) the
    stream's order to a catalog of that order; the interesting graphs in it are
    collected once. Containment that cannot be settled within the budget
    raises, since neither answer would be safe.
    """
    smaller = dict(smaller or {})
    cache: list[MultiGraph] = []
    ready = False
    for rec in stream:
        g = rec.graph
        if not is_interesting(g):
            continue
        if not ready:
            for n in range(10, g.order, 2):
                if n not in smaller:
                    raise MissingCatalog(f"no catalog supplied for order {n}")
                cache += [r.graph for r in smaller[n] if is_interesting(r.graph)]
            ready = True
        minimal = True
        for h in cache:
            if h.order >= g.order:
                continue
            w = contains_subdivision(g, h, budget)
            if w is UNKNOWN:
                raise CampaignError(f"{rec.source}: containment of a {h.order}-vertex graph undecided")
            if w is not None:
                minimal = False
                break
        if minimal:
            yield rec
