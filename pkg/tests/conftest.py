import os
from functools import lru_cache
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from cubicpetersen.graph import MultiGraph, read_catalog

CATALOGS = Path(__file__).resolve().parent.parent / "catalogs"

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large]
)
settings.register_profile("quick", parent=settings.get_profile("default"), max_examples=50)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# trial count for the suites that must run at least ten thousand cases
HEAVY = int(os.environ.get("CUBICPETERSEN_TRIALS", "10000"))


@lru_cache(maxsize=None)
def catalog(name: str) -> tuple:
    path = CATALOGS / name
    if not path.exists():
        pytest.skip(f"catalog {name} not present")
    return tuple(read_catalog(path))


def cubic_upto(n: int) -> list[MultiGraph]:
    out = []
    for k in range(4, n + 1, 2):
        out += [r.graph for r in catalog(f"cubic_n{k}.g6")]
    return out


@st.composite
def multigraphs(draw, max_n=7, max_m=12, loops=True):
    n = draw(st.integers(1, max_n))
    pairs = draw(
        st.lists(
            st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda p: loops or p[0] != p[1]),
            max_size=max_m,
        )
    )
    return MultiGraph(range(n), pairs)


@st.composite
def simple_graphs(draw, min_n=1, max_n=10, p=None):
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return MultiGraph(range(n), [e for e, k in zip(pairs, keep) if k])


@st.composite
def relabeled(draw, g: MultiGraph):
    perm = draw(st.permutations(list(g.vertices)))
    return g.relabeled(dict(zip(g.vertices, perm)))


@pytest.fixture(scope="session")
def small_cubic():
    return cubic_upto(12)


# -- acceptance report ------------------------------------------------------------


def pytest_configure(config):
    config.acceptance_lines = {}


@pytest.fixture
def criterion(request):
    """``with criterion(3, "text"):`` records one pass/fail line for the
    acceptance summary; failures still propagate."""
    from contextlib import contextmanager

    @contextmanager
    def record(num, text):
        try:
            yield
        except BaseException as exc:
            if isinstance(exc, pytest.skip.Exception):
                request.config.acceptance_lines[num] = f"criterion {num:>2}: SKIP  {text} ({exc})"
                raise
            reason = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
            request.config.acceptance_lines[num] = f"criterion {num:>2}: FAIL  {text} ({reason})"
            raise
        request.config.acceptance_lines[num] = f"criterion {num:>2}: PASS  {text}"

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "acceptance_lines", {})
    if not lines:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for num in sorted(lines):
        terminalreporter.write_line(lines[num])
