from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from mimicnet.graph import CapGraph

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def star3() -> CapGraph:
    return CapGraph(["a", "b", "c", "s"], ["a", "b", "c"],
                    [("a", "s", 1), ("b", "s", 2), ("c", "s", 3)])


def star3_unique() -> CapGraph:
    return CapGraph(["a", "b", "c", "s"], ["a", "b", "c"],
                    [("a", "s", 1), ("b", "s", 2), ("c", "s", 4)])


def edge2() -> CapGraph:
    return CapGraph(["a", "b"], ["a", "b"], [("a", "b", 5)])


def path4() -> CapGraph:
    return CapGraph(["a", "x", "y", "b"], ["a", "b"],
                    [("a", "x", 3), ("x", "y", 1), ("y", "b", 2)])


def triangle() -> CapGraph:
    return CapGraph(["a", "b", "c"], ["a", "b", "c"],
                    [("a", "b", 1), ("b", "c", 1), ("a", "c", 1)])


def disconnected3() -> CapGraph:
    return CapGraph(["a", "b", "c"], ["a", "b", "c"], [])


@pytest.fixture
def STAR3():
    return star3()


@pytest.fixture
def STAR3P():
    return star3_unique()


@pytest.fixture
def EDGE2():
    return edge2()


@pytest.fixture
def PATH4():
    return path4()


@st.composite
def small_graphs(draw, max_vertices=7, max_terminals=4, max_cap=6, min_cap=0):
    """Arbitrary small graphs, possibly disconnected, with integer capacities."""
    n = draw(st.integers(2, max_vertices))
    k = draw(st.integers(2, min(n, max_terminals)))
    names = [f"v{i}" for i in range(n)]
    pairs = [(names[i], names[j]) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs)))
    caps = draw(st.lists(st.integers(min_cap, max_cap), min_size=len(chosen), max_size=len(chosen)))
    terminals = draw(st.permutations(names))[:k]
    return CapGraph(names, terminals, [(u, v, c) for (u, v), c in zip(chosen, caps)])


@st.composite
def small_trees(draw, max_vertices=14, max_terminals=6):
    n = draw(st.integers(2, max_vertices))
    k = draw(st.integers(2, min(n, max_terminals)))
    names = [f"v{i}" for i in range(n)]
    edges = []
    for i in range(1, n):
        j = draw(st.integers(0, i - 1))
        edges.append((names[j], names[i], draw(st.integers(0, 9))))
    terminals = draw(st.permutations(names))[:k]
    return CapGraph(names, terminals, edges)


_CRITERIA: dict[int, tuple[str, bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    marker = _MARKS.get(report.nodeid)
    if marker is not None:
        number, title = marker
        prev = _CRITERIA.get(number, (title, True))[1]
        _CRITERIA[number] = (title, prev and report.passed)


_MARKS: dict[str, tuple[int, str]] = {}


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            _MARKS[item.nodeid] = tuple(m.args)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, ok = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}")
