import json
from pathlib import Path

import pytest

from plumbline import fixtures
from plumbline.blowdown import load_enhanced_form
from plumbline.diagram import load_pd
from plumbline.khovanov import ingest_table
from plumbline.plumbing import WeightedGraph, load_graph

HERE = Path(__file__).parent

# vectors exactly as printed in the worked examples
W1_GOOD = {
    (0, 0, 0, 0, 1), (0, 0, 0, 0, -1), (2, 0, 0, 0, 1), (2, 0, 0, 0, -1),
    (0, 0, 0, 2, 1), (0, 0, 0, 2, -1), (0, 0, 0, 0, 3), (0, 0, 2, 0, -1),
    (0, 2, 0, 0, -1),
}
W1_SQUARE_MINUS5 = {(0, 0, 0, 0, 3), (0, 0, 0, 2, 1), (0, 0, 2, 0, -1)}

W2_GOOD = {
    (0, 0, 0, 0, 0, 1), (0, 0, 0, 0, 0, -1), (0, 0, 0, 0, 0, 3), (0, 0, 0, 0, 2, -1),
    (2, 0, 0, 0, 0, -1), (0, 0, 0, 2, 0, -1), (0, 2, 0, 0, 0, -1), (2, 0, 0, 0, 0, 1),
    (0, 0, 0, 0, 2, 1),
}
W2_SQUARE_MINUS6 = {
    (0, 0, 0, 0, 0, 3), (0, 0, 0, 2, 0, -1), (0, 0, 0, 0, 2, 1), (0, 2, 0, 0, 0, -1),
    (2, 0, 0, 0, 0, 1),
}

# 25 entries as printed; (0,0,1,2,0,-1) appears twice and (0,0,1,0,2,-1) is
# absent, so the set has 24 elements
W3_GOOD_PRINTED = (
    [(0, 0, s, 0, 0, t) for s in (1, -1) for t in (1, -1)]
    + [(0, 0, s, 0, 0, 3) for s in (1, -1)]
    + [(0, 0, s, 2, 0, t) for s in (1, -1) for t in (1, -1)]
    + [(0, 0, -1, 2, 0, 3)]
    + [(0, 0, -1, 0, 2, t) for t in (1, -1)]
    + [(0, 0, 1, 2, 0, -1)]
    + [(0, 2, -1, 0, 0, t) for t in (1, -1)]
    + [(2, 0, s, 0, 0, t) for s in (1, -1) for t in (1, -1)]
    + [(2, 0, -1, 2, 0, t) for t in (1, -1)]
    + [(0, 0, 3, 0, 0, t) for t in (1, -1)]
    + [(0, 0, -1, 2, 2, -1)]
)
W3_MISSING_FROM_PRINT = (0, 0, 1, 0, 2, -1)
W3_SQUARE_MINUS6 = {
    (0, 0, 1, 0, 0, 3), (0, 0, -1, 0, 2, 1), (0, 0, 1, 2, 0, 1), (0, 0, 3, 0, 0, -1),
    (0, 0, -1, 2, 2, -1),
}

W4_GOOD = {
    (0, 0, 0, 0, 0, 0, 1), (0, 0, 0, 0, 0, 0, -1), (0, 0, 0, 0, 0, 0, 3),
    (2, 0, 0, 0, 0, 0, 1), (2, 0, 0, 0, 0, 0, -1), (0, 2, 0, 0, 0, 0, -1),
    (0, 0, 0, 0, 2, 0, -1), (0, 0, 0, 0, 0, 2, 1), (0, 0, 0, 0, 0, 2, -1),
}
W4_SQUARE_MINUS7 = {(0, 0, 0, 0, 0, 0, 3), (2, 0, 0, 0, 0, 0, 1), (0, 2, 0, 0, 0, 0, -1)}

J_8_20 = {1: -1, 0: 2, -1: -1, -2: 2, -3: -1, -4: 1, -5: -1}


@pytest.fixture(scope="session")
def graphs() -> dict[str, WeightedGraph]:
    return {n: load_graph(fixtures.graph_path(n)) for n in ("w1", "w2", "w3", "w4")}


@pytest.fixture(scope="session")
def a1():
    return load_enhanced_form(fixtures.ball_path("a1"))


@pytest.fixture(scope="session")
def a3():
    return load_enhanced_form(fixtures.ball_path("a3"))


@pytest.fixture(scope="session")
def knots():
    names = ("8_20", "9_46", "10_137", "10_140", "5_2", "trefoil", "link_l")
    return {n: load_pd(fixtures.pd_path(n)) for n in names}


@pytest.fixture(scope="session")
def kh_tables():
    return {n: ingest_table(fixtures.kh_path(n)) for n in ("8_20", "9_46", "10_137", "10_140")}


@pytest.fixture(scope="session")
def knotinfo():
    with open(HERE / "data" / "knotinfo_upto10.json") as fh:
        return json.load(fh)


@pytest.fixture
def single_vertex():
    return WeightedGraph.build({"v": -2}, [])


_criteria: dict[int, tuple[bool, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number n")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    for key, value in report.user_properties:
        if key != "criterion":
            continue
        reason = ""
        if report.failed:
            crash = getattr(report.longrepr, "reprcrash", None)
            reason = crash.message.splitlines()[0] if crash else str(report.longrepr).splitlines()[-1]
        _criteria[value] = (report.passed, reason)


@pytest.fixture(autouse=True)
def _record_criterion(request, record_property):
    marker = request.node.get_closest_marker("criterion")
    if marker:
        record_property("criterion", marker.args[0])


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        ok, reason = _criteria[n]
        line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}"
        terminalreporter.write_line(line + (f"  ({reason})" if reason else ""))
