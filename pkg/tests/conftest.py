import pytest

from epwb.module import build_module
from epwb.ring import build_ring

from oracles import z2_times_z8_tables

ZN4 = {"kind": "zn", "n": 4}
ZN8 = {"kind": "zn", "n": 8}
F2 = {"kind": "zn", "n": 2}
M2F2 = {"kind": "matrix", "m": 2, "q": 2}
REGULAR = {"kind": "regular"}


def _z2xz8():
    add, act = z2_times_z8_tables()
    return {"kind": "tables", "add": add, "act": act}


TEST_MODULES = {
    "Z4": (ZN4, REGULAR),
    "Z8": (ZN8, REGULAR),
    "M21F2": (M2F2, {"kind": "matrix-cols", "k": 1}),
    "M2F2": (M2F2, REGULAR),
    "Z2xZ8": (ZN8, _z2xz8()),
    "F2^2": (F2, {"kind": "power", "base": REGULAR, "n": 2}),
    "M23F2": (M2F2, {"kind": "matrix-cols", "k": 3}),
}

_cache = {}


def make(name):
    if name not in _cache:
        rspec, mspec = TEST_MODULES[name]
        _cache[name] = build_module(build_ring(rspec), mspec)
    return _cache[name]


@pytest.fixture
def mod():
    return make


# -- acceptance summary: one line per criterion --------------------------------

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or rep.when not in ("setup", "call"):
        return
    num, title = marker.args
    entry = _criteria.setdefault(num, {"title": title, "passed": 0, "failed": 0})
    if rep.failed:
        entry["failed"] += 1
    elif rep.when == "call" and rep.passed:
        entry["passed"] += 1


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        e = _criteria[num]
        status = "PASS" if e["failed"] == 0 and e["passed"] else "FAIL"
        terminalreporter.write_line(
            f"[{status}] criterion {num}: {e['title']} "
            f"({e['passed']} passed, {e['failed']} failed)")
