import os

import pytest

from tiler.census import census
from tiler.quotients import torus_quotient
from tiler.tilings import NAMES, template

WORKERS = int(os.environ.get("TILER_TEST_WORKERS", min(4, os.cpu_count() or 1)))


@pytest.fixture(scope="session")
def full_census():
    """Default-budget census of every tiling: {name: [QuotientRecord, ...]}."""
    return {name: census(name, workers=WORKERS) for name in NAMES}


@pytest.fixture(scope="session")
def census_maps(full_census):
    """(record, map) for every polyhedral census row."""
    out = []
    for name, recs in full_census.items():
        t = template(name)
        out += [(r, torus_quotient(t, r.basis)) for r in recs if r.polyhedral]
    return out


# acceptance reporting: one line per criterion in the terminal summary
_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n, title = mark.args
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        details = [str(v) for k, v in item.user_properties if k == "detail"]
        _CRITERIA[n] = (title, "PASS" if rep.passed else "FAIL", details)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        title, status, details = _CRITERIA[n]
        terminalreporter.write_line(f"criterion {n:2d}: {status}  {title}")
        for d in details:
            terminalreporter.write_line(f"               {d}")
