import random

import pytest
from hypothesis import settings

from artifact import expr as E
from artifact.gen import delta_law

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

# ergodic laws used across period, coordinate and complexity checks
ERGODIC_CORPUS = [
    "x + 1",
    "x + (x*x | 5)",
    "3*x + exp(3, x)",
    "inv(2*x - 1) - x",
    E.to_text(delta_law("x ^ (2*x + 1)", 1)),
]


@pytest.fixture
def rng():
    return random.Random(20240611)


# ---------------------------------------------------------------- acceptance summary

_CRITERIA: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): an acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or (rep.when != "call" and rep.passed):
        return
    number, title = mark.args
    prev = _CRITERIA.get(number)
    ok = rep.passed and (prev is None or prev[1])
    _CRITERIA[number] = (title, ok, rep.duration + (prev[2] if prev else 0.0))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, ok, secs = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {title}  ({secs:.2f}s)")
