import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from toric_ara.model import Variety  # noqa: E402

EX14 = Variety.uniform(4, (8, 0, 1), (0, 12, 3))
EX35 = Variety.mixed3((5, 3, 6), (2, 0, 3), (0, 1, 1))
D6 = Variety.uniform(6, (6, 0, 1), (0, 6, 5))


@pytest.fixture
def ex14():
    return EX14


@pytest.fixture
def ex35():
    return EX35


@pytest.fixture
def d6():
    return D6


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance(request):
    """Record one pass/fail line for an acceptance criterion."""
    holder = {}

    def record(label: str, detail: str = ""):
        holder["label"], holder["detail"] = label, detail

    yield record
    rep = getattr(request.node, "rep_call", None)
    ok = rep is not None and rep.passed
    line = f"{'PASS' if ok else 'FAIL'}  {holder.get('label', request.node.name)}  {holder.get('detail', '')}"
    ACCEPTANCE_LINES.append(line.rstrip())
    print(line)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
