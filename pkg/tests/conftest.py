import pytest

from ringhall import PRESETS, FreeReps, HallAlgebra, get_ring

QN = [(2, 1), (2, 2), (3, 2), (2, 3)]


def algebra(name="a2", q=2, n=2, twist="half"):
    return HallAlgebra(FreeReps(PRESETS[name], get_ring(q, n)), twist)


@pytest.fixture(params=QN, ids=lambda p: f"q{p[0]}n{p[1]}")
def qn(request):
    return request.param


@pytest.fixture
def a2(qn):
    return algebra("a2", *qn)


@pytest.fixture
def R22():
    return get_ring(2, 2)


@pytest.fixture
def R23():
    return get_ring(2, 3)


# acceptance lines collected by test_acceptance.py, echoed after the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1][1:])):
            terminalreporter.write_line(line)
