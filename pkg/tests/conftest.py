import random

import pytest

from tameselmer.tame_deform import TrivialPrime


@pytest.fixture
def rng():
    return random.Random(20261015)


@pytest.fixture(params=[5, 7], ids=["p5", "p7"])
def prime(request):
    return TrivialPrime.least(request.param)


# one line per acceptance criterion, echoed at the end of the run
ACCEPTANCE_LINES: dict[int, str] = {}


def record_criterion(number: int, passed: bool, detail: str) -> None:
    line = f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES[number] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[number])
