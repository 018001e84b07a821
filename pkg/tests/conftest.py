import random

import pytest


def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=0, help="seed for randomized tests")


@pytest.fixture
def seed(request) -> int:
    return request.config.getoption("--seed")


@pytest.fixture
def rng(seed) -> random.Random:
    return random.Random(seed)


# one line per acceptance criterion, printed after the run
ACCEPTANCE: dict[int, str] = {}


@pytest.fixture
def report():
    def record(number: int, ok: bool, text: str) -> None:
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {text}"
        ACCEPTANCE[number] = line
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[number])
