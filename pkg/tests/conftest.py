from __future__ import annotations

import random

import pytest

# acceptance lines collected by test_acceptance.py, printed after the run
ACCEPTANCE: dict[int, tuple[str, str]] = {}


def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=20240601, help="seed for randomized tests")


@pytest.fixture
def seed(request) -> int:
    return request.config.getoption("--seed")


@pytest.fixture
def rng(seed) -> random.Random:
    return random.Random(seed)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        status, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {status}  {detail}")
