from __future__ import annotations

import warnings

import pytest

from hermsinger.gftower import build_tower, small_field
from hermsinger.hermitian import family
from hermsinger.harness.verify import Context

warnings.filterwarnings("ignore", message=".*TBB.*")


@pytest.fixture(scope="session", params=[3, 4])
def q(request):
    return request.param


@pytest.fixture(scope="session")
def towers():
    return {q: build_tower(q) for q in (3, 4, 5)}


@pytest.fixture(scope="session")
def families(towers):
    return {q: family(T) for q, T in towers.items()}


@pytest.fixture(scope="session")
def fields():
    return {q: small_field(q) for q in (3, 4, 5)}


_CONTEXTS: dict[int, Context] = {}


def context(q: int) -> Context:
    """Shared per-q pipeline so codes are built once per session."""
    if q not in _CONTEXTS:
        _CONTEXTS[q] = Context(q)
    return _CONTEXTS[q]


@pytest.fixture(scope="session")
def ctx3():
    return context(3)


@pytest.fixture(scope="session")
def ctx4():
    return context(4)


@pytest.fixture(scope="session")
def ctx5():
    return context(5)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
