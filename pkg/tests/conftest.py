from __future__ import annotations

import json
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from finite_epsilon import AdditiveChar, GammaChar, build_ambient

settings.register_profile(
    "repo",
    deadline=None,
    max_examples=60,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")

EXAMPLE_MODULUS = "2,0,0,2,1"


@pytest.fixture(scope="session")
def oracle() -> dict:
    return json.loads((Path(__file__).parent / "data" / "oracle.json").read_text())


@pytest.fixture(scope="session")
def F81():
    return build_ambient(3, 4, EXAMPLE_MODULUS)


@pytest.fixture(scope="session")
def example_field():
    """F_{3^8} whose degree-4 generator is a root of x^4 + 2x^3 + 2."""
    return build_ambient(3, 8, EXAMPLE_MODULUS)


@pytest.fixture(scope="session")
def example_chars():
    return GammaChar(3, 4, 66), GammaChar(3, 2, 1)


@pytest.fixture(scope="session")
def psi3():
    return AdditiveChar(3, 1)


ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])
