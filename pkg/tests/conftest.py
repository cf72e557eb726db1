import numpy as np
import pytest

from lorentz_k4.lorentz import boost, rotation

ACCEPTANCE_LINES: list[str] = []


def random_lorentz(rng: np.random.Generator, max_rapidity: float = 3.0) -> np.ndarray:
    w = rng.normal(size=3)
    w *= rng.uniform(0, max_rapidity) / np.linalg.norm(w)
    theta = rng.normal(size=3)
    theta *= rng.uniform(0, np.pi) / np.linalg.norm(theta)
    return rotation(theta) @ boost(w)


@pytest.fixture
def rng():
    return np.random.default_rng(20261014)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
