import numpy as np
import pytest

from rsalg.corpus import NAMES, builtin

CORPUS = list(NAMES)


@pytest.fixture(params=CORPUS)
def S(request):
    return builtin(request.param)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def cvec(rng, n):
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not any(mod.RESULTS.values()):
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
