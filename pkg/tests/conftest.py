import numpy as np
import pytest

from lelc.bits import BitString


def random_payload(rng, nbits, p_one=0.5):
    return BitString("".join("1" if b else "0" for b in rng.random(nbits) < p_one))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_RESULTS = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(ACCEPTANCE_RESULTS[n])
