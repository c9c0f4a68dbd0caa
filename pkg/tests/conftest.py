import sys

import numpy as np
import pytest

from heatadequacy import scenario, synthetic


@pytest.fixture(scope="session")
def synth_data():
    return synthetic.generate_synthetic()


@pytest.fixture(scope="session")
def default_cfg():
    return scenario.default_config()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None:
        return
    terminalreporter.section("acceptance criteria")
    for n in range(1, 10):
        ok, detail = mod.RESULTS.get(n, (False, "not run or errored"))
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
