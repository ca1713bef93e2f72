import numpy as np
import pytest

import support


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not support.ACCEPTANCE_RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for name, ok, detail in support.ACCEPTANCE_RESULTS:
        tr.write_line(f"{name} {'PASS' if ok else 'FAIL'}: {detail}")
