import sys
import numpy as np
import pytest
from hypothesis import HealthCheck, settings, strategies as st

settings.register_profile(
    "repo", deadline=None, derandomize=True, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("repo")


def sign_lists(min_size=1, max_size=64):
    return st.lists(st.sampled_from([-1, 1]), min_size=min_size, max_size=max_size)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    acc = sys.modules.get("test_acceptance")
    if acc is None or not acc.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(acc.RESULTS):
        terminalreporter.write_line(acc.RESULTS[k])
