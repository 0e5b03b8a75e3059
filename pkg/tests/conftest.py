import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from andreadakis import Word, reduce

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ACCEPTANCE_LINES = []


def words(n, max_len=8):
    """Hypothesis strategy for reduced words of rank ``n``."""
    letter = st.integers(1, n).flatmap(lambda i: st.sampled_from([i, -i]))
    return st.lists(letter, max_size=max_len).map(lambda ls: reduce(ls, n))


def x(i, n=2):
    return Word.generator(n, i)


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
