import pytest
from hypothesis import HealthCheck, settings

from hb_lab.disk import make_grid
from hb_lab.pairs import pair_alpha

settings.register_profile("lab", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("lab")


@pytest.fixture(scope="session")
def grid4096():
    return make_grid(4096)


@pytest.fixture(scope="session")
def pair_cache(grid4096):
    cache = {}

    def get(alpha):
        if alpha not in cache:
            cache[alpha] = pair_alpha(alpha, grid4096)
        return cache[alpha]
    return get


ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def acceptance_report():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion")[1].split()[0])):
            terminalreporter.write_line(line)
