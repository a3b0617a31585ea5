import random

import pytest
from hypothesis import HealthCheck, settings

from ilrs.gf import FieldTower

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

FIELDS = [(2, 3), (3, 2), (3, 4)]

_towers = {}


def tower(q, m, s=None, u=1):
    key = (q, m, s, u)
    if key not in _towers:
        _towers[key] = FieldTower(q, m, u, s=s)
    return _towers[key]


@pytest.fixture(params=FIELDS, ids=lambda f: f"q{f[0]}m{f[1]}")
def any_tower(request):
    return tower(*request.param)


@pytest.fixture
def rng():
    return random.Random(1234)


@pytest.fixture
def ref_tower():
    return tower(3, 4, s=5)


# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
