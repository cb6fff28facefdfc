import sys

import pytest
from hypothesis import HealthCheck, settings

from grpdyn.constructions import alternating, build_gc, cyclic, default_catalog, dihedral, symmetric

settings.register_profile(
    "grpdyn", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("grpdyn")


@pytest.fixture(scope="session")
def A5():
    return alternating(5)


@pytest.fixture(scope="session")
def S4():
    return symmetric(4)


@pytest.fixture(scope="session")
def D5():
    return dihedral(5)


@pytest.fixture(scope="session")
def Z6():
    return cyclic(6)


@pytest.fixture(scope="session")
def gc1():
    return build_gc(1)


@pytest.fixture(scope="session")
def gc2():
    return build_gc(2)


@pytest.fixture(scope="session")
def catalog():
    return default_catalog()


@pytest.fixture(scope="session")
def small_catalog(catalog):
    return [G for G in catalog if G.order <= 40]


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    verdicts = getattr(mod, "VERDICTS", None)
    if not verdicts:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(verdicts):
        terminalreporter.write_line(verdicts[n])
