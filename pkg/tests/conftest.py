import functools

import pytest
from hypothesis import HealthCheck, settings

from edcs_lp.lp import build_lp
from edcs_lp.profiles import Params
from edcs_lp.simplex import solve_exact

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def _params(beta, beta_minus):
    return beta if isinstance(beta, Params) else Params(beta, beta_minus)


@functools.lru_cache(maxsize=None)
def _lp(params):
    return build_lp(params)


@functools.lru_cache(maxsize=None)
def _exact(params):
    return solve_exact(_lp(params))


def cached_lp(beta, beta_minus=None):
    return _lp(_params(beta, beta_minus))


def cached_exact(beta, beta_minus=None):
    """Exact solve shared by every test in the session; takes Params or two ints."""
    return _exact(_params(beta, beta_minus))


@pytest.fixture(scope="session")
def exact():
    return cached_exact


@pytest.fixture(scope="session")
def lp_for():
    return cached_lp


# -- acceptance reporting ---------------------------------------------------

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        detail = getattr(item, "criterion_detail", "")
        _CRITERIA[number] = (title, report.outcome, detail)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, outcome, detail = _CRITERIA[number]
        status = "PASS" if outcome == "passed" else "FAIL"
        line = f"criterion {number:>2} [{status}] {title}"
        terminalreporter.write_line(line + (f" -- {detail}" if detail else ""))
