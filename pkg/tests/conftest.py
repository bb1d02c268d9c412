import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def ar1_path(a, n, rng, sigma=1.0):
    """Stationary AR(1) path via a plain loop-free filter (test oracle)."""
    from scipy.signal import lfilter
    eps = sigma * rng.standard_normal(n)
    x0 = rng.standard_normal() * sigma / np.sqrt(1 - a * a)
    return lfilter([1.0], [1.0, -a], eps, zi=[a * x0])[0]


# ---- acceptance criteria report ---------------------------------------------
# Tests marked ``@pytest.mark.criterion(n, "title")`` are rolled up into one
# PASS/FAIL line per criterion in the terminal summary.

_CRITERIA: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or report.when not in ("setup", "call"):
        return
    n, title = mark.args
    entry = _CRITERIA.setdefault(n, {"title": title, "ok": True, "tests": 0, "notes": []})
    if report.when == "call":
        entry["tests"] += 1
        entry["notes"] += [v for k, v in item.user_properties if k == "criterion_note"]
    if report.failed or (report.when == "setup" and report.skipped):
        entry["ok"] = False


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        e = _CRITERIA[n]
        status = "PASS" if e["ok"] and e["tests"] else "FAIL"
        line = f"CRITERION {n}: {status}  {e['title']}"
        if e["notes"]:
            line += "  [" + "; ".join(e["notes"]) + "]"
        terminalreporter.write_line(line)


@pytest.fixture
def note(record_property):
    """Attach a short note to the criterion line of the current test."""
    return lambda text: record_property("criterion_note", text)
