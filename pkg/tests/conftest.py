import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "repo",
    derandomize=True,
    deadline=None,
    max_examples=int(os.environ.get("HYPOTHESIS_MAX_EXAMPLES", "60")),
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")

SEED = int(os.environ.get("TROPICAL_PAVING_TEST_SEED", "20240611"))

_criteria: dict[str, list[str]] = {}


@pytest.fixture
def seed() -> int:
    return SEED


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    key = f"criterion {number}: {title}"
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        if hasattr(rep, "wasxfail"):
            status = "FAIL (known, see notes)" if rep.skipped else "UNEXPECTED PASS"
        elif rep.passed:
            status = "PASS"
        elif rep.skipped:
            status = "SKIPPED"
        else:
            status = "FAIL"
        _criteria.setdefault(key, []).append(f"{item.name}: {status}")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")

    def num(k):
        return int(k.split()[1].rstrip(":"))

    for key in sorted(_criteria, key=num):
        results = _criteria[key]
        overall = "PASS" if all(r.endswith(": PASS") for r in results) else "FAIL"
        terminalreporter.write_line(f"{overall}  {key}")
        for r in results:
            terminalreporter.write_line(f"      {r}")
