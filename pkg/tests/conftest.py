from importlib import resources
from pathlib import Path

import pytest

from char3curves.astower.tower import load_curve

CURVES = Path(str(resources.files("char3curves.data").joinpath("curves")))
PRESENTATIONS = Path(str(resources.files("char3curves.data").joinpath("presentations")))


@pytest.fixture(scope="session")
def curve_dir() -> Path:
    return CURVES


@pytest.fixture(scope="session")
def genus10():
    return load_curve(CURVES / "genus10.curve")


@pytest.fixture(scope="session")
def genus28():
    return load_curve(CURVES / "genus28.curve")


@pytest.fixture(scope="session", params=[1, 2], ids=["c=1", "c=2"])
def genus2(request):
    return load_curve(CURVES / "genus2.curve", {"c": request.param})


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion the test belongs to")


_CRITERIA: dict[str, list[bool]] = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    crit = getattr(report, "criterion", None)
    if crit is not None:
        _CRITERIA.setdefault(str(crit), []).append(report.passed)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        outcome.get_result().criterion = marker.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(_CRITERIA, key=lambda c: (not c.isdigit(), int(c) if c.isdigit() else 0, c)):
        results = _CRITERIA[crit]
        label = f"criterion {crit}" if crit.isdigit() else f"{crit} claims reported INCONCLUSIVE"
        status = "PASS" if all(results) else "FAIL"
        terminalreporter.write_line(f"{label}: {status} ({sum(results)}/{len(results)} checks)")
