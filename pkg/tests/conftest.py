import sys
from importlib import resources
from pathlib import Path

import pytest

from stumpbench import load_dataset

sys.path.insert(0, str(Path(__file__).parent))

_ACCEPTANCE_RESULTS: list[tuple[str, str]] = []


@pytest.fixture(scope="session")
def iris_path(tmp_path_factory) -> Path:
    source = resources.files("stumpbench").joinpath("data/iris.csv")
    target = tmp_path_factory.mktemp("data") / "iris.csv"
    target.write_text(source.read_text())
    return target


@pytest.fixture(scope="session")
def iris(iris_path):
    return load_dataset(iris_path)


def pytest_runtest_logreport(report):
    if "test_acceptance" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call":
        if report.skipped:
            outcome = "SKIP"
        else:
            outcome = "PASS" if report.passed else "FAIL"
        _ACCEPTANCE_RESULTS.append((name, outcome))
    elif report.when == "setup" and report.skipped:
        _ACCEPTANCE_RESULTS.append((name, "SKIP"))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for name, outcome in _ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{outcome:4s} {name}")
