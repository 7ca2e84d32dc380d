import pytest

from ofamatch.compile import ANCHORED, compile_pattern

from helpers import EXAMPLE


@pytest.fixture(scope="session")
def example():
    return compile_pattern(EXAMPLE, ANCHORED, alphabet="ab")


@pytest.fixture(scope="session")
def example_dfa(example):
    return example.dfa


_CRITERIA: dict[str, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion checked by this test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call":
        return
    verdict = "PASS" if report.passed else "SKIP" if report.skipped else "FAIL"
    label = marker.args[0]
    callspec = getattr(item, "callspec", None)
    if callspec is not None:
        label += f" [{callspec.id}]"
    _CRITERIA[item.nodeid] = (label, verdict)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for label, verdict in sorted(_CRITERIA.values()):
        terminalreporter.write_line(f"{verdict}  {label}")
