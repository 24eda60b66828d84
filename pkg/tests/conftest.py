import pytest

from bipancyclic import fixtures

_CRITERIA = []


@pytest.fixture
def g6():
    return fixtures.g6()


@pytest.fixture
def g6b():
    return fixtures.g6b()


@pytest.fixture
def g8m():
    return fixtures.g8m()


@pytest.fixture
def g8s():
    return fixtures.g8s()


@pytest.fixture
def gdis():
    return fixtures.gdis()


@pytest.fixture
def ges():
    return fixtures.ges()


@pytest.fixture
def k33():
    return fixtures.k33()


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(name): acceptance criterion reported in the summary")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        _CRITERIA.append((marker.args[0], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _CRITERIA:
        tag = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"[{tag}] {name}")
