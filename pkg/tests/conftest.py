import pytest

from dimerlab import corpus


@pytest.fixture(scope="session")
def models():
    return {name: corpus.load(name) for name in corpus.names()}


@pytest.fixture(scope="session")
def manifest():
    return corpus.manifest()["models"]


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import report_lines
    except ImportError:
        return
    lines = report_lines()
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
