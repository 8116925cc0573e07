import pytest

from siltlab.examples import a2, a3, lambda0

ACCEPTANCE_LINES = pytest.StashKey[list]()


@pytest.fixture(params=["lambda0", "a2", "a3"])
def any_fixture(request):
    return {"lambda0": lambda0, "a2": a2, "a3": a3}[request.param]()


@pytest.fixture
def acceptance_lines(request):
    return request.config.stash.setdefault(ACCEPTANCE_LINES, [])


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split(".")[0].split()[-1])):
            terminalreporter.write_line(line)
