import pytest

_RESULTS = []


class AcceptanceLog:
    def record(self, name, passed, detail=""):
        _RESULTS.append((name, bool(passed), detail))


@pytest.fixture
def acceptance():
    return AcceptanceLog()


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in _RESULTS:
        terminalreporter.write_line("%s  %s  %s" % ("PASS" if passed else "FAIL", name, detail))
