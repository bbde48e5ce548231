import pytest

_CRITERIA: dict[str, tuple[int, str]] = {}
_OUTCOMES: dict[int, str] = {}


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            _CRITERIA[item.nodeid] = (m.args[0], m.args[1])


def pytest_runtest_logreport(report):
    if report.nodeid not in _CRITERIA:
        return
    num = _CRITERIA[report.nodeid][0]
    if report.failed:
        _OUTCOMES[num] = "FAIL"
    elif report.when == "call" and report.passed:
        _OUTCOMES.setdefault(num, "PASS")
    elif report.skipped:
        _OUTCOMES.setdefault(num, "SKIP")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    seen = {}
    for num, title in _CRITERIA.values():
        seen[num] = title
    for num in sorted(seen):
        terminalreporter.write_line(f"criterion {num:>2} {_OUTCOMES.get(num, 'NOT RUN'):<7} {seen[num]}")


@pytest.fixture
def cache_dir(tmp_path, monkeypatch):
    d = tmp_path / "cache"
    monkeypatch.setenv("PERMGRAPH_CACHE_DIR", str(d))
    return d
