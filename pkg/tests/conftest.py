import pytest

from polyenum.checks import run_check

_RESULTS: dict[int, tuple[str, object]] = {}
_CACHE: dict[str, object] = {}


def acceptance(number: int, name: str):
    """Run a check once per session and record it under its criterion number."""
    if name not in _CACHE:
        _CACHE[name] = run_check(name)
    _RESULTS[number] = (name, _CACHE[name])
    return _CACHE[name]


@pytest.fixture
def criterion():
    return acceptance


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        name, result = _RESULTS[number]
        terminalreporter.write_line(f"criterion {number:2d} {result.line()}")
