import pytest

_ACCEPTANCE: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def criterion(request):
    """Record one acceptance line: call with (number, title); outcome comes from the test."""
    def register(number: int, title: str):
        request.node._acceptance = (number, title)
    return register


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    tag = getattr(item, "_acceptance", None)
    if tag is not None and report.when == "call":
        number, title = tag
        _ACCEPTANCE[f"{number:02d}"] = (report.passed, title)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_ACCEPTANCE):
        ok, title = _ACCEPTANCE[key]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {int(key):2d}. {title}")
