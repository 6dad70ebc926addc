import pytest

_RESULTS = pytest.StashKey[dict]()


def pytest_configure(config):
    config.stash[_RESULTS] = {}


@pytest.fixture
def criterion(request):
    """Record ``(number, title, passed, detail)`` for the acceptance summary."""
    results = request.config.stash[_RESULTS]

    def record(number: int, title: str, passed: bool, detail: str = "") -> bool:
        results[number] = (title, bool(passed), detail)
        line = f"{'PASS' if passed else 'FAIL'} criterion {number}: {title}" + (f" ({detail})" if detail else "")
        print(line)
        return bool(passed)

    return record


def pytest_terminal_summary(terminalreporter, config):
    results = config.stash.get(_RESULTS, {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        title, passed, detail = results[number]
        line = f"{'PASS' if passed else 'FAIL'} criterion {number}: {title}"
        terminalreporter.write_line(line + (f" ({detail})" if detail else ""))
