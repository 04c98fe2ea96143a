from __future__ import annotations

import pytest

from alexlink.fixtures import corpus, load_fixture


@pytest.fixture(scope="session")
def diagrams():
    return corpus(include_stretch=True)


@pytest.fixture
def hopf():
    return load_fixture("hopf").diagram


@pytest.fixture
def trefoil():
    return load_fixture("trefoil").diagram


@pytest.fixture
def unknot():
    return load_fixture("unknot").diagram


@pytest.fixture
def criterion(request):
    """Run an acceptance check and record one pass/fail line for it."""
    results = request.config.__dict__.setdefault("acceptance_results", [])

    def run(number: int, title: str, check):
        try:
            detail = check()
        except BaseException as exc:
            line = f"criterion {number:>2}: FAIL  {title} ({type(exc).__name__}: {exc})"
            results.append(line)
            print(line)
            raise
        line = f"criterion {number:>2}: PASS  {title}" + (f" ({detail})" if detail else "")
        results.append(line)
        print(line)

    return run


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = config.__dict__.get("acceptance_results")
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(results, key=lambda s: int(s.split(":")[0].split()[-1])):
        terminalreporter.write_line(line)
