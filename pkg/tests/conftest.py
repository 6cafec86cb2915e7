import contextlib

import pytest


def pytest_configure(config):
    config.acceptance_lines = []


@pytest.fixture
def criterion(request):
    """Context manager recording one PASS/FAIL line per acceptance criterion."""
    lines = request.config.acceptance_lines

    @contextlib.contextmanager
    def check(number, title):
        try:
            yield
        except BaseException as exc:
            line = f"FAIL criterion {number}: {title} ({type(exc).__name__}: {exc})"
            print(line)
            lines.append(line)
            raise
        line = f"PASS criterion {number}: {title}"
        print(line)
        lines.append(line)

    return check


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if config.acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(config.acceptance_lines, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
