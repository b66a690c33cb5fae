import pytest

from sliceburnside.expr import build_group
from sliceburnside.verify import DEFAULT_CATALOG

SMALL_CATALOG = ["C1", "C2", "C3", "C4", "C6", "C2 x C2", "S3", "D8", "Q8"]

_acceptance_lines: list[str] = []


def record_criterion(number: int, title: str, ok: bool):
    line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}"
    _acceptance_lines.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_acceptance_lines):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def catalog_groups():
    return {text: build_group(text) for text in DEFAULT_CATALOG}


@pytest.fixture(params=SMALL_CATALOG)
def small_group(request):
    return build_group(request.param)
