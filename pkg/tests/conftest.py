import functools

import pytest

from weakgalois.exactlin import QQ, Field
from weakgalois.examples import demo_parts
from weakgalois.fileformat import from_parts


@functools.lru_cache(maxsize=None)
def demo(name, p=None):
    k = QQ if p is None else Field.prime(p)
    return from_parts(k, demo_parts(name, k))


@pytest.fixture(scope="session")
def load_demo():
    return demo


_VERDICTS = []


@pytest.fixture
def verdict(capsys):
    """Record and print the one-line outcome of an acceptance criterion."""

    def emit(number, checks):
        failed = [name for name, ok in checks if not ok]
        line = f"criterion {number:>2}: {'PASS' if not failed else 'FAIL'}"
        if failed:
            line += " (" + "; ".join(failed) + ")"
        _VERDICTS.append(line)
        with capsys.disabled():
            print("\n" + line)
        return not failed, line

    return emit


def pytest_terminal_summary(terminalreporter):
    if _VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_VERDICTS):
            terminalreporter.write_line(line)
