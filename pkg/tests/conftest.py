from pathlib import Path

import pytest

from tiedlinks.tiedbraid import parse

DATA = Path(__file__).resolve().parent.parent / "data"


def load(name: str):
    return parse((DATA / f"{name}.link").read_text(encoding="utf-8"))


@pytest.fixture
def corpus():
    return {p.stem: parse(p.read_text(encoding="utf-8")) for p in sorted(DATA.glob("*.link"))}


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
