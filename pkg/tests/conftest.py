import json
from importlib import resources
from pathlib import Path

import numpy as np
import pytest

from axialcurv.jetcore import load_germ, monge_from_germ

FIXTURES = Path(str(resources.files("axialcurv") / "fixtures"))
ACCEPTANCE_LINES: list[str] = []


def fixture_names():
    return sorted(p.stem for p in FIXTURES.glob("*.json") if ".expected" not in p.name)


def load_fixture(name):
    f = load_germ(FIXTURES / f"{name}.json")
    expected = json.loads((FIXTURES / f"{name}.expected.json").read_text())
    return f, expected


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def fixture_jet():
    def get(name):
        f, expected = load_fixture(name)
        m, rec = monge_from_germ(f)
        return f, m, expected
    return get


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
