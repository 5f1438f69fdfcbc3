import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from gammawald import wald  # noqa: E402
from gammawald.specfile import build_permutative, load_fixture  # noqa: E402


@pytest.fixture(scope="session")
def pcats():
    return {name: build_permutative(load_fixture(name)) for name in ("C2", "X1", "Z3")}


@pytest.fixture(scope="session")
def views(pcats):
    cache = {}

    def get(name, L):
        if (name, L) not in cache:
            cache[(name, L)] = wald.gamma_as_wald(pcats[name], L)
        return cache[(name, L)]

    return get


@pytest.fixture(scope="session")
def pointed():
    return wald.FinWaldView.from_spec(load_fixture("pointed_sets"))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
