import pytest

from sunadacheck.config import default_config
from sunadacheck.group_core import FiniteAffineGroup, Subgroup

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def cfg():
    return default_config()


@pytest.fixture(scope="session")
def G():
    return FiniteAffineGroup(8)


@pytest.fixture(scope="session")
def H(cfg):
    return cfg.subgroup("H")


@pytest.fixture(scope="session")
def K(cfg):
    return cfg.subgroup("K")


@pytest.fixture(scope="session")
def J(G):
    return Subgroup(G, G.elements_from([(1, 0), (1, 4), (7, 0), (7, 4)]), "J")


@pytest.fixture(scope="session")
def rho(cfg):
    return cfg.rho()


@pytest.fixture(scope="session")
def rho_sub(cfg):
    return cfg.rho_sub()


@pytest.fixture(scope="session")
def alpha(cfg):
    return cfg.alpha()


@pytest.fixture(scope="session")
def alpha_sub(cfg):
    return cfg.alpha_sub()


@pytest.fixture(scope="session")
def report(cfg):
    from sunadacheck.pipeline import run_reproduce_paper
    return run_reproduce_paper(cfg)


@pytest.fixture(scope="session")
def candidates(cfg):
    from sunadacheck.enumeration import generate_candidates
    return generate_candidates(cfg.constraints())


@pytest.fixture
def acceptance():
    """Record one pass/fail line per acceptance criterion for the summary."""
    def record(number: int, title: str, ok: bool, detail: str = ""):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {title}"
        if detail:
            line += f"  ({detail})"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
