import pytest

from colnum import Graph
from colnum.exact import minimize
from colnum.reach import PrefixOrder

import oracles

FIG1_EDGES = [
    (0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (4, 5), (5, 6), (6, 7),
    (7, 8), (8, 9), (9, 10), (0, 7), (0, 9), (1, 6), (4, 8),
]

_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def fig1():
    return Graph.from_edges(11, FIG1_EDGES)


@pytest.fixture
def fig1_order():
    return PrefixOrder.total(range(11))


@pytest.fixture(scope="session")
def corpus():
    return oracles.make_corpus()


@pytest.fixture(scope="session")
def corpus_oracle(corpus):
    """(graph index, r) -> permutation optima."""
    return {(i, r): oracles.permutation_optima(g, r) for i, g in enumerate(corpus) for r in (1, 2, 3)}


@pytest.fixture(scope="session")
def corpus_solver(corpus):
    """(graph index, r) -> {param: MinimizeResult}."""
    return {
        (i, r): {p: minimize(g, r, p) for p in ("col", "wcol", "adm")}
        for i, g in enumerate(corpus)
        for r in (1, 2, 3)
    }


@pytest.fixture
def acceptance():
    def record(label, ok: bool, detail: str) -> None:
        line = f"ACCEPTANCE {label}: {'PASS' if ok else 'FAIL'} - {detail}"
        print(line)
        _ACCEPTANCE_LINES.append(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE_LINES, key=_line_key):
            terminalreporter.write_line(line)


def _line_key(line: str):
    head = line.split()[1].rstrip(":").split(".")[0]
    return (int(head) if head.isdigit() else 99, line)
