import math

import pytest

from qwequiv.graph import from_edge_list, generate

PAW_TEXT = "0 1\n1 2\n1 3\n2 3\n"

# Graph corpus for the operator-level checks: (id, family, size)
CORPUS = [
    ("paw", None, None),
    ("complete4", "complete", 4),
    ("complete8", "complete", 8),
    ("complete16", "complete", 16),
    ("cycle4", "cycle", 4),
    ("cycle5", "cycle", 5),
    ("hypercube3", "hypercube", 3),
    ("hypercube4", "hypercube", 4),
    ("petersen", "petersen", None),
    ("paley13", "paley", 13),
    ("torus4", "torus2d", 4),
]


def corpus_graph(family, size):
    if family is None:
        return from_edge_list(PAW_TEXT)
    return generate(family, size)


def marked_sizes(n):
    return sorted({1, 2, math.ceil(n / 2)})


@pytest.fixture
def paw():
    return from_edge_list(PAW_TEXT)


@pytest.fixture
def paw_file(tmp_path):
    p = tmp_path / "paw.el"
    p.write_text(PAW_TEXT)
    return p


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
