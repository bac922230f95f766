from __future__ import annotations

import sys

import pytest

from groverwalk.graphs import build_family

CORPUS = {
    "K_3": ("complete", [3]),
    "K_4": ("complete", [4]),
    "K_5": ("complete", [5]),
    "K_6": ("complete", [6]),
    "C_5": ("cycle", [5]),
    "Petersen": ("petersen", []),
    "Q_3": ("hypercube", [3]),
}


def graph(name: str):
    family, params = CORPUS[name]
    return build_family(family, params)


@pytest.fixture(params=sorted(CORPUS))
def corpus_graph(request):
    return graph(request.param)


@pytest.fixture
def petersen():
    return build_family("petersen")


@pytest.fixture
def q3():
    return build_family("hypercube", [3])


@pytest.fixture
def k3():
    return build_family("complete", [3])


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.summary_lines():
        terminalreporter.write_line(line)
