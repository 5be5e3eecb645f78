import numpy as np
import pytest

from socialrec import BipartiteGraph, CoupledDataset, build_graph, coupled_from_indices

# u1={o1,o2}, u2={o1,o3}, u3={o2,o3,o4}; c1={u1,u2}, c2={u2,u3}
TOY_OBJECT_EDGES = [("u1", "o1"), ("u1", "o2"), ("u2", "o1"), ("u2", "o3"),
                    ("u3", "o2"), ("u3", "o3"), ("u3", "o4")]
TOY_GROUP_EDGES = [("u1", "c1"), ("u2", "c1"), ("u2", "c2"), ("u3", "c2")]


@pytest.fixture
def toy():
    return coupled_from_indices(3, 4, 2,
                                [(0, 0), (0, 1), (1, 0), (1, 2), (2, 1), (2, 2), (2, 3)],
                                [(0, 0), (1, 0), (1, 1), (2, 1)])


@pytest.fixture
def toy_graph():
    return build_graph(TOY_OBJECT_EDGES).graph


def random_graph(rng, max_left=50, max_right=50, density=None):
    m = int(rng.integers(1, max_left + 1))
    n = int(rng.integers(1, max_right + 1))
    p = rng.uniform(0.05, 0.3) if density is None else density
    mask = rng.random((m, n)) < p
    i, j = np.nonzero(mask)
    return BipartiteGraph(m, n, i, j)


def random_coupled(rng, max_users=30, max_objects=30, max_groups=10, density=None):
    uo = random_graph(rng, max_users, max_objects, density)
    m = uo.left_count
    l = int(rng.integers(1, max_groups + 1))
    mask = rng.random((m, l)) < rng.uniform(0.1, 0.4)
    i, j = np.nonzero(mask)
    return CoupledDataset(uo, BipartiteGraph(m, l, i, j))


ACCEPTANCE_LINES = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
