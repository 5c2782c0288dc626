import numpy as np
import pytest

from lemon import build_graph, generate_planted, preset_spec


def random_connected_graph(rng, n, extra_edge_prob=0.15):
    """Random spanning tree plus extra edges; connected by construction."""
    edges = []
    order = rng.permutation(n)
    for i in range(1, n):
        j = int(rng.integers(i))
        edges.append((int(order[i]), int(order[j])))
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < extra_edge_prob:
                edges.append((u, v))
    return build_graph(edges)


@pytest.fixture
def triangle():
    return build_graph([(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def path3():
    return build_graph([(0, 1), (1, 2)])


@pytest.fixture
def cycle4():
    return build_graph([(0, 1), (1, 2), (2, 3), (3, 0)])


@pytest.fixture
def star5():
    # center 0 with four leaves
    return build_graph([(0, 1), (0, 2), (0, 3), (0, 4)])


@pytest.fixture
def k4():
    return build_graph([(u, v) for u in range(4) for v in range(u + 1, 4)])


@pytest.fixture(scope="session")
def planted():
    """One deterministic planted graph shared by the slower structural tests."""
    graph, truth = generate_planted(preset_spec("figure1", rng_seed=7))
    return graph, truth
