"""Shared geometries for the test suite.

The corpus holds every unlabeled poset on at most four elements in both ideal
directions, a fixed list of five-element posets, collinear points up to six,
and a few planar configurations.
"""

from itertools import combinations

import networkx as nx
import pytest

from convex_spheres import geometry

FIVE_ELEMENT_POSETS = {
    "chain5": [(1, 2), (2, 3), (3, 4), (4, 5)],
    "fence5": [(1, 2), (3, 2), (3, 4), (5, 4)],
    "tree5": [(1, 2), (1, 3), (2, 4), (2, 5)],
    "bowtie_tail5": [(1, 3), (1, 4), (2, 3), (2, 4), (4, 5)],
    "chain_plus_point5": [(1, 2), (2, 3), (3, 4)],
}

PLANAR = {
    "triangle_center": [(0, 0), (4, 0), (0, 4), (1, 1)],
    "three_collinear_plus_one": [(0, 0), (1, 0), (2, 0), (1, 1)],
    "square_center": [(0, 0), (2, 0), (2, 2), (0, 2), (1, 1)],
    "triangle_two_inside": [(0, 0), (6, 0), (0, 6), (1, 1), (2, 1)],
    "triangle_three_inside": [(0, 0), (6, 0), (0, 6), (1, 1), (2, 1), (1, 2)],
}


def unlabeled_posets(n):
    """Cover relations of every poset on [n] up to isomorphism, naturally labeled."""
    pairs = list(combinations(range(1, n + 1), 2))
    found = []
    for k in range(len(pairs) + 1):
        for chosen in combinations(pairs, k):
            g = nx.DiGraph()
            g.add_nodes_from(range(1, n + 1))
            g.add_edges_from(chosen)
            closed = nx.transitive_closure_dag(g)
            if any(nx.is_isomorphic(closed, other) for other, _ in found):
                continue
            found.append((closed, sorted(nx.transitive_reduction(closed).edges)))
    return [relations for _, relations in found]


def build_corpus():
    corpus = []
    for n in range(1, 5):
        for i, relations in enumerate(unlabeled_posets(n)):
            for direction in ("lower", "upper"):
                name = f"poset{n}.{i}-{direction}"
                corpus.append(geometry.poset_ideals(n, relations, direction, name))
    for label, relations in FIVE_ELEMENT_POSETS.items():
        corpus.append(geometry.poset_ideals(5, relations, "lower", f"{label}-lower"))
        corpus.append(geometry.poset_ideals(5, relations, "upper", f"{label}-upper"))
    for n in range(1, 7):
        corpus.append(geometry.collinear(n))
    for label, coords in PLANAR.items():
        corpus.append(geometry.points2d(coords, label))
    return corpus


CORPUS = build_corpus()
SMALL = [g for g in CORPUS if g.n <= 4]


def pytest_generate_tests(metafunc):
    if "corpus_geometry" in metafunc.fixturenames:
        metafunc.parametrize("corpus_geometry", CORPUS, ids=[g.name for g in CORPUS])
    if "small_geometry" in metafunc.fixturenames:
        metafunc.parametrize("small_geometry", SMALL, ids=[g.name for g in SMALL])


@pytest.fixture
def three_collinear():
    """a < b < c on a line, elements 1, 2, 3."""
    return geometry.collinear(3, "three-collinear")


@pytest.fixture
def single_point():
    return geometry.boolean(1)


@pytest.fixture
def b2():
    return geometry.boolean(2)


@pytest.fixture
def config_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("CONVEX_SPHERES_CONFIG_DIR", str(tmp_path / "config"))
    return tmp_path / "config"
