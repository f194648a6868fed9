"""Shared fixtures and direct-power oracles used across the suite.

The oracles below deliberately avoid the package's log-domain helpers: they
loop over Python edge tuples and use ``**`` on plain ints and floats.
"""
from __future__ import annotations

import math

import networkx as nx
import pytest

from sddindex import graph


def naive_degrees(g):
    deg = [0] * g.n
    for u, v in g.edge_list():
        deg[u] += 1
        deg[v] += 1
    return deg


def naive_sdd(g, alpha):
    d = naive_degrees(g)
    return sum(d[u] ** alpha / d[v] ** alpha + d[v] ** alpha / d[u] ** alpha for u, v in g.edge_list())


def naive_m1(g, alpha):
    return sum((x**alpha if x else (1.0 if alpha == 0 else 0.0)) for x in naive_degrees(g))


def naive_m2(g, alpha):
    d = naive_degrees(g)
    return sum((d[u] * d[v]) ** alpha for u, v in g.edge_list())


def naive_isd(g, a):
    d = naive_degrees(g)
    return sum(1 / (d[u] ** a + d[v] ** a) for u, v in g.edge_list())


def naive_log_nk_vertex(g):
    return sum(x * math.log(x) for x in naive_degrees(g) if x)


def rel_close(a, b, rel=1e-12):
    return abs(a - b) <= rel * max(abs(a), abs(b), 1e-300) or a == b


def atlas_graphs():
    """Every graph on up to 7 vertices, one per isomorphism class."""
    out = []
    for h in nx.graph_atlas_g():
        out.append(graph.from_edge_list(list(h.edges()), h.number_of_nodes()))
    return out


@pytest.fixture(scope="session")
def atlas():
    return atlas_graphs()


@pytest.fixture(scope="session")
def atlas_with_edges(atlas):
    return [g for g in atlas if g.m]


@pytest.fixture
def p3():
    return graph.path_graph(3)


@pytest.fixture
def p4():
    return graph.path_graph(4)


@pytest.fixture
def k4():
    return graph.complete_graph(4)


@pytest.fixture
def star3():
    return graph.star_graph(3)


@pytest.fixture
def double_star():
    # centre 0 has degree 3 (two leaves), centre 1 has degree 4 (three leaves)
    return graph.from_edge_list([(0, 1), (0, 2), (0, 3), (1, 4), (1, 5), (1, 6)])


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
