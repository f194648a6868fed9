from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np

from .graph import Graph, from_edge_list


def check_graph(obj) -> Graph:
    """Accept a Graph, a networkx-like graph, or a sequence of integer pairs."""
    if isinstance(obj, Graph):
        return obj
    if hasattr(obj, "edges") and hasattr(obj, "number_of_nodes"):
        nodes = sorted(obj.nodes())
        index = {v: i for i, v in enumerate(nodes)}
        return from_edge_list([(index[u], index[v]) for u, v in obj.edges()], len(nodes))
    return from_edge_list(obj)


def check_graphs(X) -> list[Graph]:
    if isinstance(X, (Graph, np.ndarray)) or X is None:
        raise TypeError("expected a sequence of graphs")
    graphs = [check_graph(x) for x in X]
    if not graphs:
        raise ValueError("expected at least one graph")
    return graphs


def check_alphas(alphas: Iterable[float], positive: bool = False) -> tuple[float, ...]:
    out = tuple(float(a) for a in alphas)
    if not out:
        raise ValueError("alphas must not be empty")
    for a in out:
        if not math.isfinite(a):
            raise ValueError(f"exponent must be finite, got {a}")
        if positive and a <= 0:
            raise ValueError(f"exponent must be positive, got {a}")
    return out


def check_probabilities(ps: Sequence[float]) -> list[float]:
    out = [float(p) for p in ps]
    bad = [p for p in out if not 0.0 <= p <= 1.0]
    if bad:
        raise ValueError(f"probabilities outside [0, 1]: {bad}")
    return out
