"""Undirected simple graphs with cached degrees, plus edge-list I/O."""
from __future__ import annotations

import io
import itertools
import os
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, TextIO

import numpy as np


class GraphError(ValueError):
    pass


class EdgelessGraphError(GraphError):
    pass


class EdgeListFormatError(GraphError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def _frozen(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


class Graph:
    """Immutable undirected simple graph on vertices ``0..n-1``.

    Edges are stored once each as ``(u, v)`` with ``u < v``, sorted
    lexicographically, so two graphs with the same edge set have identical
    arrays and every index is summed in the same order.
    """

    __slots__ = ("_n", "_edges", "_degrees", "_labels")

    def __init__(self, n: int, edges: np.ndarray, labels: Sequence[int] | None = None):
        # trusted constructor: ``edges`` must already be canonical
        self._n = int(n)
        self._edges = _frozen(np.asarray(edges, dtype=np.int64).reshape(-1, 2))
        self._degrees = _frozen(
            np.bincount(self._edges.ravel(), minlength=self._n).astype(np.int64)
        )
        self._labels = tuple(int(x) for x in labels) if labels is not None else None

    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def edges(self) -> np.ndarray:
        return self._edges

    @property
    def degrees(self) -> np.ndarray:
        return self._degrees

    @property
    def labels(self) -> tuple[int, ...] | None:
        """Original vertex ids when the graph was relabelled at parse time."""
        return self._labels

    def endpoint_degrees(self) -> tuple[np.ndarray, np.ndarray]:
        return self._degrees[self._edges[:, 0]], self._degrees[self._edges[:, 1]]

    def edge_list(self) -> list[tuple[int, int]]:
        return [(int(u), int(v)) for u, v in self._edges]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and np.array_equal(self._edges, other._edges)

    def __hash__(self) -> int:
        return hash((self._n, self._edges.tobytes()))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, m={self.m})"


@dataclass(frozen=True)
class DegreeExtremes:
    min_degree: int
    max_degree: int
    isolated_count: int


def _canonical_edges(pairs: np.ndarray) -> np.ndarray:
    if len(pairs) == 0:
        return np.empty((0, 2), dtype=np.int64)
    lo = np.minimum(pairs[:, 0], pairs[:, 1])
    hi = np.maximum(pairs[:, 0], pairs[:, 1])
    return np.unique(np.stack([lo, hi], axis=1), axis=0)


def from_edge_list(
    pairs: Iterable[tuple[int, int]] | np.ndarray, vertex_count: int | None = None
) -> Graph:
    """Build a graph from vertex pairs, collapsing duplicates and orientation.

    Without ``vertex_count`` the order is ``1 + max index`` (0 for no pairs).
    """
    arr = np.asarray(list(pairs) if not isinstance(pairs, np.ndarray) else pairs)
    if arr.size == 0:
        arr = np.empty((0, 2), dtype=np.int64)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise GraphError("pairs must be a sequence of (u, v) tuples")
    if not np.issubdtype(arr.dtype, np.integer):
        raise GraphError("vertex identifiers must be integers")
    arr = arr.astype(np.int64)
    if (arr < 0).any():
        raise GraphError("vertex identifiers must be non-negative")
    loops = arr[:, 0] == arr[:, 1]
    if loops.any():
        u, v = arr[np.argmax(loops)]
        raise GraphError(f"self-loop ({u}, {v}) is not allowed")
    top = int(arr.max()) + 1 if len(arr) else 0
    if vertex_count is None:
        vertex_count = top
    elif vertex_count < 0:
        raise GraphError("vertex_count must be non-negative")
    elif top > vertex_count:
        raise GraphError(f"vertex index {top - 1} out of range for n={vertex_count}")
    return Graph(vertex_count, _canonical_edges(arr))


def degree_extremes(g: Graph) -> DegreeExtremes:
    """Minimum degree over non-isolated vertices, maximum degree, isolated count."""
    if g.m == 0:
        raise EdgelessGraphError("graph has no edges")
    d = g.degrees
    return DegreeExtremes(
        min_degree=int(d[d > 0].min()),
        max_degree=int(d.max()),
        isolated_count=int((d == 0).sum()),
    )


def adjacency(g: Graph) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(g.n)]
    for u, v in g.edge_list():
        adj[u].append(v)
        adj[v].append(u)
    return adj


def connected_components(g: Graph) -> list[list[int]]:
    adj = adjacency(g)
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp, stack = [s], [s]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        out.append(sorted(comp))
    return out


def is_componentwise_regular(g: Graph) -> bool:
    """True iff every connected component is a regular graph."""
    d = g.degrees
    return all(len({int(d[u]) for u in comp}) == 1 for comp in connected_components(g))


def is_regular(g: Graph) -> bool:
    """True iff all non-isolated vertices share one degree (vacuous when edgeless)."""
    d = g.degrees
    return len(np.unique(d[d > 0])) <= 1


def complete_graph(n: int) -> Graph:
    return from_edge_list(list(itertools.combinations(range(n), 2)), n)


def path_graph(n: int) -> Graph:
    return from_edge_list([(i, i + 1) for i in range(n - 1)], n)


def cycle_graph(n: int) -> Graph:
    return from_edge_list([(i, (i + 1) % n) for i in range(n)], n)


def star_graph(leaves: int) -> Graph:
    return from_edge_list([(0, i) for i in range(1, leaves + 1)], leaves + 1)


def complete_bipartite_graph(n1: int, n2: int) -> Graph:
    return from_edge_list([(i, n1 + j) for i in range(n1) for j in range(n2)], n1 + n2)


def disjoint_union(*graphs: Graph) -> Graph:
    pairs, offset = [], 0
    for g in graphs:
        pairs.extend((u + offset, v + offset) for u, v in g.edge_list())
        offset += g.n
    return from_edge_list(pairs, offset)


def all_labeled_graphs(n: int) -> Iterator[Graph]:
    """Every labelled graph on ``n`` vertices, one per subset of the C(n,2) pairs."""
    slots = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(slots)):
        yield from_edge_list([slots[i] for i in range(len(slots)) if mask >> i & 1], n)


def random_labeled_graph(n: int, rng: np.random.Generator, p: float = 0.5) -> Graph:
    slots = list(itertools.combinations(range(n), 2))
    keep = rng.random(len(slots)) < p
    return from_edge_list([s for s, k in zip(slots, keep) if k], n)


# -- edge-list text format ---------------------------------------------------


def parse_edge_list(source: str | Iterable[str], relabel: bool = False) -> Graph:
    """Parse the whitespace edge-list format.

    One ``u v`` pair per line; ``#`` starts a comment line and blank lines are
    skipped. An optional ``n=<int>`` header before the first edge fixes the
    vertex count. With ``relabel=True`` the distinct ids are compacted to
    ``0..k-1`` and the originals kept on ``Graph.labels``.
    """
    lines = io.StringIO(source) if isinstance(source, str) else source
    header_n = None
    seen_edge = False
    pairs: list[tuple[int, int]] = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.replace(" ", "").startswith("n="):
            if seen_edge or header_n is not None:
                raise EdgeListFormatError("header 'n=<int>' must precede all edges", lineno)
            try:
                header_n = int(line.replace(" ", "")[2:])
            except ValueError:
                raise EdgeListFormatError(f"malformed header {line!r}", lineno) from None
            if header_n < 0:
                raise EdgeListFormatError("vertex count must be non-negative", lineno)
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise EdgeListFormatError(f"expected two vertex ids, got {line!r}", lineno)
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise EdgeListFormatError(f"non-integer vertex id in {line!r}", lineno) from None
        if u < 0 or v < 0:
            raise EdgeListFormatError(f"negative vertex id in {line!r}", lineno)
        if u == v:
            raise EdgeListFormatError(f"self-loop ({u}, {v}) is not allowed", lineno)
        if header_n is not None and max(u, v) >= header_n:
            raise EdgeListFormatError(
                f"vertex id {max(u, v)} out of range for n={header_n}", lineno
            )
        seen_edge = True
        pairs.append((u, v))

    if not relabel:
        return from_edge_list(pairs, header_n)
    if header_n is not None:
        raise EdgeListFormatError("relabelling is not supported together with an 'n=' header")
    ids = sorted({x for pair in pairs for x in pair})
    index = {x: i for i, x in enumerate(ids)}
    g = from_edge_list([(index[u], index[v]) for u, v in pairs], len(ids))
    return Graph(g.n, g.edges, labels=ids)


def read_edge_list(path: str | os.PathLike, relabel: bool = False) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh, relabel=relabel)


def format_edge_list(g: Graph) -> str:
    lines = [f"n={g.n}"]
    lines.extend(f"{u} {v}" for u, v in g.edge_list())
    return "\n".join(lines) + "\n"


def write_edge_list(g: Graph, target: str | os.PathLike | TextIO) -> None:
    text = format_edge_list(g)
    if hasattr(target, "write"):
        target.write(text)
    else:
        with open(target, "w", encoding="utf-8") as fh:
            fh.write(text)
