"""Circular-arc models and their intersection graphs.

A model places ``n`` closed arcs on a circle with ``2n`` distinct endpoint
positions.  All geometry is integer-exact: the circle is cut into ``2n``
gaps (gap ``g`` sits between positions ``g`` and ``g+1``), arc ``(s, e)``
covers gaps ``s, s+1, ..., e-1`` modulo ``2n``, and two arcs intersect
exactly when they share a covered gap.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateArcError,
    DuplicateEndpointError,
    ModelFormatError,
    PositionOutOfRangeError,
    UnreachablePairError,
)

UNREACHABLE = -1


@dataclass(frozen=True)
class ArcModel:
    """``n`` arcs as (start, end) position pairs on a ``2n``-position circle."""

    n: int
    arcs: tuple[tuple[int, int], ...]

    @property
    def circle_size(self) -> int:
        return 2 * self.n

    def gap_span(self, i: int) -> tuple[int, int]:
        """(first covered gap, number of covered gaps) of arc ``i``."""
        s, e = self.arcs[i]
        return s, (e - s) % self.circle_size

    def covers_gap(self, i: int, gap: int) -> bool:
        s, length = self.gap_span(i)
        return (gap - s) % self.circle_size < length

    def arcs_intersect(self, i: int, j: int) -> bool:
        """Closed arcs ``i`` and ``j`` share at least one gap."""
        si, li = self.gap_span(i)
        sj, lj = self.gap_span(j)
        m = self.circle_size
        return (sj - si) % m < li or (si - sj) % m < lj

    def to_json(self) -> str:
        arcs = ", ".join(f"[{s}, {e}]" for s, e in self.arcs)
        return f'{{"n": {self.n}, "arcs": [{arcs}]}}'


def validate_model(n: int, arcs: list[tuple[int, int]]) -> ArcModel:
    """Check the model invariants and freeze the result."""
    if n < 1:
        raise ModelFormatError(f"vertex count must be positive, got {n}")
    if len(arcs) != n:
        raise ModelFormatError(f"expected {n} arcs, got {len(arcs)}")
    size = 2 * n
    seen: dict[int, int] = {}
    for i, (s, e) in enumerate(arcs):
        for p in (s, e):
            if not 0 <= p < size:
                raise PositionOutOfRangeError(
                    f"arc {i}: position {p} outside [0, {size})"
                )
        if s == e:
            raise DegenerateArcError(f"arc {i}: start equals end ({s})")
        for p in (s, e):
            if p in seen:
                raise DuplicateEndpointError(
                    f"position {p} used by arcs {seen[p]} and {i}"
                )
            seen[p] = i
    return ArcModel(n=n, arcs=tuple((int(s), int(e)) for s, e in arcs))


def parse_model(data: bytes | str) -> ArcModel:
    """Parse the canonical JSON format ``{"n": ..., "arcs": [[s, e], ...]}``."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, dict) or "n" not in obj or "arcs" not in obj:
        raise ModelFormatError('expected an object with keys "n" and "arcs"')
    n = obj["n"]
    raw = obj["arcs"]
    if not isinstance(n, int) or not isinstance(raw, list):
        raise ModelFormatError('"n" must be an int and "arcs" a list')
    arcs = []
    for entry in raw:
        if not (isinstance(entry, list) and len(entry) == 2
                and all(isinstance(p, int) for p in entry)):
            raise ModelFormatError(f"arc entry {entry!r} is not a pair of ints")
        arcs.append((entry[0], entry[1]))
    return validate_model(n, arcs)


def is_real(model: ArcModel) -> bool:
    """True when the arcs jointly cover every gap of the circle."""
    size = model.circle_size
    diff = np.zeros(size + 1, dtype=np.int64)
    for i in range(model.n):
        s, length = model.gap_span(i)
        end = s + length
        if end <= size:
            diff[s] += 1
            diff[end] -= 1
        else:
            diff[s] += 1
            diff[size] -= 1
            diff[0] += 1
            diff[end - size] -= 1
    coverage = np.cumsum(diff[:size])
    return bool((coverage > 0).all())


class Graph:
    """Undirected graph with dense ids, immutable after construction.

    Keeps sorted neighbor arrays plus a boolean adjacency matrix so that
    hot paths get O(1) adjacency tests; fine for the n <= a few thousand
    instances this package targets.
    """

    __slots__ = ("n", "m", "neighbors", "adj", "degrees")

    def __init__(self, n: int, adj: np.ndarray):
        self.n = n
        self.adj = adj
        self.neighbors = [np.flatnonzero(adj[v]) for v in range(n)]
        self.degrees = adj.sum(axis=1).astype(np.int64)
        self.m = int(self.degrees.sum()) // 2

    @classmethod
    def from_edges(cls, n: int, edges: list[tuple[int, int]]) -> "Graph":
        adj = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            if u == v:
                raise ValueError("self-loops are not allowed")
            adj[u, v] = adj[v, u] = True
        return cls(n, adj)

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self.adj[u, v])

    def edges(self) -> list[tuple[int, int]]:
        us, vs = np.nonzero(np.triu(self.adj))
        return list(zip(us.tolist(), vs.tolist()))


def intersection_graph(model: ArcModel) -> Graph:
    """Graph with one vertex per arc, edges between intersecting arcs."""
    n = model.n
    size = model.circle_size
    starts = np.array([model.gap_span(i)[0] for i in range(n)], dtype=np.int64)
    lengths = np.array([model.gap_span(i)[1] for i in range(n)], dtype=np.int64)
    # arcs i, j intersect iff one's first gap lies within the other's range
    rel = (starts[None, :] - starts[:, None]) % size
    adj = (rel < lengths[:, None]) | (rel.T < lengths[None, :])
    np.fill_diagonal(adj, False)
    return Graph(n, adj)


def bfs_distances(graph: Graph, source: int) -> np.ndarray:
    """Hop counts from ``source``; UNREACHABLE (-1) marks other components."""
    dist = np.full(graph.n, UNREACHABLE, dtype=np.int64)
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for v in graph.neighbors[u]:
            if dist[v] == UNREACHABLE:
                dist[v] = du
                queue.append(int(v))
    return dist


def all_pairs_distances(graph: Graph) -> np.ndarray:
    """Full distance matrix (UNREACHABLE for disconnected pairs)."""
    from scipy.sparse import csr_matrix
    from scipy.sparse.csgraph import shortest_path

    mat = csr_matrix(graph.adj)
    dist = shortest_path(mat, method="D", unweighted=True, directed=False)
    out = np.full((graph.n, graph.n), UNREACHABLE, dtype=np.int64)
    finite = np.isfinite(dist)
    out[finite] = dist[finite].astype(np.int64)
    return out


def is_connected(graph: Graph) -> bool:
    if graph.n == 0:
        return True
    return int((bfs_distances(graph, 0) != UNREACHABLE).sum()) == graph.n


def first_vertices(graph: Graph, u: int, w: int) -> set[int]:
    """Neighbors of ``u`` that start some shortest path from ``u`` to ``w``."""
    if u == w:
        raise ValueError("first vertices are defined for distinct endpoints")
    dist = bfs_distances(graph, w)
    if dist[u] == UNREACHABLE:
        raise UnreachablePairError(f"no path between {u} and {w}")
    target = dist[u] - 1
    return {int(v) for v in graph.neighbors[u] if dist[v] == target}


def dominating_vertices(graph: Graph) -> set[int]:
    """Vertices adjacent to every other vertex."""
    return {int(v) for v in np.flatnonzero(graph.degrees == graph.n - 1)}
