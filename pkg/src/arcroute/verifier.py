"""Independent validation of routing schemes.

The verifier never looks at arc geometry or clique-cycles: it recomputes
shortest-path structure from the graph alone (BFS) and checks a scheme
against the defining constraints — disjoint intervals per vertex, full
strict coverage, and every labeled destination reachable through a
first vertex of some shortest path.  Route simulation and interval
accounting live here too.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .arc_model import Graph, all_pairs_distances
from .builder import RoutingScheme
from .errors import (
    AmbiguousRouteError,
    CoverageHoleError,
    RoutingLoopError,
    StructuralSchemeError,
)

AMBIGUOUS = -2
UNCOVERED = -1


@dataclass
class VerificationReport:
    """Outcome of one scheme verification, all failures enumerated."""

    strictness_ok: bool
    disjoint_ok: bool
    coverage_ok: bool
    shortest_ok: bool
    strictness_violations: list[dict] = field(default_factory=list)
    disjoint_violations: list[dict] = field(default_factory=list)
    coverage_violations: list[dict] = field(default_factory=list)
    shortest_violations: list[dict] = field(default_factory=list)
    total_intervals: int = 0
    max_intervals_per_arc: int = 0
    double_labeled_arcs_per_vertex: dict[int, int] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return (self.strictness_ok and self.disjoint_ok
                and self.coverage_ok and self.shortest_ok)

    def to_json(self) -> str:
        import json

        payload = {
            "passed": self.passed,
            "strictness_ok": self.strictness_ok,
            "disjoint_ok": self.disjoint_ok,
            "coverage_ok": self.coverage_ok,
            "shortest_ok": self.shortest_ok,
            "total_intervals": self.total_intervals,
            "max_intervals_per_arc": self.max_intervals_per_arc,
            "double_labeled_arcs_per_vertex": {
                str(v): c for v, c in sorted(self.double_labeled_arcs_per_vertex.items())
            },
            "strictness_violations": self.strictness_violations,
            "disjoint_violations": self.disjoint_violations,
            "coverage_violations": self.coverage_violations,
            "shortest_violations": self.shortest_violations,
        }
        return json.dumps(payload, indent=2)


def _check_structure(graph: Graph, scheme: RoutingScheme) -> None:
    n = graph.n
    if scheme.n != n or set(scheme.order.items) != set(range(n)):
        raise StructuralSchemeError(
            f"scheme order covers {scheme.n} vertices, graph has {n}"
        )
    for (v, w) in scheme.labels:
        if not (0 <= v < n and 0 <= w < n) or v == w:
            raise StructuralSchemeError(f"arc ({v}, {w}) is not a valid arc")
        if not graph.adjacent(v, w):
            raise StructuralSchemeError(f"arc ({v}, {w}) is not a graph edge")


def _verify_vertex(graph: Graph, scheme: RoutingScheme, dist: np.ndarray,
                   v: int, outgoing: list[tuple[int, object]],
                   report: VerificationReport) -> None:
    n = graph.n
    items = np.asarray(scheme.order.items, dtype=np.int64)
    order = scheme.order
    if outgoing:
        ws = np.array([w for w, _ in outgoing], dtype=np.int64)
        starts = np.array([order.position(ivl.a) for _, ivl in outgoing],
                          dtype=np.int64)
        lengths = np.array(
            [order.distance(ivl.a, ivl.b) + 1 for _, ivl in outgoing],
            dtype=np.int64,
        )
        total = int(lengths.sum())
        within = np.arange(total) - np.repeat(np.cumsum(lengths) - lengths,
                                              lengths)
        flat_pos = (np.repeat(starts, lengths) + within) % n
        flat_w = np.repeat(ws, lengths)
        dests = items[flat_pos]
        counts = np.bincount(dests, minlength=n)
        bad = dist[flat_w, dests] != dist[v, dests] - 1
        for w, u in zip(flat_w[bad], dests[bad]):
            report.shortest_violations.append(
                {"vertex": v, "arc": [v, int(w)], "destination": int(u)}
            )
    else:
        counts = np.zeros(n, dtype=np.int64)
    if counts[v] > 0:
        for w, ivl in outgoing:
            if interval_covers(scheme, ivl, v):
                report.strictness_violations.append(
                    {"vertex": v, "arc": [v, w], "interval": [ivl.a, ivl.b]}
                )
        counts[v] = 0  # do not double-report as a disjointness issue
    for u in np.flatnonzero(counts > 1):
        arcs = [[v, w] for w, ivl in outgoing
                if interval_covers(scheme, ivl, int(u))]
        report.disjoint_violations.append(
            {"vertex": v, "destination": int(u), "arcs": arcs}
        )
    for u in np.flatnonzero(counts == 0):
        if int(u) != v:
            report.coverage_violations.append(
                {"vertex": v, "destination": int(u)}
            )


def interval_covers(scheme: RoutingScheme, ivl, u: int) -> bool:
    order = scheme.order
    return order.distance(ivl.a, u) <= order.distance(ivl.a, ivl.b)


def verify_scheme(graph: Graph, scheme: RoutingScheme,
                  threads: int = 1) -> VerificationReport:
    """Check a scheme against the graph; collects every violation.

    Raises StructuralSchemeError for malformed schemes (wrong vertex set,
    labels on non-edges); verification failures are reported, not raised.
    """
    _check_structure(graph, scheme)
    dist = all_pairs_distances(graph)
    report = VerificationReport(True, True, True, True)

    by_source: dict[int, list[tuple[int, object]]] = {v: [] for v in range(graph.n)}
    for (v, w), ivls in scheme.labels.items():
        for ivl in ivls:
            by_source[v].append((w, ivl))

    if threads and threads > 1:
        chunks = np.array_split(np.arange(graph.n), threads)
        reports = [VerificationReport(True, True, True, True) for _ in chunks]

        def work(args):
            chunk, rep = args
            for v in chunk:
                _verify_vertex(graph, scheme, dist, int(v), by_source[int(v)], rep)

        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(work, zip(chunks, reports)))
        for rep in reports:
            report.strictness_violations.extend(rep.strictness_violations)
            report.disjoint_violations.extend(rep.disjoint_violations)
            report.coverage_violations.extend(rep.coverage_violations)
            report.shortest_violations.extend(rep.shortest_violations)
    else:
        for v in range(graph.n):
            _verify_vertex(graph, scheme, dist, v, by_source[v], report)

    report.strictness_ok = not report.strictness_violations
    report.disjoint_ok = not report.disjoint_violations
    report.coverage_ok = not report.coverage_violations
    report.shortest_ok = not report.shortest_violations

    stats = interval_stats(scheme)
    report.total_intervals = stats.total_intervals
    report.max_intervals_per_arc = stats.max_intervals_per_arc
    report.double_labeled_arcs_per_vertex = stats.double_labeled_arcs_per_vertex
    return report


def _route_table(scheme: RoutingScheme, src: int) -> np.ndarray:
    """Destination position -> forwarding target for one source vertex."""
    table = scheme._route_tables.get(src)
    if table is None:
        n = scheme.n
        table = np.full(n, UNCOVERED, dtype=np.int64)
        lo = int(np.searchsorted(scheme.src, src, side="left"))
        hi = int(np.searchsorted(scheme.src, src, side="right"))
        for w, s, ln in zip(scheme.dst[lo:hi], scheme.start[lo:hi],
                            scheme.length[lo:hi]):
            pos = np.arange(s, s + ln) % n
            clash = table[pos] != UNCOVERED
            table[pos] = int(w)
            if clash.any():
                table[pos[clash]] = AMBIGUOUS
        scheme._route_tables[src] = table
    return table


def route(scheme: RoutingScheme, graph: Graph, src: int, dst: int) -> list[int]:
    """Simulate forwarding from src to dst; returns the vertex path.

    Raises CoverageHoleError / AmbiguousRouteError / RoutingLoopError when
    the scheme fails to route; the hop cap is the vertex count.
    """
    n = graph.n
    if not (0 <= src < n and 0 <= dst < n):
        raise StructuralSchemeError("route endpoints outside the graph")
    if src == dst:
        raise ValueError("route endpoints must differ")
    pos_dst = scheme.order.position(dst)
    path = [src]
    x = src
    for _ in range(n):
        table = _route_table(scheme, x)
        nxt = int(table[pos_dst])
        if nxt == UNCOVERED:
            raise CoverageHoleError(f"no interval at {x} contains {dst}")
        if nxt == AMBIGUOUS:
            raise AmbiguousRouteError(f"multiple intervals at {x} contain {dst}")
        path.append(nxt)
        if nxt == dst:
            return path
        x = nxt
    raise RoutingLoopError(f"no delivery within {n} hops: {path}")


def route_lengths(scheme: RoutingScheme, graph: Graph) -> np.ndarray:
    """Hop counts of simulated routes for every ordered pair at once.

    Uses the same forwarding tables as route(), stepped synchronously over
    all (source, destination) cells; raises on the first hole, ambiguity,
    or undelivered route.  Entry [u, w] is the hop count from u to w.
    """
    n = graph.n
    tables = np.stack([_route_table(scheme, v) for v in range(n)])
    items = np.asarray(scheme.order.items, dtype=np.int64)
    dest_vertex = items  # vertex sitting at each order position
    cur = np.tile(np.arange(n, dtype=np.int64)[:, None], (1, n))
    lengths = np.zeros((n, n), dtype=np.int64)
    active = cur != dest_vertex[None, :]
    for _ in range(n):
        if not active.any():
            break
        rows, cols = np.nonzero(active)
        nxt = tables[cur[rows, cols], cols]
        if (nxt == UNCOVERED).any():
            u, p = rows[nxt == UNCOVERED][0], cols[nxt == UNCOVERED][0]
            raise CoverageHoleError(
                f"no interval covers {int(items[p])} along the route from {int(u)}"
            )
        if (nxt == AMBIGUOUS).any():
            u, p = rows[nxt == AMBIGUOUS][0], cols[nxt == AMBIGUOUS][0]
            raise AmbiguousRouteError(
                f"overlapping intervals for {int(items[p])} along the route from {int(u)}"
            )
        cur[rows, cols] = nxt
        lengths[rows, cols] += 1
        active = cur != dest_vertex[None, :]
    if active.any():
        raise RoutingLoopError(f"undelivered routes after {n} hops")
    out = np.empty((n, n), dtype=np.int64)
    out[:, items] = lengths
    return out


@dataclass
class IntervalStats:
    """Interval accounting for one scheme."""

    total_intervals: int
    max_intervals_per_arc: int
    double_labeled_arcs_per_vertex: dict[int, int]
    arc_count: int
    vertex_count: int

    @property
    def edge_count(self) -> int:
        return self.arc_count // 2

    @property
    def total_within_bound(self) -> bool:
        return self.total_intervals <= 2 * self.edge_count + self.vertex_count

    @property
    def per_arc_within_bound(self) -> bool:
        return self.max_intervals_per_arc <= 2

    @property
    def doubles_within_bound(self) -> bool:
        return all(c <= 1 for c in self.double_labeled_arcs_per_vertex.values())

    def to_json(self) -> str:
        import json

        return json.dumps({
            "total_intervals": self.total_intervals,
            "max_intervals_per_arc": self.max_intervals_per_arc,
            "double_labeled_arcs_per_vertex": {
                str(v): c
                for v, c in sorted(self.double_labeled_arcs_per_vertex.items())
            },
            "arc_count": self.arc_count,
            "vertex_count": self.vertex_count,
            "total_within_bound": self.total_within_bound,
            "per_arc_within_bound": self.per_arc_within_bound,
            "doubles_within_bound": self.doubles_within_bound,
        }, indent=2)


def interval_stats(scheme: RoutingScheme) -> IntervalStats:
    total = 0
    max_per_arc = 0
    doubles: dict[int, int] = {}
    for (v, w), ivls in scheme.labels.items():
        total += len(ivls)
        max_per_arc = max(max_per_arc, len(ivls))
        if len(ivls) >= 2:
            doubles[v] = doubles.get(v, 0) + 1
    return IntervalStats(
        total_intervals=total,
        max_intervals_per_arc=max_per_arc,
        double_labeled_arcs_per_vertex=doubles,
        arc_count=len(scheme.labels),
        vertex_count=scheme.n,
    )
