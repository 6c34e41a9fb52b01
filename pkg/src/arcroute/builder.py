"""Construction of shortest-path strict 2-interval routing schemes.

Given a circle-covering arc model, the builder derives the clique-cycle,
lays the vertices out in a cyclic order grouped by the clique where each
vertex's clique run begins, and labels every directed arc ``(v, w)`` with
at most two ring-intervals of destinations such that forwarding by
interval membership always follows shortest paths.  Per vertex, at most
one outgoing arc ends up with two intervals.

The per-vertex work splits the other vertices into three runs of the
vertex order: the right block (everything whose clique run starts inside
v's own run; always adjacent to v), the left block (from v's left vertex
up to v; served by its adjacent members), and the facing block in between
(never adjacent to v unless a vertex dominates the graph).  Distributing
the facing block is the delicate part and branches on whether dominating
vertices or counter pairs exist.

Label assignments are planned as (target, start position, length) triples
so the full build stays in bulk integer arrays; the per-operation API
exposes the same plans as ring-intervals written into a draft mapping.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .arc_model import ArcModel, Graph, intersection_graph, is_real
from .clique_cycle import CliqueCycle, build_clique_cycle
from .errors import ConstructionError, NotRealCircularArc
from .ring_order import CyclicOrder, RingInterval


class VertexOrder:
    """Cyclic vertex order grouped in per-clique blocks.

    ``head[c]`` / ``tail[c]`` bound the block of vertices whose span begins
    at clique ``c`` (-1 when no vertex starts there).
    """

    __slots__ = ("order", "head", "tail")

    def __init__(self, order: CyclicOrder, head: np.ndarray, tail: np.ndarray):
        self.order = order
        self.head = head
        self.tail = tail

    @property
    def items(self) -> tuple[int, ...]:
        return self.order.items

    def position(self, v: int) -> int:
        return self.order.position(v)


def build_vertex_order(cycle: CliqueCycle) -> VertexOrder:
    """Emit vertices clique block by clique block.

    Inside a block every earlier vertex reaches at most as far clockwise
    as the later ones, so blocks sort by span length; equal spans (true
    twins) break by vertex id.
    """
    k = cycle.k
    buckets: list[list[int]] = [[] for _ in range(k)]
    for v in range(cycle.model.n):
        buckets[int(cycle.left[v])].append(v)
    items: list[int] = []
    head = np.full(k, -1, dtype=np.int64)
    tail = np.full(k, -1, dtype=np.int64)
    for c in range(k):
        block = sorted(buckets[c], key=lambda v: (int(cycle.span_len[v]), v))
        if block:
            head[c] = block[0]
            tail[c] = block[-1]
            items.extend(block)
    return VertexOrder(CyclicOrder(items), head, tail)


@dataclass
class VertexFrame:
    """Per-vertex view of the order: distinguished neighbors and blocks.

    Blocks are ring-intervals in the vertex order (``None`` when empty);
    ``right_vertex``, ``apex`` and ``split_vertex`` stay ``None`` until
    the facing block is distributed by the corresponding case.
    """

    v: int
    left_vertex: int | None
    middle_vertex: int
    right_block: RingInterval | None
    facing_block: RingInterval | None
    left_block: RingInterval | None
    right_vertex: int | None = None
    apex: int | None = None
    split_vertex: int | None = None


class LabelingContext:
    """Shared precomputed state for labeling all vertices of one graph."""

    def __init__(self, cycle: CliqueCycle, graph: Graph, vorder: VertexOrder):
        self.cycle = cycle
        self.graph = graph
        self.vorder = vorder
        self.n = graph.n
        self.order = vorder.order
        self.items = np.asarray(self.order.items, dtype=np.int64)
        self.pos = np.empty(self.n, dtype=np.int64)
        self.pos[self.items] = np.arange(self.n, dtype=np.int64)
        self.counter = cycle.counter_matrix()
        self.has_counter = self.counter.any(axis=1)
        self.any_counter_pair = bool(self.has_counter.any())
        self.first_counter_pair: tuple[int, int] | None = None
        if self.any_counter_pair:
            u = int(np.flatnonzero(self.has_counter)[0])
            w = int(np.flatnonzero(self.counter[u])[0])
            self.first_counter_pair = (min(u, w), max(u, w))
        self.dominating = cycle.dominating
        self.any_dominating = bool(cycle.dominating_set)
        self._dom_run: tuple[int, int] | None = None
        # nearest clique at or counterclockwise of c with a nonempty block
        k = cycle.k
        prev_nonempty = np.full(k, -1, dtype=np.int64)
        last = -1
        for c in list(range(k)) * 2:
            if vorder.head[c] != -1:
                last = c
            prev_nonempty[c] = last
        self.prev_nonempty = prev_nonempty
        self._left_of = np.full(self.n, -2, dtype=np.int64)
        self._right_of = np.full(self.n, -2, dtype=np.int64)

    # -- position helpers --------------------------------------------------

    def fwd(self, a: int, b: int) -> int:
        """Clockwise steps from vertex a to vertex b in the order."""
        return int((self.pos[b] - self.pos[a]) % self.n)

    def vertex_at(self, position: int) -> int:
        return int(self.items[position % self.n])

    def succ(self, v: int) -> int:
        return self.vertex_at(self.pos[v] + 1)

    def pred(self, v: int) -> int:
        return self.vertex_at(self.pos[v] - 1)

    def block_vertices(self, block: RingInterval) -> np.ndarray:
        lo = int(self.pos[block.a])
        length = self.fwd(block.a, block.b) + 1
        idx = np.arange(lo, lo + length) % self.n
        return self.items[idx]

    def block_contains(self, block: RingInterval, v: int) -> bool:
        return self.fwd(block.a, v) <= self.fwd(block.a, block.b)

    def block_length(self, block: RingInterval) -> int:
        return self.fwd(block.a, block.b) + 1

    # -- dominating-run geometry --------------------------------------------

    def dominating_run(self) -> tuple[int, int]:
        """Head and tail of the contiguous run of dominating vertices."""
        if self._dom_run is None:
            doms = sorted(self.cycle.dominating_set)
            if not doms:
                raise ConstructionError("no dominating vertices to locate")
            heads = [d for d in doms if not self.dominating[self.pred(d)]]
            if len(heads) != 1:
                raise ConstructionError(
                    "dominating vertices are not consecutive in the order"
                )
            h = heads[0]
            t = self.vertex_at(self.pos[h] + len(doms) - 1)
            if not all(self.dominating[self.vertex_at(self.pos[h] + i)]
                       for i in range(len(doms))):
                raise ConstructionError(
                    "dominating vertices are not consecutive in the order"
                )
            self._dom_run = (h, t)
        return self._dom_run

    # -- distinguished neighbors ---------------------------------------------

    def middle_vertex_of(self, v: int) -> int:
        """Last vertex after v whose clique run starts inside v's span.

        Found via the last nonempty block within the span, so no scan of
        the order is needed.  Returns v itself when no such vertex exists.
        """
        cyc = self.cycle
        k = cyc.k
        lc = int(cyc.left[v])
        span = int(cyc.span_len[v])
        c_star = int(self.prev_nonempty[int(cyc.right[v])])
        # the walk stops at v's own block at the latest, so c_star is in span
        if (c_star - lc) % k >= span:
            raise ConstructionError("no block found inside own span", vertex=v)
        return int(self.vorder.tail[c_star])

    def left_vertex_of(self, v: int) -> int | None:
        """The candidate neighbor farthest behind v in the order.

        Candidates are neighbors that reach strictly further
        counterclockwise than v (skipping dominating vertices and counter
        partners of v) plus the same-block vertices placed before v.
        """
        cached = self._left_of[v]
        if cached != -2:
            return None if cached == -1 else int(cached)
        cyc = self.cycle
        k = cyc.k
        lc = int(cyc.left[v])
        best = -1
        best_dist = 0
        nb = self.graph.neighbors[v]
        if len(nb):
            reach = ((lc - cyc.nat_left[nb]) % k) < cyc.nat_len[nb]
            mask = (
                reach
                & (cyc.nat_left[nb] != lc)
                & ~self.dominating[nb]
                & ~self.counter[v, nb]
            )
            if mask.any():
                cand = nb[mask]
                dists = (self.pos[v] - self.pos[cand]) % self.n
                i = int(np.argmax(dists))
                best = int(cand[i])
                best_dist = int(dists[i])
        h = int(self.vorder.head[lc])
        if h != v:
            d = self.fwd(h, v)
            if d > best_dist:
                best, best_dist = h, d
        self._left_of[v] = best
        return None if best == -1 else best

    def farthest_right_neighbor(self, v: int) -> int:
        """Neighbor reaching farthest clockwise; prefers the left vertex,
        then the middle vertex, then the candidate soonest after v."""
        cyc = self.cycle
        k = cyc.k
        rc = int(cyc.right[v])
        nb = self.graph.neighbors[v]
        holds_rc = ((rc - cyc.nat_left[nb]) % k) < cyc.nat_len[nb]
        cand = nb[holds_rc]
        if len(cand) == 0:
            raise ConstructionError("no neighbor shares the right clique", vertex=v)
        reach = (cyc.nat_right[cand] - rc) % k
        best = cand[reach == int(reach.max())]
        best_set = {int(x) for x in best}
        lv = self.left_vertex_of(v)
        if lv is not None and lv in best_set:
            return lv
        m = self.middle_vertex_of(v)
        if m != v and m in best_set:
            return m
        return min(best_set, key=lambda u: self.fwd(v, u))

    def right_vertex_of(self, v: int) -> int:
        cached = self._right_of[v]
        if cached == -2:
            cached = self.farthest_right_neighbor(v)
            self._right_of[v] = cached
        return int(cached)


def make_context(cycle: CliqueCycle, graph: Graph,
                 vorder: VertexOrder) -> LabelingContext:
    return LabelingContext(cycle, graph, vorder)


def _fresh_context(cycle: CliqueCycle, graph: Graph) -> LabelingContext:
    return LabelingContext(cycle, graph, build_vertex_order(cycle))


def compute_frame(
    vorder: VertexOrder,
    cycle: CliqueCycle,
    graph: Graph,
    v: int,
    ctx: LabelingContext | None = None,
) -> VertexFrame:
    """Blocks and distinguished neighbors of a non-dominating vertex."""
    if ctx is None:
        ctx = LabelingContext(cycle, graph, vorder)
    if ctx.dominating[v]:
        raise ConstructionError("frames are undefined for dominating vertices",
                                vertex=v)
    n = ctx.n
    m = ctx.middle_vertex_of(v)
    right_block = RingInterval(ctx.succ(v), m) if m != v else None
    lv = ctx.left_vertex_of(v)
    left_block = RingInterval(lv, ctx.pred(v)) if lv is not None else None
    boundary = lv if lv is not None else v
    gap = ctx.fwd(m, boundary)
    facing_block = None
    if gap == 0:
        # no left candidates and nothing follows v inside its own span:
        # every other vertex faces v (star-leaf shape)
        if m != v or lv is not None:
            raise ConstructionError("blocks wrapped onto themselves", vertex=v)
        if n > 1:
            facing_block = RingInterval(ctx.succ(v), ctx.pred(v))
    elif gap > 1:
        facing_block = RingInterval(ctx.succ(m), ctx.pred(boundary))
    frame = VertexFrame(
        v=v,
        left_vertex=lv,
        middle_vertex=m,
        right_block=right_block,
        facing_block=facing_block,
        left_block=left_block,
    )
    _check_partition(frame, ctx)
    return frame


def _check_partition(frame: VertexFrame, ctx: LabelingContext) -> None:
    """Blocks must tile the order minus v; right block all adjacent,
    facing block non-adjacent except dominating members."""
    total = 1
    for block in (frame.right_block, frame.facing_block, frame.left_block):
        if block is not None:
            total += ctx.block_length(block)
    if total != ctx.n:
        raise ConstructionError("blocks do not partition the order",
                                vertex=frame.v)
    adj = ctx.graph.adj[frame.v]
    if frame.right_block is not None:
        if not adj[ctx.block_vertices(frame.right_block)].all():
            raise ConstructionError("right block holds a non-neighbor",
                                    vertex=frame.v)
    if frame.facing_block is not None:
        members = ctx.block_vertices(frame.facing_block)
        if (adj[members] & ~ctx.dominating[members]).any():
            raise ConstructionError(
                "facing block holds a non-dominating neighbor", vertex=frame.v
            )


# ---------------------------------------------------------------------------
# Assignment planning.  A plan entry is (target, start position, length):
# the ring-interval of `length` vertices starting at order position `start`
# is assigned to arc (v, target).
# ---------------------------------------------------------------------------

Plan = list[tuple[int, int, int]]


def _plan_right(frame: VertexFrame, ctx: LabelingContext):
    """Singleton for every right-block vertex (all adjacent)."""
    if frame.right_block is None:
        return None
    targets = ctx.block_vertices(frame.right_block)
    starts = ctx.pos[targets]
    lengths = np.ones(len(targets), dtype=np.int64)
    return targets, starts, lengths


def _plan_left(frame: VertexFrame, ctx: LabelingContext):
    """Split the left block at its v-adjacent members.

    Each adjacent member carries itself plus the non-adjacent vertices up
    to the next adjacent one; those sit one hop behind their carrier.
    """
    if frame.left_block is None:
        return None
    v = frame.v
    members = ctx.block_vertices(frame.left_block)
    targets = members[ctx.graph.adj[v][members]]
    if len(targets) == 0 or int(targets[0]) != frame.left_vertex:
        raise ConstructionError("left block must start at the left vertex",
                                vertex=v)
    starts = ctx.pos[targets]
    offsets = (starts - starts[0]) % ctx.n  # increasing along the block
    lengths = np.diff(np.append(offsets, ctx.fwd(int(targets[0]), v)))
    return targets, starts, lengths


def _plan_facing(frame: VertexFrame, ctx: LabelingContext) -> Plan:
    """Distribute the facing block over at most two carrier arcs.

    Exactly one case applies:
      dominating vertices inside the block -> they carry it in slices;
      a counter partner of v or any dominating vertex exists -> one such
      vertex is adjacent to the whole block and carries it alone;
      a counter pair exists elsewhere -> carried by the pair member / the
      farthest-reaching neighbors, split by position;
      otherwise -> split at the separator between right and left vertex.
    """
    if frame.facing_block is None:
        return []
    members = ctx.block_vertices(frame.facing_block)
    if ctx.dominating[members].any():
        return _facing_via_dominating_members(frame, ctx)
    if ctx.has_counter[frame.v] or ctx.any_dominating:
        return _facing_via_shared_neighbor(frame, ctx, members)
    if ctx.any_counter_pair:
        return _facing_near_counter_pair(frame, ctx, members)
    return _facing_via_separator(frame, ctx)


def _facing_via_dominating_members(frame: VertexFrame,
                                   ctx: LabelingContext) -> Plan:
    """Dominating vertices sit consecutively; slice the block around them."""
    v = frame.v
    block = frame.facing_block
    d_head, d_tail = ctx.dominating_run()
    if not (ctx.block_contains(block, d_head)
            and ctx.block_contains(block, d_tail)):
        raise ConstructionError(
            "dominating run straddles the facing block boundary", vertex=v
        )
    a = int(ctx.pos[block.a])
    if d_head == d_tail:
        return [(d_head, a, ctx.block_length(block))]
    plan: Plan = [(d_head, a, ctx.fwd(block.a, d_head) + 1)]
    d = ctx.succ(d_head)
    while d != d_tail:
        plan.append((d, int(ctx.pos[d]), 1))
        d = ctx.succ(d)
    plan.append((d_tail, int(ctx.pos[d_tail]), ctx.fwd(d_tail, block.b) + 1))
    return plan


def _facing_via_shared_neighbor(frame: VertexFrame, ctx: LabelingContext,
                                members: np.ndarray) -> Plan:
    """A counter partner of v or a dominating vertex is adjacent to every
    facing vertex and to v; give it the whole block."""
    v = frame.v
    candidates = set(ctx.cycle.dominating_set)
    candidates.update(int(w) for w in np.flatnonzero(ctx.counter[v]))
    if not candidates:
        raise ConstructionError("no carrier for the facing block", vertex=v)
    m = frame.middle_vertex
    u = m if m in candidates else min(candidates)
    block = frame.facing_block
    if ctx.block_contains(block, u):
        raise ConstructionError("carrier lies inside the facing block", vertex=v)
    if not ctx.graph.adj[u][members].all():
        raise ConstructionError("carrier misses part of the facing block",
                                vertex=v)
    return [(u, int(ctx.pos[block.a]), ctx.block_length(block))]


def _facing_near_counter_pair(frame: VertexFrame, ctx: LabelingContext,
                              members: np.ndarray) -> Plan:
    """No dominating vertices, v itself has no counter partner, but some
    counter pair exists; v is adjacent to at least one of its members."""
    v = frame.v
    block = frame.facing_block
    w0, c0 = ctx.first_counter_pair
    adj = ctx.graph.adj
    a0, a1 = bool(adj[v, w0]), bool(adj[v, c0])
    if not (a0 or a1):
        raise ConstructionError(
            "vertex sees neither member of the counter pair", vertex=v
        )
    if a0 and a1:
        for u in (w0, c0):
            if adj[u][members].all():
                return [(u, int(ctx.pos[block.a]), ctx.block_length(block))]
        raise ConstructionError(
            "neither counter member covers the facing block", vertex=v
        )
    lv = frame.left_vertex
    r = ctx.right_vertex_of(v)
    frame.right_vertex = r
    m_r = ctx.middle_vertex_of(r)
    start = ctx.succ(frame.middle_vertex)
    boundary = lv if lv is not None else v
    if ctx.fwd(start, boundary) <= ctx.fwd(start, m_r):
        # the whole block sits inside the right vertex's own right block
        return [(r, int(ctx.pos[block.a]), ctx.block_length(block))]
    if lv is None:
        raise ConstructionError("left vertex missing near a counter pair",
                                vertex=v)
    plan: Plan = [(r, int(ctx.pos[block.a]), ctx.fwd(block.a, m_r) + 1)]
    rest_start = ctx.succ(m_r)
    if rest_start != lv:
        plan.append((lv, int(ctx.pos[rest_start]), ctx.fwd(rest_start, lv)))
    if not _plan_serves_shortest(v, plan, ctx):
        return _facing_split_by_distance(frame, ctx)
    return plan


def _facing_via_separator(frame: VertexFrame, ctx: LabelingContext) -> Plan:
    """Plain case: split the block at the separator.

    Covering models of interval graphs escape the usual guarantees: a
    vertex may lack a left vertex, the left chain may die before the
    chains meet, or the separator split itself may point a far vertex at
    the wrong side (both right-reach candidates can tie at the same right
    clique on such models).  The split is therefore validated against BFS
    distances in place — this case requires a graph with no counter pairs
    and no dominating vertices at all, so the extra searches stay rare —
    and any miss falls back to the distance-derived split.
    """
    v = frame.v
    block = frame.facing_block
    if frame.left_vertex is None:
        return _facing_split_by_distance(frame, ctx)
    r = right_vertex(frame, ctx.cycle, ctx.graph, ctx)
    try:
        s = separator(frame, ctx.vorder, ctx.cycle, ctx.graph, ctx)
    except _LeftChainBroke:
        return _facing_split_by_distance(frame, ctx)
    lv = frame.left_vertex
    plan: Plan = []
    if ctx.block_contains(block, s):
        plan.append((r, int(ctx.pos[block.a]), ctx.fwd(block.a, s) + 1))
        left_start = ctx.succ(s)
    else:
        left_start = block.a
    if left_start != lv:
        plan.append((lv, int(ctx.pos[left_start]), ctx.fwd(left_start, lv)))
    if not _plan_serves_shortest(v, plan, ctx):
        return _facing_split_by_distance(frame, ctx)
    return plan


def _plan_serves_shortest(v: int, plan: Plan, ctx: LabelingContext) -> bool:
    """Does every planned carrier start a shortest path to its members?"""
    from .arc_model import bfs_distances

    dist_v = bfs_distances(ctx.graph, v)
    n = ctx.n
    for target, start, length in plan:
        members = ctx.items[np.arange(start, start + length) % n]
        dist_t = bfs_distances(ctx.graph, target)
        if not (dist_t[members] == dist_v[members] - 1).all():
            return False
    return True


def _facing_split_by_distance(frame: VertexFrame, ctx: LabelingContext) -> Plan:
    """Split the facing block against BFS distances directly.

    The longest prefix one hop closer through the right vertex routes
    right, the rest routes through the left vertex (when it exists); a
    facing vertex served by neither is a hard error.
    """
    from .arc_model import bfs_distances

    v = frame.v
    block = frame.facing_block
    members = ctx.block_vertices(block)
    r = ctx.right_vertex_of(v)
    frame.right_vertex = r
    dist_v = bfs_distances(ctx.graph, v)
    dist_r = bfs_distances(ctx.graph, r)
    right_ok = dist_r[members] == dist_v[members] - 1
    prefix = int(np.argmin(right_ok)) if not right_ok.all() else len(members)
    lv = frame.left_vertex
    if lv is None:
        if prefix < len(members):
            raise ConstructionError(
                "facing block unreachable through the right vertex", vertex=v
            )
        return [(r, int(ctx.pos[block.a]), len(members))]
    dist_l = bfs_distances(ctx.graph, lv)
    left_ok = dist_l[members] == dist_v[members] - 1
    left_bad = np.flatnonzero(~left_ok)
    suffix_start = int(left_bad[-1]) + 1 if len(left_bad) else 0
    if prefix < suffix_start:
        raise ConstructionError("facing block has an unservable middle",
                                vertex=v)
    split = prefix  # favor the right side, mirroring the separator split
    plan: Plan = []
    if split > 0:
        plan.append((r, int(ctx.pos[block.a]), split))
    if split < len(members):
        rest = int(members[split])
        plan.append((lv, int(ctx.pos[rest]), len(members) - split))
    frame.split_vertex = int(members[split - 1]) if split else None
    return plan


class _LeftChainBroke(ConstructionError):
    """Iterated left vertices hit a vertex with no left candidates.

    Happens only on covering models of interval graphs; callers fall back
    to the distance-checked split."""


def right_vertex(frame: VertexFrame, cycle: CliqueCycle, graph: Graph,
                 ctx: LabelingContext | None = None) -> int:
    """Farthest-clockwise-reaching neighbor; only defined when the graph
    has no dominating vertices and v has no counter partner."""
    if ctx is None:
        ctx = _fresh_context(cycle, graph)
    if ctx.any_dominating:
        raise ConstructionError("right vertex undefined with dominating vertices")
    if ctx.has_counter[frame.v]:
        raise ConstructionError("right vertex undefined for counter vertices",
                                vertex=frame.v)
    r = ctx.right_vertex_of(frame.v)
    frame.right_vertex = r
    return r


def apex_number(frame: VertexFrame, cycle: CliqueCycle, graph: Graph,
                ctx: LabelingContext | None = None) -> int:
    """Depth at which the iterated left/right vertices of v meet.

    Depth 1 means the spans of the two first-step neighbors already meet
    around the far side of the clique cycle; otherwise it is the smallest
    i > 1 with the i-th left and right iterates adjacent or equal.
    """
    if ctx is None:
        ctx = _fresh_context(cycle, graph)
    if ctx.any_dominating or ctx.any_counter_pair:
        raise ConstructionError("apex undefined with dominating or counter vertices")
    v = frame.v
    l1 = ctx.left_vertex_of(v)
    if l1 is None:
        raise ConstructionError("left vertex missing", vertex=v)
    r1 = ctx.right_vertex_of(v)
    k = cycle.k
    lc_l1 = int(cycle.left[l1])
    rc_r1 = int(cycle.right[r1])
    if lc_l1 == rc_r1 or _interval_proper_subset(
        k, int(cycle.left[v]), int(cycle.span_len[v]),
        rc_r1, (lc_l1 - rc_r1) % k + 1,
    ):
        frame.apex = 1
        return 1
    li, ri = l1, r1
    for i in range(2, ctx.n + 2):
        nl = ctx.left_vertex_of(li)
        if nl is None:
            raise _LeftChainBroke("left chain broke", vertex=v)
        li = nl
        ri = ctx.right_vertex_of(ri)
        if li == ri or graph.adjacent(li, ri):
            frame.apex = i
            return i
    raise ConstructionError("left/right chains never met", vertex=v)


def _interval_proper_subset(k: int, a: int, alen: int, b: int, blen: int) -> bool:
    """Is the clique interval (a, alen) strictly inside (b, blen)?"""
    if alen >= blen:
        return False
    if blen >= k:
        return True
    return (a - b) % k + alen <= blen


def separator(frame: VertexFrame, vorder: VertexOrder, cycle: CliqueCycle,
              graph: Graph, ctx: LabelingContext | None = None) -> int:
    """Boundary vertex splitting the facing block.

    Everything from the facing block's start through the separator routes
    via the right vertex; the rest routes via the left vertex.
    """
    if ctx is None:
        ctx = _fresh_context(cycle, graph)
    if frame.apex is None:
        apex_number(frame, cycle, graph, ctx)
    if frame.right_vertex is None:
        right_vertex(frame, cycle, graph, ctx)
    v = frame.v
    lv = frame.left_vertex
    if lv is None:
        raise ConstructionError("separator needs a left vertex", vertex=v)
    if frame.apex == 1:
        s = ctx.pred(lv)
        frame.split_vertex = s
        return s
    # walk both chains to depth apex-1, then scan for the first vertex
    # that reaches the left chain
    li, ri = lv, frame.right_vertex
    for _ in range(frame.apex - 2):
        li = ctx.left_vertex_of(li)
        if li is None:
            raise _LeftChainBroke("left chain broke", vertex=v)
        ri = ctx.right_vertex_of(ri)
    c = int(cycle.right[ri])
    tail = int(ctx.vorder.tail[c])
    if tail == -1:
        raise ConstructionError("empty block at the right chain's last clique",
                                vertex=v)
    w = ctx.succ(tail)
    for _ in range(ctx.fwd(w, lv) + 1):
        if w == li or graph.adjacent(w, li):
            break
        w = ctx.succ(w)
    else:
        raise ConstructionError("separator scan exhausted the facing block",
                                vertex=v)
    if frame.facing_block is not None:
        if ctx.fwd(frame.facing_block.a, w) > ctx.fwd(frame.facing_block.a, lv):
            raise ConstructionError("separator landed outside the facing block",
                                    vertex=v)
    s = ctx.pred(w)
    frame.split_vertex = s
    return s


# ---------------------------------------------------------------------------
# Draft API: the planning functions exposed as per-operation labelers that
# write ring-intervals into a mapping, joining abutting intervals per arc.
# ---------------------------------------------------------------------------

Draft = dict[tuple[int, int], list[RingInterval]]


def _draft_add(draft: Draft, ctx: LabelingContext, v: int,
               target: int, start: int, length: int) -> None:
    ivl = RingInterval(ctx.vertex_at(start), ctx.vertex_at(start + length - 1))
    existing = draft.setdefault((v, target), [])
    existing.append(ivl)
    # join abutting intervals until no pair fits together
    changed = True
    while changed and len(existing) > 1:
        changed = False
        for i in range(len(existing)):
            for j in range(len(existing)):
                if i == j:
                    continue
                merged = _try_join(ctx, existing[i], existing[j])
                if merged is not None:
                    keep = [x for t, x in enumerate(existing) if t not in (i, j)]
                    existing[:] = keep + [merged]
                    changed = True
                    break
            if changed:
                break


def _try_join(ctx: LabelingContext, left: RingInterval,
              right: RingInterval) -> RingInterval | None:
    if ctx.succ(left.b) == right.a:
        return RingInterval(left.a, right.b)
    if ctx.succ(right.b) == left.a:
        return RingInterval(right.a, left.b)
    return None


def label_right(frame: VertexFrame, draft: Draft, ctx: LabelingContext) -> None:
    """Every right-block vertex is adjacent: it gets its own singleton."""
    plan = _plan_right(frame, ctx)
    if plan is None:
        return
    for t, s, length in zip(*plan):
        _draft_add(draft, ctx, frame.v, int(t), int(s), int(length))


def label_left(frame: VertexFrame, draft: Draft, ctx: LabelingContext) -> None:
    """Left-block distribution: v-adjacent members carry the stretch up to
    the next adjacent member."""
    plan = _plan_left(frame, ctx)
    if plan is None:
        return
    for t, s, length in zip(*plan):
        _draft_add(draft, ctx, frame.v, int(t), int(s), int(length))


def label_face_to_face(frame: VertexFrame, vorder: VertexOrder,
                       cycle: CliqueCycle, graph: Graph,
                       draft: Draft, ctx: LabelingContext | None = None) -> None:
    """Distribute the facing block; see _plan_facing for the case split."""
    if ctx is None:
        ctx = _fresh_context(cycle, graph)
    for t, s, length in _plan_facing(frame, ctx):
        _draft_add(draft, ctx, frame.v, int(t), int(s), int(length))


# ---------------------------------------------------------------------------
# Scheme assembly.
# ---------------------------------------------------------------------------


class RoutingScheme:
    """A vertex order plus per-arc destination intervals.

    Intervals live in parallel arrays (source, target, start position,
    length), sorted by arc; ``labels`` materializes the conventional
    mapping arc -> tuple of ring-intervals on first use.
    """

    __slots__ = ("order", "src", "dst", "start", "length",
                 "vertex_order", "_labels", "_route_tables")

    def __init__(self, order: CyclicOrder, src, dst, start, length,
                 vertex_order: VertexOrder | None = None):
        self.order = order
        self.src = np.asarray(src, dtype=np.int64)
        self.dst = np.asarray(dst, dtype=np.int64)
        self.start = np.asarray(start, dtype=np.int64)
        self.length = np.asarray(length, dtype=np.int64)
        # forwarding-table construction bisects on the source column
        key = self.src * len(order.items) + self.dst
        if len(key) > 1 and (np.diff(key) < 0).any():
            idx = np.argsort(key, kind="stable")
            self.src = self.src[idx]
            self.dst = self.dst[idx]
            self.start = self.start[idx]
            self.length = self.length[idx]
        self.vertex_order = vertex_order
        self._labels: dict[tuple[int, int], tuple[RingInterval, ...]] | None = None
        self._route_tables: dict[int, np.ndarray] = {}

    @property
    def n(self) -> int:
        return len(self.order.items)

    @property
    def labels(self) -> dict[tuple[int, int], tuple[RingInterval, ...]]:
        if self._labels is None:
            items = self.order.items
            n = len(items)
            out: dict[tuple[int, int], list[RingInterval]] = {}
            for v, w, s, ln in zip(self.src.tolist(), self.dst.tolist(),
                                   self.start.tolist(), self.length.tolist()):
                ivl = RingInterval(items[s], items[(s + ln - 1) % n])
                out.setdefault((v, w), []).append(ivl)
            self._labels = {arc: tuple(ivls) for arc, ivls in out.items()}
        return self._labels

    def arcs(self) -> list[tuple[int, int]]:
        return sorted(self.labels.keys())

    @classmethod
    def from_labels(cls, order: CyclicOrder,
                    labels: dict[tuple[int, int], tuple[RingInterval, ...]],
                    vertex_order: VertexOrder | None = None) -> "RoutingScheme":
        src, dst, start, length = [], [], [], []
        for (v, w) in sorted(labels.keys()):
            for ivl in labels[(v, w)]:
                src.append(v)
                dst.append(w)
                start.append(order.position(ivl.a))
                length.append(order.distance(ivl.a, ivl.b) + 1)
        scheme = cls(order, src, dst, start, length, vertex_order)
        scheme._labels = {arc: tuple(ivls) for arc, ivls in labels.items()}
        return scheme

    def to_json(self) -> str:
        items = self.order.items
        order = ", ".join(str(v) for v in items)
        grouped: dict[tuple[int, int], list[str]] = {}
        n = len(items)
        for v, w, s, ln in zip(self.src.tolist(), self.dst.tolist(),
                               self.start.tolist(), self.length.tolist()):
            grouped.setdefault((v, w), []).append(
                f"[{items[s]}, {items[(s + ln - 1) % n]}]"
            )
        entries = [
            f'"{v}->{w}": [{", ".join(grouped[(v, w)])}]'
            for (v, w) in sorted(grouped)
        ]
        return f'{{"order": [{order}], "labels": {{{", ".join(entries)}}}}}'

    @classmethod
    def from_json(cls, data: bytes | str) -> "RoutingScheme":
        import json

        from .errors import StructuralSchemeError

        if isinstance(data, bytes):
            data = data.decode("utf-8")
        try:
            obj = json.loads(data)
        except json.JSONDecodeError as exc:
            raise StructuralSchemeError(f"invalid scheme JSON: {exc}") from exc
        if not isinstance(obj, dict) or "order" not in obj or "labels" not in obj:
            raise StructuralSchemeError('scheme needs "order" and "labels"')
        try:
            order = CyclicOrder(obj["order"])
        except (ValueError, TypeError) as exc:
            raise StructuralSchemeError(str(exc)) from exc
        labels: dict[tuple[int, int], tuple[RingInterval, ...]] = {}
        for key, ivls in obj["labels"].items():
            try:
                a, b = key.split("->")
                arc = (int(a), int(b))
                parsed = tuple(RingInterval(int(x), int(y)) for x, y in ivls)
            except (ValueError, TypeError) as exc:
                raise StructuralSchemeError(f"bad labels entry {key!r}") from exc
            for ivl in parsed:
                if not (ivl.a in order and ivl.b in order):
                    raise StructuralSchemeError(
                        f"interval [{ivl.a}, {ivl.b}] outside the order"
                    )
            labels[arc] = parsed
        return cls.from_labels(order, labels)


class _Accumulator:
    """Bulk collector of plan entries for the fast build path."""

    def __init__(self, ctx: LabelingContext):
        self.ctx = ctx
        self.srcs: list[np.ndarray] = []
        self.dsts: list[np.ndarray] = []
        self.starts: list[np.ndarray] = []
        self.lengths: list[np.ndarray] = []

    def add_bulk(self, v: int, targets, starts, lengths) -> None:
        self.srcs.append(np.full(len(targets), v, dtype=np.int64))
        self.dsts.append(np.asarray(targets, dtype=np.int64))
        self.starts.append(np.asarray(starts, dtype=np.int64))
        self.lengths.append(np.asarray(lengths, dtype=np.int64))

    def concat(self):
        if not self.srcs:
            empty = np.empty(0, dtype=np.int64)
            return empty, empty.copy(), empty.copy(), empty.copy()
        return (np.concatenate(self.srcs), np.concatenate(self.dsts),
                np.concatenate(self.starts), np.concatenate(self.lengths))


def _label_vertex_fast(v: int, ctx: LabelingContext, acc: _Accumulator) -> None:
    """Plan all three blocks of v, merging facing-block extras into the
    base interval their target already carries."""
    frame = compute_frame(ctx.vorder, ctx.cycle, ctx.graph, v, ctx)
    extras = _plan_facing(frame, ctx)
    n = ctx.n

    merged: dict[int, tuple[int, int]] = {}
    for t, s, ln in extras:
        if t in merged:
            joined = _join_chunks(n, merged[t], (s, ln))
            if joined is None:
                raise ConstructionError("conflicting facing assignments",
                                        vertex=v)
            merged[t] = joined
        else:
            merged[t] = (s, ln)

    plan_r = _plan_right(frame, ctx)
    plan_l = _plan_left(frame, ctx)
    for plan in (plan_r, plan_l):
        if plan is None:
            continue
        targets, starts, lengths = plan
        if merged:
            hit = np.isin(targets, np.fromiter(merged, dtype=np.int64,
                                               count=len(merged)))
            if hit.any():
                for t, s, ln in zip(targets[hit], starts[hit], lengths[hit]):
                    t = int(t)
                    joined = _join_chunks(n, (int(s), int(ln)), merged[t])
                    if joined is not None:
                        merged[t] = joined
                    else:
                        acc.add_bulk(v, [t], [int(s)], [int(ln)])
                targets = targets[~hit]
                starts = starts[~hit]
                lengths = lengths[~hit]
        if len(targets):
            acc.add_bulk(v, targets, starts, lengths)
    if merged:
        ts = list(merged)
        acc.add_bulk(v, ts, [merged[t][0] for t in ts],
                     [merged[t][1] for t in ts])


def _join_chunks(n: int, left: tuple[int, int],
                 right: tuple[int, int]) -> tuple[int, int] | None:
    s1, l1 = left
    s2, l2 = right
    if (s1 + l1) % n == s2 % n:
        return (s1 % n, l1 + l2)
    if (s2 + l2) % n == s1 % n:
        return (s2 % n, l1 + l2)
    return None


def build_scheme(model: ArcModel) -> RoutingScheme:
    """Full pipeline from arc model to checked routing scheme."""
    if not is_real(model):
        raise NotRealCircularArc("arcs do not cover the whole circle")
    graph = intersection_graph(model)
    cycle = build_clique_cycle(model, graph)
    vorder = build_vertex_order(cycle)
    ctx = LabelingContext(cycle, graph, vorder)
    acc = _Accumulator(ctx)
    n = model.n
    all_pos = np.arange(n, dtype=np.int64)
    for v in range(n):
        if ctx.dominating[v]:
            pos_v = int(ctx.pos[v])
            starts = np.concatenate([all_pos[:pos_v], all_pos[pos_v + 1:]])
            targets = ctx.items[starts]
            acc.add_bulk(v, targets, starts, np.ones(n - 1, dtype=np.int64))
        else:
            _label_vertex_fast(v, ctx, acc)
    src, dst, start, length = acc.concat()
    _check_scheme_shape(ctx, src, dst, start, length)
    return RoutingScheme(ctx.order, src, dst, start, length, vorder)


def _check_scheme_shape(ctx: LabelingContext, src, dst, start, length) -> None:
    """Per-vertex strictness, exact tiling, and the two-interval shape."""
    n = ctx.n
    if n == 1:
        return
    rel = (start - ctx.pos[src]) % n
    if (rel < 1).any() or (rel + length > n).any():
        v = int(src[(rel < 1) | (rel + length > n)][0])
        raise ConstructionError("interval covers its own source", vertex=v)
    totals = np.bincount(src, weights=length, minlength=n).astype(np.int64)
    if (totals != n - 1).any():
        v = int(np.flatnonzero(totals != n - 1)[0])
        raise ConstructionError(
            f"intervals cover {int(totals[v])} of {n - 1} destinations", vertex=v
        )
    # with per-vertex totals exact, tiling holds iff no slot is hit twice
    within = np.arange(int(length.sum()), dtype=np.int64) - np.repeat(
        np.cumsum(length) - length, length
    )
    slots = np.repeat(src * (n - 1) + rel - 1, length) + within
    slot_counts = np.bincount(slots, minlength=n * (n - 1))
    if (slot_counts > 1).any():
        v = int(np.flatnonzero(slot_counts > 1)[0] // (n - 1))
        raise ConstructionError("intervals overlap or leave a hole", vertex=v)
    arc_counts = np.bincount(src * n + dst, minlength=n * n)
    if (arc_counts > 2).any():
        v = int(np.flatnonzero(arc_counts > 2)[0] // n)
        raise ConstructionError("an arc carries more than two intervals",
                                vertex=v)
    doubles = (arc_counts == 2).reshape(n, n).sum(axis=1)
    if (doubles > 1).any():
        v = int(np.flatnonzero(doubles > 1)[0])
        raise ConstructionError("more than one outgoing arc carries two intervals",
                                vertex=v)
