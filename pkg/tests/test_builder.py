import pytest

from arcroute import (
    RingInterval,
    RoutingScheme,
    apex_number,
    build_clique_cycle,
    build_scheme,
    build_vertex_order,
    compute_frame,
    first_vertices,
    gen_complete,
    gen_random,
    gen_ring,
    gen_wheel,
    intersection_graph,
    label_face_to_face,
    label_left,
    label_right,
    right_vertex,
    separator,
)
from arcroute.builder import LabelingContext
from arcroute.errors import ConstructionError
from arcroute.ring_order import interval_members
from conftest import C4_MODEL, load


def context_for(model):
    graph = intersection_graph(model)
    cycle = build_clique_cycle(model, graph)
    vorder = build_vertex_order(cycle)
    return LabelingContext(cycle, graph, vorder)


# -- vertex order ------------------------------------------------------------


def test_c4_vertex_order():
    ctx = context_for(load(C4_MODEL))
    assert ctx.vorder.items == (0, 1, 2, 3)


def test_complete_graph_order_is_by_id():
    # all vertices share the pinned span, ties broken by id
    ctx = context_for(gen_complete(4))
    assert ctx.vorder.items == (0, 1, 2, 3)


def test_blocks_are_contiguous_and_sorted_by_reach():
    for n, seed in [(10, 3), (16, 7), (24, 11)]:
        model = gen_random(n, seed)
        ctx = context_for(model)
        cycle = ctx.cycle
        items = ctx.vorder.items
        # same starting clique => consecutive, with shorter spans first
        for i in range(n):
            v, w = items[i], items[(i + 1) % n]
            if cycle.left[v] == cycle.left[w]:
                assert (cycle.span_len[v], v) < (cycle.span_len[w], w)
        starts = [int(cycle.left[v]) for v in items]
        # blocks appear in ascending clique order (the emit order) and
        # no starting clique recurs after its block ended
        distinct = [c for i, c in enumerate(starts) if i == 0 or starts[i - 1] != c]
        assert distinct == sorted(distinct)
        assert len(distinct) == len(set(distinct))


def test_block_tail_links_to_next_head():
    for n, seed in [(12, 0), (18, 5)]:
        ctx = context_for(gen_random(n, seed))
        head, tail = ctx.vorder.head, ctx.vorder.tail
        nonempty = [c for c in range(ctx.cycle.k) if head[c] != -1]
        for a, b in zip(nonempty, nonempty[1:] + nonempty[:1]):
            assert ctx.succ(int(tail[a])) == int(head[b])


def test_wheel_hub_sits_in_its_pinned_block():
    model = gen_wheel(6)
    ctx = context_for(model)
    hub = 6
    assert int(ctx.cycle.left[hub]) == 1
    block_head = int(ctx.vorder.head[1])
    assert ctx.fwd(block_head, hub) < ctx.n


# -- frames ------------------------------------------------------------------


def test_c4_frame_of_vertex_0():
    model = load(C4_MODEL)
    ctx = context_for(model)
    frame = compute_frame(ctx.vorder, ctx.cycle, ctx.graph, 0, ctx)
    assert frame.left_vertex == 3
    assert frame.middle_vertex == 1
    assert frame.right_block == RingInterval(1, 1)
    assert frame.facing_block == RingInterval(2, 2)
    assert frame.left_block == RingInterval(3, 3)


def test_ring_frames_have_unit_side_blocks():
    for k in (5, 8, 13):
        model = gen_ring(k)
        ctx = context_for(model)
        for v in range(k):
            frame = compute_frame(ctx.vorder, ctx.cycle, ctx.graph, v, ctx)
            assert ctx.block_length(frame.right_block) == 1
            assert ctx.block_length(frame.left_block) == 1
            assert ctx.block_length(frame.facing_block) == k - 3


def test_frame_rejects_dominating_vertex():
    model = gen_wheel(6)
    ctx = context_for(model)
    with pytest.raises(ConstructionError):
        compute_frame(ctx.vorder, ctx.cycle, ctx.graph, 6, ctx)


def test_empty_right_block_when_vertex_closes_its_clique():
    # seed chosen so some vertex is the farthest-reaching one of its
    # right clique's block
    model = gen_random(30, 6)
    ctx = context_for(model)
    found = False
    for v in range(30):
        if ctx.dominating[v]:
            continue
        frame = compute_frame(ctx.vorder, ctx.cycle, ctx.graph, v, ctx)
        if frame.middle_vertex == v:
            assert frame.right_block is None
            found = True
    assert found


def test_frames_partition_the_order():
    for n, seed in [(12, 1), (20, 9), (30, 17)]:
        model = gen_random(n, seed)
        ctx = context_for(model)
        for v in range(n):
            if ctx.dominating[v]:
                continue
            frame = compute_frame(ctx.vorder, ctx.cycle, ctx.graph, v, ctx)
            seen = {v}
            for block in (frame.right_block, frame.facing_block,
                          frame.left_block):
                if block is None:
                    continue
                members = {int(x) for x in ctx.block_vertices(block)}
                assert not (members & seen)
                seen |= members
            assert seen == set(range(n))


def test_left_vertex_bounds_all_candidates():
    # every candidate sits between the left vertex and v in the order
    for n, seed in [(12, 2), (20, 4)]:
        model = gen_random(n, seed)
        ctx = context_for(model)
        cycle, graph = ctx.cycle, ctx.graph
        for v in range(n):
            if ctx.dominating[v]:
                continue
            lv = ctx.left_vertex_of(v)
            if lv is None:
                continue
            span = ctx.fwd(lv, v)
            for u in graph.neighbors[v]:
                u = int(u)
                further_left = (
                    cycle.natural_contains(u, int(cycle.left[v]))
                    and cycle.nat_left[u] != cycle.left[v]
                    and not ctx.dominating[u]
                    and not ctx.counter[v, u]
                )
                if further_left:
                    assert ctx.fwd(lv, u) <= span


# -- labeling operations -------------------------------------------------------


def test_label_right_assigns_singletons():
    ctx = context_for(load(C4_MODEL))
    frame = compute_frame(ctx.vorder, ctx.cycle, ctx.graph, 0, ctx)
    draft = {}
    label_right(frame, draft, ctx)
    assert draft == {(0, 1): [RingInterval(1, 1)]}


def test_label_left_c4():
    ctx = context_for(load(C4_MODEL))
    frame = compute_frame(ctx.vorder, ctx.cycle, ctx.graph, 0, ctx)
    draft = {}
    label_left(frame, draft, ctx)
    assert draft == {(0, 3): [RingInterval(3, 3)]}


def test_label_left_carries_non_adjacent_riders():
    # ring C5 from vertex 0: the left block is only the left vertex, but
    # on C6 a non-adjacent vertex rides on the left vertex's arc after
    # the facing split; exercise the pure left-block splitting on a
    # random fixture with a multi-member left block instead
    model = gen_random(20, 9)
    ctx = context_for(model)
    graph = ctx.graph
    dist_ok = 0
    for v in range(20):
        if ctx.dominating[v]:
            continue
        frame = compute_frame(ctx.vorder, ctx.cycle, graph, v, ctx)
        if frame.left_block is None:
            continue
        members = ctx.block_vertices(frame.left_block)
        if len(members) < 2 or graph.adj[v][members].all():
            continue
        draft = {}
        label_left(frame, draft, ctx)
        covered = []
        for (src, w), ivls in draft.items():
            assert src == v and graph.adjacent(v, w)
            for ivl in ivls:
                stretch = interval_members(ctx.order, ivl)
                assert stretch[0] == w
                for u in stretch:
                    # carrier starts a shortest path to everything it carries
                    assert w == u or w in first_vertices(graph, v, int(u))
                covered.extend(stretch)
        assert sorted(covered) == sorted(int(x) for x in members)
        dist_ok += 1
    assert dist_ok > 0


def test_right_vertex_c4():
    ctx = context_for(load(C4_MODEL))
    frame = compute_frame(ctx.vorder, ctx.cycle, ctx.graph, 0, ctx)
    assert right_vertex(frame, ctx.cycle, ctx.graph, ctx) == 1
    assert frame.right_vertex == 1  # equals the middle vertex here


def test_right_vertex_prefers_left_vertex_when_it_reaches_farthest():
    found = False
    for seed in range(60):
        model = gen_random(8, seed)
        ctx = context_for(model)
        if ctx.any_dominating or ctx.any_counter_pair:
            continue
        for v in range(8):
            frame = compute_frame(ctx.vorder, ctx.cycle, ctx.graph, v, ctx)
            lv = frame.left_vertex
            if lv is None:
                continue
            rc = int(ctx.cycle.right[v])
            k = ctx.cycle.k
            holds = ctx.cycle.natural_contains(lv, rc)
            if not holds:
                continue
            nb = ctx.graph.neighbors[v]
            cand = nb[((rc - ctx.cycle.nat_left[nb]) % k) < ctx.cycle.nat_len[nb]]
            reach = (ctx.cycle.nat_right[cand] - rc) % k
            if (ctx.cycle.nat_right[lv] - rc) % k == int(reach.max()):
                assert right_vertex(frame, ctx.cycle, ctx.graph, ctx) == lv
                found = True
    assert found


def test_apex_c4():
    ctx = context_for(load(C4_MODEL))
    frame = compute_frame(ctx.vorder, ctx.cycle, ctx.graph, 0, ctx)
    assert apex_number(frame, ctx.cycle, ctx.graph, ctx) == 2


def test_apex_c6_chains_meet_at_depth_three():
    # on the 6-ring the depth-2 iterates (two hops out both ways) are
    # still two apart; the chains first touch at depth 3
    ctx = context_for(gen_ring(6))
    frame = compute_frame(ctx.vorder, ctx.cycle, ctx.graph, 0, ctx)
    assert apex_number(frame, ctx.cycle, ctx.graph, ctx) == 3


def test_apex_one_when_first_neighbors_meet_around():
    found = False
    for seed in range(80):
        model = gen_random(7, seed)
        ctx = context_for(model)
        if ctx.any_dominating or ctx.any_counter_pair:
            continue
        for v in range(7):
            frame = compute_frame(ctx.vorder, ctx.cycle, ctx.graph, v, ctx)
            if frame.left_vertex is None:
                continue
            if apex_number(frame, ctx.cycle, ctx.graph, ctx) == 1:
                found = True
    assert found


def test_separator_c4():
    ctx = context_for(load(C4_MODEL))
    frame = compute_frame(ctx.vorder, ctx.cycle, ctx.graph, 0, ctx)
    assert separator(frame, ctx.vorder, ctx.cycle, ctx.graph, ctx) == 2


def test_separator_split_matches_first_vertices():
    # both sides of the split must start shortest paths, checked against
    # the BFS oracle on rings (apex machinery) and plain random fixtures
    models = [gen_ring(k) for k in (4, 5, 6, 7, 9, 12, 21, 34, 64)]
    models += [gen_random(8, 3), gen_random(5, 22)]
    for model in models:
        ctx = context_for(model)
        if ctx.any_dominating or ctx.any_counter_pair:
            continue
        graph = ctx.graph
        for v in range(graph.n):
            frame = compute_frame(ctx.vorder, ctx.cycle, graph, v, ctx)
            if frame.facing_block is None or frame.left_vertex is None:
                continue
            r = right_vertex(frame, ctx.cycle, graph, ctx)
            s = separator(frame, ctx.vorder, ctx.cycle, graph, ctx)
            block = frame.facing_block
            for w in ctx.block_vertices(block):
                w = int(w)
                goes_right = ctx.fwd(block.a, w) <= ctx.fwd(block.a, s)
                carrier = r if goes_right else frame.left_vertex
                assert carrier in first_vertices(graph, v, w), (v, w)


def test_face_to_face_c4_compresses_to_one_interval():
    ctx = context_for(load(C4_MODEL))
    frame = compute_frame(ctx.vorder, ctx.cycle, ctx.graph, 0, ctx)
    draft = {}
    label_right(frame, draft, ctx)
    label_left(frame, draft, ctx)
    label_face_to_face(frame, ctx.vorder, ctx.cycle, ctx.graph, draft, ctx)
    assert draft == {
        (0, 1): [RingInterval(1, 2)],
        (0, 3): [RingInterval(3, 3)],
    }


def test_face_to_face_noop_when_block_empty():
    ctx = context_for(gen_random(5, 22))
    frame = compute_frame(ctx.vorder, ctx.cycle, ctx.graph, 0, ctx)
    assert frame.facing_block is None
    draft = {}
    label_face_to_face(frame, ctx.vorder, ctx.cycle, ctx.graph, draft, ctx)
    assert draft == {}


# -- full schemes ---------------------------------------------------------------


def test_c4_scheme_is_the_frozen_one():
    scheme = build_scheme(load(C4_MODEL))
    assert scheme.to_json() == (
        '{"order": [0, 1, 2, 3], "labels": {'
        '"0->1": [[1, 2]], "0->3": [[3, 3]], '
        '"1->0": [[0, 0]], "1->2": [[2, 3]], '
        '"2->1": [[1, 1]], "2->3": [[3, 0]], '
        '"3->0": [[0, 1]], "3->2": [[2, 2]]}}'
    )


def test_complete_graph_schemes_are_singletons():
    for n in (4, 6):
        scheme = build_scheme(gen_complete(n))
        for arc, ivls in scheme.labels.items():
            assert len(ivls) == 1
            assert ivls[0].a == ivls[0].b == arc[1]


def test_scheme_shape_invariants_on_random_corpus():
    for n, seed in [(10, 0), (16, 21), (25, 40), (40, 77)]:
        model = gen_random(n, seed)
        scheme = build_scheme(model)
        order = scheme.order
        per_vertex_doubles = {}
        covered = {v: set() for v in range(n)}
        for (v, w), ivls in scheme.labels.items():
            assert len(ivls) <= 2
            if len(ivls) == 2:
                per_vertex_doubles[v] = per_vertex_doubles.get(v, 0) + 1
            for ivl in ivls:
                members = set(interval_members(order, ivl))
                assert v not in members
                assert not (covered[v] & members)
                covered[v] |= members
        for v in range(n):
            assert covered[v] == set(range(n)) - {v}
            assert per_vertex_doubles.get(v, 0) <= 1


def test_operation_path_matches_fast_path():
    # assembling a scheme arc by arc through the public labeling
    # operations gives exactly the bulk builder's intervals
    from arcroute.builder import Draft, _draft_add

    cases = [load(C4_MODEL), gen_ring(7), gen_wheel(5), gen_complete(5),
             gen_random(12, 1), gen_random(12, 60), gen_random(20, 83),
             gen_random(5, 101), gen_random(30, 6)]
    for model in cases:
        ctx = context_for(model)
        draft: Draft = {}
        for v in range(model.n):
            if ctx.dominating[v]:
                for w in range(model.n):
                    if w != v:
                        _draft_add(draft, ctx, v, w, int(ctx.pos[w]), 1)
                continue
            frame = compute_frame(ctx.vorder, ctx.cycle, ctx.graph, v, ctx)
            label_right(frame, draft, ctx)
            label_left(frame, draft, ctx)
            label_face_to_face(frame, ctx.vorder, ctx.cycle, ctx.graph,
                               draft, ctx)
        fast = build_scheme(model)
        assert set(draft.keys()) == set(fast.labels.keys())
        for arc, ivls in fast.labels.items():
            assert sorted((i.a, i.b) for i in ivls) == sorted(
                (i.a, i.b) for i in draft[arc]
            ), arc


def test_scheme_json_round_trip():
    scheme = build_scheme(gen_random(14, 5))
    again = RoutingScheme.from_json(scheme.to_json())
    assert again.order == scheme.order
    assert again.labels == scheme.labels
    assert again.to_json() == scheme.to_json()


def test_interval_model_with_covering_arcs_still_routes():
    # a covering model whose graph is an interval graph: the left-vertex
    # machinery degenerates and the distance-checked split takes over
    model = gen_random(5, 101)
    ctx = context_for(model)
    assert not ctx.any_dominating and not ctx.any_counter_pair
    assert any(
        ctx.left_vertex_of(v) is None
        for v in range(5) if not ctx.dominating[v]
    )
    from arcroute import verify_scheme

    scheme = build_scheme(model)
    assert verify_scheme(ctx.graph, scheme).passed
