#!/usr/bin/env python3
"""Structured families and the one-interval boundary.

Rings always compress to a single interval per arc, complete graphs get
pure singletons, and wheels flip from one to two intervals at six outer
vertices, which the brute-force search confirms is unavoidable.
"""

from arcroute import (
    build_scheme,
    gen_complete,
    gen_ring,
    gen_wheel,
    has_shortest_path_1irs,
    intersection_graph,
    interval_stats,
    verify_scheme,
)


def describe(name, model):
    graph = intersection_graph(model)
    scheme = build_scheme(model)
    stats = interval_stats(scheme)
    assert verify_scheme(graph, scheme).passed
    return graph, stats


def main() -> None:
    print("rings: one interval on every arc, any size")
    for k in (4, 8, 16, 32):
        _, stats = describe("ring", gen_ring(k))
        print(f"  ring {k}: {stats.total_intervals} intervals, "
              f"max {stats.max_intervals_per_arc}/arc")

    print("\ncomplete graphs: every destination rides its own arc")
    for n in (4, 6, 8):
        _, stats = describe("complete", gen_complete(n))
        print(f"  K{n}: {stats.total_intervals} singletons")

    print("\nwheels: two intervals become unavoidable at six outer vertices")
    for k in range(3, 8):
        model = gen_wheel(k)
        graph, stats = describe("wheel", model)
        oracle = has_shortest_path_1irs(graph)
        print(f"  wheel {k} (n={graph.n}): builder max "
              f"{stats.max_intervals_per_arc}/arc, "
              f"single-interval scheme exists: {oracle.exists_1irs}")


if __name__ == "__main__":
    main()
