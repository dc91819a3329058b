#!/usr/bin/env python3
"""Round-trip a schedule through the precedence coloring, then beat it if possible.

The coloring orders nodes below their parents and keeps interfering nodes
apart, so it converts to and from schedules mechanically. The exact search
gives the true minimum on instances small enough to enumerate.
"""

from trasa import (
    Variant,
    build_conflict_map,
    build_spanning_tree,
    coloring_to_schedule,
    generate_random_graph,
    is_connected,
    optimal_schedule_length,
    run_trasa,
    schedule_to_coloring,
    validate_coloring,
    validate_schedule,
)

seed = 0
while True:
    graph = generate_random_graph(7, (1.0, 1.0), 0.55, seed=seed)
    if is_connected(graph):
        break
    seed += 1
tree = build_spanning_tree(graph, max_children=3)
conflicts = build_conflict_map(graph, tree, Variant.ALL_LINKS, h=2)

schedule = run_trasa(tree, conflicts, heuristic=1)
print(f"greedy cycle length: {schedule.length}")

coloring = schedule_to_coloring(schedule, tree, conflicts)
print("colors by node:", dict(sorted(coloring.colors.items())))
print("coloring valid:", validate_coloring(coloring, conflicts, tree))

rebuilt = coloring_to_schedule(coloring, tree, conflicts)
print(f"rebuilt from colors: {rebuilt.length} slots,",
      f"certified: {validate_schedule(rebuilt, conflicts, tree).ok}")

optimum = optimal_schedule_length(tree, conflicts)
print(f"exact minimum: {optimum} slots",
      "(greedy is optimal here)" if optimum == schedule.length else
      f"(greedy left {schedule.length - optimum} slot(s) on the table)")
