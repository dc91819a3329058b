#!/usr/bin/env python3
"""Generate a unit-disk deployment, inspect it, and grow the gathering tree."""

from trasa import (
    build_spanning_tree,
    dump_graph,
    dump_tree,
    generate_random_graph,
    is_connected,
    subtree_demand,
    within_h_hops,
)

# 25 sensors dropped uniformly on a 1m x 1m field, radios reach 0.4m.
graph = generate_random_graph(25, area=(1.0, 1.0), range_r=0.4, seed=2024)
print(f"nodes: {graph.n}, links: {len(graph.edges())}, connected: {is_connected(graph)}")

# Node 0 is the sink. Hop queries answer interference questions directly.
u, v = 3, 17
for h in (1, 2, 3):
    print(f"  nodes {u} and {v} within {h} hops? {within_h_hops(graph, u, v, h)}")

# The gathering tree: minimum-hop parents, at most 3 children each.
tree = build_spanning_tree(graph, max_children=3)
by_depth = {}
for node, d in tree.depth.items():
    by_depth.setdefault(d, []).append(node)
for d in sorted(by_depth):
    print(f"depth {d}: {sorted(by_depth[d])}")

# Traffic demand = own packet + everything generated below.
heaviest = max(tree.non_sink_nodes(), key=lambda n: subtree_demand(tree, n))
print(f"busiest node: {heaviest} forwards {subtree_demand(tree, heaviest)} packets per cycle")

print("\ngraph file format (first 4 lines):")
print("\n".join(dump_graph(graph).splitlines()[:4]))
print("\ntree dump format (first 4 lines):")
print("\n".join(dump_tree(tree).splitlines()[:4]))
