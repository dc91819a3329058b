"""Bounded-degree data-gathering spanning trees rooted at the sink.

Construction follows minimum-hop parent selection under a per-node child
limit. The attachment order is fixed for reproducibility: nodes attach in
BFS order (smallest feasible depth first, ties by ascending node id), each
to the lowest-id non-full attached neighbor at that depth.
"""

from __future__ import annotations

from collections.abc import Mapping

from .topology import SINK, NetworkGraph, is_connected


class Disconnected(ValueError):
    """The graph does not reach every node from the sink."""


class Infeasible(ValueError):
    """The child limit blocks the deterministic attachment rule from spanning."""


class SpanningTree:
    """Parent/children structure with depth, descendant and generation-rate maps.

    gen_rate(u) is the number of packets u generates per cycle; the sink's
    rate is always 0. Immutable once built.
    """

    def __init__(
        self,
        sink: int,
        parent: dict[int, int],
        children: dict[int, list[int]],
        depth: dict[int, int],
        gen_rate: dict[int, int],
    ):
        self.sink = sink
        self.parent = dict(parent)
        self.children = {u: list(cs) for u, cs in children.items()}
        self.depth = dict(depth)
        self.gen_rate = dict(gen_rate)
        self.descendants = self._count_descendants()
        self._demand = self._accumulate_demand()

    @property
    def n(self) -> int:
        return len(self.depth)

    def nodes(self) -> list[int]:
        return sorted(self.depth)

    def non_sink_nodes(self) -> list[int]:
        return [u for u in self.nodes() if u != self.sink]

    def total_generated(self) -> int:
        return sum(self.gen_rate[u] for u in self.non_sink_nodes())

    def _by_depth_desc(self) -> list[int]:
        return sorted(self.depth, key=lambda u: self.depth[u], reverse=True)

    def _count_descendants(self) -> dict[int, int]:
        desc = {u: 0 for u in self.depth}
        for u in self._by_depth_desc():
            for c in self.children.get(u, []):
                desc[u] += 1 + desc[c]
        return desc

    def _accumulate_demand(self) -> dict[int, int]:
        demand = {u: self.gen_rate.get(u, 0) for u in self.depth}
        for u in self._by_depth_desc():
            for c in self.children.get(u, []):
                demand[u] += demand[c]
        return demand


def _normalize_rates(nodes: list[int], sink: int, gen_rate) -> dict[int, int]:
    if isinstance(gen_rate, Mapping):
        rates = {u: int(gen_rate.get(u, 1)) for u in nodes}
    else:
        rates = {u: int(gen_rate) for u in nodes}
    rates[sink] = 0
    for u, r in rates.items():
        if r < 0:
            raise ValueError(f"negative gen_rate for node {u}")
    return rates


def build_spanning_tree(
    graph: NetworkGraph,
    max_children: int,
    sink: int = SINK,
    gen_rate: int | Mapping[int, int] = 1,
) -> SpanningTree:
    """Build the deterministic bounded-degree spanning tree rooted at sink.

    Raises Disconnected when some node is unreachable from the sink, and
    Infeasible when the attachment rule dead-ends (every neighbor of some
    unattached node is full); callers typically resample the topology then.
    """
    if max_children < 1:
        raise ValueError("max_children must be >= 1")
    graph._check_node(sink)
    if not is_connected(graph):
        raise Disconnected("graph is not connected from the sink")

    n = graph.n
    parent: dict[int, int] = {}
    children: dict[int, list[int]] = {u: [] for u in range(n)}
    depth: dict[int, int] = {sink: 0}

    while len(depth) < n:
        # Pick the next node to attach: smallest feasible depth, then lowest id.
        best_key = None
        best_node = -1
        best_parent = -1
        for u in range(n):
            if u in depth:
                continue
            choice = None
            for p in sorted(graph.neighbors(u)):
                if p in depth and len(children[p]) < max_children:
                    cand = (depth[p] + 1, p)
                    if choice is None or cand < choice:
                        choice = cand
            if choice is None:
                continue
            key = (choice[0], u)
            if best_key is None or key < best_key:
                best_key = key
                best_node = u
                best_parent = choice[1]
        if best_key is None:
            blocked = sorted(set(range(n)) - set(depth))
            raise Infeasible(
                f"child limit {max_children} blocks nodes {blocked} from attaching"
            )
        parent[best_node] = best_parent
        children[best_parent].append(best_node)
        depth[best_node] = depth[best_parent] + 1

    rates = _normalize_rates(list(range(n)), sink, gen_rate)
    return SpanningTree(sink, parent, children, depth, rates)


def subtree_demand(tree: SpanningTree, u: int) -> int:
    """Packets u must forward per cycle: its own plus everything generated below it."""
    if u == tree.sink:
        raise ValueError("the sink never transmits and has no traffic demand")
    if u not in tree.depth:
        raise ValueError(f"node {u} not in tree")
    return tree._demand[u]


def dump_tree(tree: SpanningTree) -> str:
    """One `<node_id> <parent_id> <depth> <descendants> <gen_rate>` line per node.

    The sink line uses parent_id -1. Lines are ordered by node id.
    """
    lines = []
    for u in tree.nodes():
        p = tree.parent.get(u, -1) if u != tree.sink else -1
        lines.append(
            f"{u} {p} {tree.depth[u]} {tree.descendants[u]} {tree.gen_rate[u]}"
        )
    return "\n".join(lines) + "\n"


def write_tree_file(tree: SpanningTree, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump_tree(tree))
