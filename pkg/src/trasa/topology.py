"""Unit-disk network graphs: seeded generation, hop queries, text serialization.

Node 0 is always the sink. Two distinct nodes are linked iff their Euclidean
distance is strictly below the uniform transmission range (ties at exactly the
range are non-edges). All randomness comes from numpy's default PCG64
generator so that a (n, area, range, seed) tuple pins the topology exactly.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Sequence

import numpy as np

SINK = 0


class NetworkGraph:
    """Immutable unit-disk graph over 2-D node positions.

    Adjacency is derived from positions on construction and never stored in
    files; re-reading a dump re-derives the same edge set.
    """

    def __init__(
        self,
        positions: Sequence[tuple[float, float]],
        range_r: float,
        area: tuple[float, float],
        seed: int = -1,
    ):
        if range_r <= 0:
            raise ValueError("range_r must be positive")
        if area[0] <= 0 or area[1] <= 0:
            raise ValueError("area dimensions must be positive")
        if len(positions) < 1:
            raise ValueError("need at least one node")
        self.positions = tuple((float(x), float(y)) for x, y in positions)
        self.range_r = float(range_r)
        self.area = (float(area[0]), float(area[1]))
        self.seed = int(seed)
        self._adjacency = _derive_adjacency(self.positions, self.range_r)

    @property
    def n(self) -> int:
        return len(self.positions)

    @property
    def nodes(self) -> list[tuple[int, float, float]]:
        return [(i, x, y) for i, (x, y) in enumerate(self.positions)]

    def neighbors(self, u: int) -> frozenset[int]:
        self._check_node(u)
        return self._adjacency[u]

    def has_edge(self, u: int, v: int) -> bool:
        self._check_node(u)
        self._check_node(v)
        return v in self._adjacency[u]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self._adjacency[u] if u < v]

    def _check_node(self, u: int) -> None:
        if not 0 <= u < self.n:
            raise ValueError(f"node {u} not in graph of {self.n} nodes")


def _derive_adjacency(
    positions: tuple[tuple[float, float], ...], range_r: float
) -> list[frozenset[int]]:
    pts = np.asarray(positions, dtype=float)
    diff = pts[:, None, :] - pts[None, :, :]
    dist2 = np.einsum("ijk,ijk->ij", diff, diff)
    close = dist2 < range_r * range_r
    np.fill_diagonal(close, False)
    return [frozenset(np.flatnonzero(close[i]).tolist()) for i in range(len(positions))]


def generate_random_graph(
    n: int, area: tuple[float, float], range_r: float, seed: int
) -> NetworkGraph:
    """Drop n nodes uniformly at random on the area and derive the unit-disk edges.

    Positions come from a single (n, 2) draw of numpy's default generator
    (PCG64) seeded with `seed`; identical inputs give a bit-identical graph.
    Connectivity is not enforced here, check is_connected separately.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = np.random.default_rng(seed)
    unit = rng.random((n, 2))
    positions = [(unit[i, 0] * area[0], unit[i, 1] * area[1]) for i in range(n)]
    return NetworkGraph(positions, range_r, area, seed=seed)


def within_h_hops(graph: NetworkGraph, u: int, v: int, h: int) -> bool:
    """True iff the hop distance between distinct nodes u and v is in 1..h."""
    graph._check_node(u)
    graph._check_node(v)
    if u == v:
        raise ValueError("within_h_hops is defined between distinct nodes")
    if h < 1:
        raise ValueError("h must be >= 1")
    # BFS from u, cut off at depth h; unreachable pairs fall through to False.
    seen = {u}
    frontier = deque([(u, 0)])
    while frontier:
        node, d = frontier.popleft()
        if d == h:
            continue
        for w in graph.neighbors(node):
            if w == v:
                return True
            if w not in seen:
                seen.add(w)
                frontier.append((w, d + 1))
    return False


def hop_distances_from(adjacency, source: int) -> dict[int, int]:
    """BFS hop distances from source over an adjacency mapping (node -> iterable)."""
    dist = {source: 0}
    frontier = deque([source])
    while frontier:
        node = frontier.popleft()
        for w in adjacency[node]:
            if w not in dist:
                dist[w] = dist[node] + 1
                frontier.append(w)
    return dist


def is_connected(graph: NetworkGraph) -> bool:
    """True iff every node is reachable from the sink (node 0)."""
    return len(hop_distances_from(graph._adjacency, SINK)) == graph.n


def dump_graph(graph: NetworkGraph) -> str:
    """Serialize to the line-oriented text format.

    Header `graph <n> <R> <width> <height> <seed>`, then one `<id> <x> <y>`
    line per node. Edges are never stored.
    """
    lines = [
        f"graph {graph.n} {graph.range_r!r} {graph.area[0]!r} {graph.area[1]!r} {graph.seed}"
    ]
    for i, (x, y) in enumerate(graph.positions):
        lines.append(f"{i} {x!r} {y!r}")
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> NetworkGraph:
    """Parse the dump_graph format back into a NetworkGraph."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty graph file")
    head = lines[0].split()
    if len(head) != 6 or head[0] != "graph":
        raise ValueError(f"bad graph header: {lines[0]!r}")
    n = int(head[1])
    range_r = float(head[2])
    area = (float(head[3]), float(head[4]))
    seed = int(head[5])
    if len(lines) - 1 != n:
        raise ValueError(f"expected {n} node lines, found {len(lines) - 1}")
    positions: list[tuple[float, float]] = [(0.0, 0.0)] * n
    seen = set()
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 3:
            raise ValueError(f"bad node line: {ln!r}")
        i = int(parts[0])
        if i in seen or not 0 <= i < n:
            raise ValueError(f"bad or duplicate node id {i}")
        seen.add(i)
        positions[i] = (float(parts[1]), float(parts[2]))
    return NetworkGraph(positions, range_r, area, seed=seed)


def write_graph_file(graph: NetworkGraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump_graph(graph))


def read_graph_file(path) -> NetworkGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph(fh.read())
