import math

import pytest

from trasa.topology import NetworkGraph


def chain_graph(n: int) -> NetworkGraph:
    """Path graph 0-1-...-(n-1): only consecutive nodes are in range."""
    return NetworkGraph([(0.05 * i, 0.0) for i in range(n)], 0.07, (1.0, 1.0))


def star_graph(n: int) -> NetworkGraph:
    """Sink at the center, n-1 leaves pairwise out of range."""
    pts = [(0.5, 0.5)]
    for k in range(n - 1):
        ang = 2 * math.pi * k / max(n - 1, 1)
        pts.append((0.5 + 0.3 * math.cos(ang), 0.5 + 0.3 * math.sin(ang)))
    return NetworkGraph(pts, 0.35, (1.0, 1.0))


@pytest.fixture
def chain3() -> NetworkGraph:
    return chain_graph(3)
