"""Graph powers: ``power`` joins vertices at distance <= t, ``bipower`` only
those at odd distance <= t."""

from __future__ import annotations

from .graph_core import Graph, bfs_distance


def _distance_power(G: Graph, t: int, odd_only: bool) -> Graph:
    if t < 1:
        raise ValueError("t must be a positive integer")
    adj = []
    for u in range(G.n):
        dist = bfs_distance(G, u, t)
        adj.append(sorted(v for v, d in dist.items() if d > 0 and (d % 2 == 1 or not odd_only)))
    return Graph(G.n, adj)


def bipower(G: Graph, t: int) -> Graph:
    """Edge ``uv`` iff ``d_G(u, v)`` is odd and at most ``t``."""
    return _distance_power(G, t, odd_only=True)


def power(G: Graph, t: int) -> Graph:
    """Edge ``uv`` iff ``1 <= d_G(u, v) <= t``."""
    return _distance_power(G, t, odd_only=False)
