"""Deliberately naive reference implementations, sharing no code with the
package beyond the Graph container."""

from __future__ import annotations

from itertools import combinations, permutations

import networkx as nx

from hamlace.graph_core import Graph

INF = float("inf")


def to_nx(G: Graph) -> nx.Graph:
    H = nx.Graph()
    H.add_nodes_from(range(G.n))
    H.add_edges_from(G.edges())
    return H


def floyd(G: Graph) -> list[list[float]]:
    d = [[0 if i == j else INF for j in range(G.n)] for i in range(G.n)]
    for u, v in G.edges():
        d[u][v] = d[v][u] = 1
    for k in range(G.n):
        for i in range(G.n):
            for j in range(G.n):
                if d[i][k] + d[k][j] < d[i][j]:
                    d[i][j] = d[i][k] + d[k][j]
    return d


def power_edges(G: Graph, t: int, odd_only: bool) -> set[tuple[int, int]]:
    d = floyd(G)
    return {
        (i, j) for i in range(G.n) for j in range(i + 1, G.n)
        if d[i][j] <= t and (not odd_only or d[i][j] % 2 == 1)
    }


def max_matching_size(G: Graph) -> int:
    edges = G.edges()
    best = 0

    def go(i: int, used: frozenset, size: int) -> None:
        nonlocal best
        best = max(best, size)
        if size + (len(edges) - i) <= best:
            return
        for j in range(i, len(edges)):
            u, v = edges[j]
            if u not in used and v not in used:
                go(j + 1, used | {u, v}, size + 1)

    go(0, frozenset(), 0)
    return best


def perfect_matchings(G: Graph) -> list[frozenset]:
    out = []
    edges = G.edges()
    for combo in combinations(edges, G.n // 2):
        if len({v for e in combo for v in e}) == G.n:
            out.append(frozenset(combo))
    return out


def naive_ham_path(G: Graph, x: int, y: int):
    rest = [v for v in range(G.n) if v not in (x, y)]
    for mid in permutations(rest):
        seq = (x, *mid, y)
        if all(G.has_edge(a, b) for a, b in zip(seq, seq[1:])):
            return seq
    return None


def naive_ham_cycle(G: Graph):
    if G.n < 3:
        return None
    for rest in permutations(range(1, G.n)):
        seq = (0, *rest)
        if all(G.has_edge(a, b) for a, b in zip(seq, seq[1:] + seq[:1])):
            return seq
    return None


def naive_crossings(T: Graph, seq, e, cyclic: bool) -> int:
    """Maximal segments of the walk that pass from one side of ``T - e`` to the other."""
    H = to_nx(T)
    H.remove_edge(*e)
    side_a = nx.node_connected_component(H, e[0])
    walk = list(seq) + ([seq[0]] if cyclic else [])
    return sum(1 for a, b in zip(walk, walk[1:]) if (a in side_a) != (b in side_a))


def brute_menger(G: Graph, A, B) -> int:
    """Size of a smallest vertex set meeting every A-B path."""
    A, B = set(A), set(B)
    H = to_nx(G)
    for k in range(G.n + 1):
        for X in combinations(range(G.n), k):
            rest = H.subgraph(set(range(G.n)) - set(X))
            reach = set()
            for a in A - set(X):
                reach |= nx.node_connected_component(rest, a)
            if not reach & (B - set(X)):
                return k
    return G.n
