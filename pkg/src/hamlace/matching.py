"""Matchings: maximum bipartite matching, the forced matching of a tree, and
spanning trees that keep a prescribed perfect matching."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .graph_core import X, Bipartition, Graph, GraphError, ParseError, bipartition, is_connected, is_tree


class MatchingError(GraphError):
    pass


@dataclass(frozen=True)
class Matching:
    """``mate[v]`` is v's partner, or -1 when v is unmatched."""

    mate: tuple[int, ...]

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "Matching":
        mate = [-1] * n
        for u, v in pairs:
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise MatchingError(f"bad matching pair ({u}, {v})")
            if mate[u] != -1 or mate[v] != -1:
                raise MatchingError(f"vertex matched twice in pair ({u}, {v})")
            mate[u], mate[v] = v, u
        return cls(tuple(mate))

    @property
    def n(self) -> int:
        return len(self.mate)

    def pairs(self) -> list[tuple[int, int]]:
        return [(u, v) for u, v in enumerate(self.mate) if u < v]

    def __len__(self) -> int:
        return sum(1 for v in self.mate if v != -1) // 2

    def is_perfect(self) -> bool:
        return all(v != -1 for v in self.mate)

    def contains(self, u: int, v: int) -> bool:
        return 0 <= u < self.n and self.mate[u] == v

    def is_valid_for(self, G: Graph) -> bool:
        if self.n != G.n:
            return False
        return all(
            v == -1 or (self.mate[v] == u and G.has_edge(u, v)) for u, v in enumerate(self.mate)
        )


def serialize_matching(M: Matching) -> str:
    return "".join(f"{u} {v}\n" for u, v in M.pairs())


def parse_matching(text: str, n: int) -> Matching:
    pairs = []
    for i, line in enumerate(text.splitlines(), start=1):
        toks = line.split()
        if not toks:
            continue
        if len(toks) != 2:
            raise ParseError("matching line must be 'u v'", i)
        try:
            pairs.append((int(toks[0]), int(toks[1])))
        except ValueError:
            raise ParseError(f"non-integer vertex id in {line!r}", i) from None
    try:
        return Matching.from_pairs(n, pairs)
    except MatchingError as exc:
        raise ParseError(str(exc)) from None


def require_perfect(G: Graph, M: Matching) -> None:
    if not M.is_valid_for(G):
        raise MatchingError("matching is not a set of disjoint edges of the graph")
    if not M.is_perfect():
        raise MatchingError("matching is not perfect")


def maximum_matching(G: Graph, B: Bipartition | None = None) -> Matching:
    """Maximum-cardinality matching by Hopcroft-Karp phases.

    Left side is the X part of ``B``. Neighbors are scanned in ascending
    order, so the result is a deterministic function of ``G``.
    """
    if B is None:
        B = bipartition(G)
    elif not B.is_valid_for(G):
        raise GraphError("bipartition is not valid for this graph")
    adj = G.adj
    left = [v for v in range(G.n) if B.side[v] == X]
    mate = [-1] * G.n
    inf = G.n + 1

    while True:
        dist = [inf] * G.n
        queue = deque()
        for u in left:
            if mate[u] == -1:
                dist[u] = 0
                queue.append(u)
        found = False
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                w = mate[v]
                if w == -1:
                    found = True
                elif dist[w] == inf:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        if not found:
            break

        ptr = [0] * G.n
        for root in left:
            if mate[root] != -1:
                continue
            stack, via = [root], []
            while stack:
                u = stack[-1]
                pushed = False
                while ptr[u] < len(adj[u]):
                    v = adj[u][ptr[u]]
                    ptr[u] += 1
                    w = mate[v]
                    if w == -1:
                        via.append(v)
                        for a, b in zip(stack, via):
                            mate[a], mate[b] = b, a
                        stack = []
                        pushed = True
                        break
                    if dist[w] == dist[u] + 1:
                        via.append(v)
                        stack.append(w)
                        pushed = True
                        break
                if not pushed:
                    dist[u] = inf
                    stack.pop()
                    if via:
                        via.pop()
    return Matching(tuple(mate))


def tree_perfect_matching(T: Graph) -> Matching:
    """The unique perfect matching of a tree, found by peeling leaves."""
    if not is_tree(T):
        raise GraphError("input is not a tree")
    if T.n % 2:
        raise MatchingError("tree of odd order has no perfect matching")
    mate = [-1] * T.n
    live_deg = [len(a) for a in T.adj]
    leaves = deque(v for v in range(T.n) if live_deg[v] == 1)
    while leaves:
        u = leaves.popleft()
        if mate[u] != -1:
            continue
        partner = next((w for w in T.adj[u] if mate[w] == -1), -1)
        if partner == -1:
            raise MatchingError(f"vertex {u} is stranded: its only neighbor is already matched")
        mate[u], mate[partner] = partner, u
        for w in T.adj[partner]:
            if mate[w] == -1:
                live_deg[w] -= 1
                if live_deg[w] <= 1:
                    leaves.append(w)
    if -1 in mate:
        raise MatchingError(f"vertex {mate.index(-1)} left unmatched")
    return Matching(tuple(mate))


class DisjointSet:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, v: int) -> int:
        root = v
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[v] != root:
            self.parent[v], v = root, self.parent[v]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return True


def spanning_tree_with_matching(G: Graph, M: Matching) -> Graph:
    """Spanning tree of ``G`` containing every edge of the perfect matching ``M``.

    Non-matching edges are offered in order of their larger endpoint, ties
    broken by the smaller one, and kept when they join two trees.
    """
    require_perfect(G, M)
    if not is_connected(G):
        raise GraphError("graph is not connected")
    ds = DisjointSet(G.n)
    tree = M.pairs()
    for u, v in tree:
        ds.union(u, v)
    for v in range(G.n):
        for u in G.adj[v]:
            if u >= v:
                break
            if M.mate[u] != v and ds.union(u, v):
                tree.append((u, v))
    return Graph.from_edges(G.n, tree)
