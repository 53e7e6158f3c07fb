"""Hamiltonian paths and cycles in the cube bi-power of a bipartite graph with
a perfect matching.

Everything reduces to a spanning tree ``T`` that contains the matching. On a
tree, the path between the two ends of a matching edge is assembled from the
components of ``T - {x, y}``; for an arbitrary cross pair the tree is split at
a non-matching edge on the x-y tree path and the two halves are joined.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .graph_core import Graph, GraphError, bfs_distance, bipartition, is_connected, is_tree
from .matching import Matching, require_perfect, spanning_tree_with_matching


class ConstructionError(GraphError):
    pass


@dataclass(frozen=True)
class HamPath:
    seq: tuple[int, ...]
    host: Graph
    tree: Graph | None = None

    @property
    def x(self) -> int:
        return self.seq[0]

    @property
    def y(self) -> int:
        return self.seq[-1]

    def __len__(self) -> int:
        return len(self.seq)


@dataclass(frozen=True)
class HamCycle:
    seq: tuple[int, ...]
    host: Graph
    tree: Graph | None = None

    def __len__(self) -> int:
        return len(self.seq)

    def edges(self) -> list[tuple[int, int]]:
        s = self.seq
        return [(s[i], s[(i + 1) % len(s)]) for i in range(len(s))]


def _rooted_children(adj, root: int, cut: set[tuple[int, int]] | None) -> tuple[list, list]:
    """Children lists and subtree minima of the tree component containing
    ``root``, skipping edges in ``cut``. Vertices outside the component keep
    an empty child list."""
    n = len(adj)
    kids: list[list[int]] = [[] for _ in range(n)]
    parent = [-1] * n
    order = [root]
    stack = [root]
    while stack:
        v = stack.pop()
        pv = parent[v]
        for w in adj[v]:
            if w == pv or (cut and ((v, w) if v < w else (w, v)) in cut):
                continue
            parent[w] = v
            kids[v].append(w)
            order.append(w)
            stack.append(w)
    submin = list(range(n))
    for v in reversed(order):
        pv = parent[v]
        if pv != -1 and submin[v] < submin[pv]:
            submin[pv] = submin[v]
    return kids, submin


def _matched_edge_path(adj, mate, x: int, y: int, cut=None) -> list[int]:
    """Hamiltonian (x, y)-path of the cube bi-power of the tree component of
    ``x`` where ``xy`` is a matching edge.

    Components hanging off ``y`` come first, each entered at the mate of its
    attachment vertex; then components hanging off ``x``, each entered at its
    attachment vertex. Within each group, components go by smallest vertex.
    """
    kids, submin = _rooted_children(adj, x, cut)
    out: list[int] = []
    # task (a, b, rev): emit the (a, b)-path for matching edge ab, reversed if rev
    stack: list = [(x, y, False)]
    while stack:
        item = stack.pop()
        if isinstance(item, int):
            out.append(item)
            continue
        a, b, rev = item
        off_a = sorted((w for w in kids[a] if w != b), key=submin.__getitem__)
        off_b = sorted((w for w in kids[b] if w != a), key=submin.__getitem__)
        seq: list = [a]
        seq.extend((c, mate[c], True) for c in off_b)
        seq.extend((mate[w], w, True) for w in off_a)
        seq.append(b)
        if rev:
            seq = [s if isinstance(s, int) else (s[0], s[1], not s[2]) for s in reversed(seq)]
        stack.extend(reversed(seq))
    return out


def _check_steps(G: Graph, seq, closed: bool) -> None:
    pairs = list(zip(seq, seq[1:]))
    if closed:
        pairs.append((seq[-1], seq[0]))
    for u, v in pairs:
        d = bfs_distance(G, u, 3).get(v)
        if d is None or d % 2 == 0:
            raise ConstructionError(f"step {u}->{v} is not an odd distance <= 3 (got {d})")


def tree_ham_path(T: Graph, M: Matching, x: int, y: int, check: bool = False) -> HamPath:
    """Hamiltonian (x, y)-path of ``bipower(T, 3)`` for a matching edge ``xy``
    that crosses every non-matching tree edge exactly twice."""
    if not is_tree(T):
        raise GraphError("input is not a tree")
    require_perfect(T, M)
    if not M.contains(x, y):
        raise ConstructionError(f"({x}, {y}) is not a matching edge")
    seq = _matched_edge_path(T.adj, M.mate, x, y)
    if check:
        _check_steps(T, seq, closed=False)
    return HamPath(tuple(seq), T, T)


def _tree_route(adj, a: int, b: int, cut: set[tuple[int, int]]) -> list[int]:
    prev = {a: -1}
    queue = deque([a])
    while queue:
        v = queue.popleft()
        if v == b:
            break
        for w in adj[v]:
            if w not in prev and ((v, w) if v < w else (w, v)) not in cut:
                prev[w] = v
                queue.append(w)
    route = [b]
    while route[-1] != a:
        route.append(prev[route[-1]])
    return route[::-1]


def _laced_tree_path(T: Graph, mate, side, x: int, y: int) -> list[int]:
    cut: set[tuple[int, int]] = set()
    out: list[int] = []
    stack = [(x, y)]
    while stack:
        a, b = stack.pop()
        if mate[a] == b:
            out.extend(_matched_edge_path(T.adj, mate, a, b, cut))
            continue
        route = _tree_route(T.adj, a, b, cut)
        i = next(i for i in range(len(route) - 1) if mate[route[i]] != route[i + 1])
        p, q = route[i], route[i + 1]
        cut.add((p, q) if p < q else (q, p))
        if side[p] != side[a]:
            # the Y-end of the cut edge stays with a: join through the edge itself
            first, second = (a, p), (q, b)
        else:
            # join through the mates of the cut edge's ends, at tree distance 3
            first, second = (a, mate[p]), (mate[q], b)
        stack.append(second)
        stack.append(first)
    return out


def laceable_ham_path(G: Graph, M: Matching, x: int, y: int, check: bool = False) -> HamPath:
    """Hamiltonian (x, y)-path of ``bipower(G, 3)`` for any x, y on opposite
    sides of the bipartition."""
    B = bipartition(G)
    if not is_connected(G):
        raise GraphError("graph is not connected")
    require_perfect(G, M)
    if B.side[x] == B.side[y]:
        raise ConstructionError(f"{x} and {y} lie in the same bipartition class")
    T = spanning_tree_with_matching(G, M)
    seq = _laced_tree_path(T, M.mate, B.side, x, y)
    if check:
        _check_steps(G, seq, closed=False)
    return HamPath(tuple(seq), G, T)


def ham_cycle(G: Graph, M: Matching, check: bool = False) -> HamCycle:
    """Hamiltonian cycle of ``bipower(G, 3)``: the matching-edge path from 0
    to its mate, closed by the matching edge."""
    if G.n < 4:
        raise ConstructionError("order must be at least 4")
    bipartition(G)
    if not is_connected(G):
        raise GraphError("graph is not connected")
    require_perfect(G, M)
    T = spanning_tree_with_matching(G, M)
    seq = _matched_edge_path(T.adj, M.mate, 0, M.mate[0])
    if check:
        _check_steps(G, seq, closed=True)
    return HamCycle(tuple(seq), G, T)
