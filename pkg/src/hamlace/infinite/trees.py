"""Matched quotients, depth-first (normal) spanning trees and their lifts."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

from ..graph_core import Graph, GraphError, edge_key
from ..ham_construct import ConstructionError
from ..matching import Matching, require_perfect


def matched_quotient(G: Graph, M: Matching) -> Graph:
    """Vertex ``i`` is the ``i``-th pair of ``M.pairs()``; two pairs are
    adjacent when some edge of ``G`` joins them."""
    require_perfect(G, M)
    pairs = M.pairs()
    which = [0] * G.n
    for i, (u, v) in enumerate(pairs):
        which[u] = which[v] = i
    return Graph.from_edges(
        len(pairs), ((which[u], which[v]) for u, v in G.edges() if which[u] != which[v])
    )


@dataclass(frozen=True)
class RootedTree:
    root: int
    parent: tuple[int, ...]  # -1 at the root
    depth: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.parent)

    def edges(self) -> list[tuple[int, int]]:
        return sorted(edge_key(v, p) for v, p in enumerate(self.parent) if p != -1)

    def graph(self) -> Graph:
        return Graph.from_edges(self.n, self.edges())

    def is_ancestor(self, a: int, b: int) -> bool:
        """True when ``a`` lies on the root path of ``b`` (``a == b`` included)."""
        while self.depth[b] > self.depth[a]:
            b = self.parent[b]
        return a == b

    def normality_violations(self, G: Graph) -> list[tuple[int, int]]:
        """Edges of ``G`` whose ends are not comparable in the tree order."""
        return [
            (u, v) for u, v in G.edges()
            if not (self.is_ancestor(u, v) or self.is_ancestor(v, u))
        ]


def _dfs(adj, root: int, allowed, parent: list[int], depth: list[int], base_depth: int) -> None:
    depth[root] = base_depth
    stack = [(root, iter(adj[root]))]
    while stack:
        v, it = stack[-1]
        for w in it:
            if w in allowed and depth[w] == -1:
                parent[w] = v
                depth[w] = depth[v] + 1
                stack.append((w, iter(adj[w])))
                break
        else:
            stack.pop()


def normal_spanning_tree(G: Graph, root: int = 0) -> RootedTree:
    """Depth-first spanning tree, children taken in ascending order. In a
    finite graph every such tree is normal; that is re-checked here."""
    if not 0 <= root < G.n:
        raise GraphError(f"root {root} out of range")
    parent, depth = [-1] * G.n, [-1] * G.n
    _dfs(G.adj, root, range(G.n), parent, depth, 0)
    if -1 in depth:
        raise GraphError("graph is not connected")
    T = RootedTree(root, tuple(parent), tuple(depth))
    bad = T.normality_violations(G)
    if bad:
        raise ConstructionError(f"depth-first tree is not normal at {bad[0]}")
    return T


def extend_normal_tree(Q: Graph, old: RootedTree | None, keep: Iterable[int], root: int) -> RootedTree:
    """Grow a normal tree of ``Q[keep]`` to one of ``Q``.

    ``old`` is given on ``Q``'s ids with ``parent``/``depth`` set for the
    vertices in ``keep`` (other entries ignored). Each component ``D`` of the
    remainder hangs below the deepest vertex ``d`` of its neighbourhood, which
    must be a chain, at the smallest vertex of ``D`` adjacent to ``d``.
    """
    keep = set(keep)
    parent, depth = [-1] * Q.n, [-1] * Q.n
    if old is None or not keep:
        _dfs(Q.adj, root, range(Q.n), parent, depth, 0)
    else:
        for v in keep:
            parent[v], depth[v] = old.parent[v], old.depth[v]
        partial = RootedTree(root, tuple(parent), tuple(depth))
        for start in range(Q.n):
            if depth[start] != -1:
                continue
            comp, stack = {start}, [start]
            while stack:
                v = stack.pop()
                for w in Q.adj[v]:
                    if w not in keep and w not in comp:
                        comp.add(w)
                        stack.append(w)
            attach = sorted({w for v in comp for w in Q.adj[v] if w in keep}, key=depth.__getitem__)
            if not attach:
                raise GraphError("quotient is not connected")
            d = attach[-1]
            if not all(partial.is_ancestor(a, d) for a in attach):
                raise ConstructionError(f"neighbourhood {attach} of a new component is not a chain")
            r = min(v for v in comp if d in Q.adj[v])
            parent[r] = d
            _dfs(Q.adj, r, comp, parent, depth, depth[d] + 1)
    if -1 in depth:
        raise GraphError("quotient is not connected")
    return RootedTree(root, tuple(parent), tuple(depth))


def lift_tree(
    G: Graph,
    M: Matching,
    QT: Graph | RootedTree,
    edge_choice: Callable[[int, int], tuple[int, int]] | Mapping | None = None,
) -> Graph:
    """Spanning tree of ``G``: all of ``M`` plus one ``G``-edge for each edge of
    the quotient tree ``QT``, by default the smallest edge between the pairs."""
    require_perfect(G, M)
    if isinstance(QT, RootedTree):
        QT = QT.graph()
    pairs = M.pairs()
    if QT.n != len(pairs) or QT.m != QT.n - 1:
        raise GraphError("quotient tree does not span the matched pairs")
    which = [0] * G.n
    for i, (u, v) in enumerate(pairs):
        which[u] = which[v] = i
    between: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for u, v in G.edges():
        if which[u] != which[v]:
            between.setdefault(edge_key(which[u], which[v]), []).append((u, v))
    chosen = list(pairs)
    for f in QT.edges():
        allowed = between.get(f)
        if not allowed:
            raise GraphError(f"quotient edge {f} has no edge of the graph behind it")
        if edge_choice is None:
            e = allowed[0]
        else:
            e = edge_choice[f] if isinstance(edge_choice, Mapping) else edge_choice(*f)
            e = edge_key(*e)
            if e not in allowed:
                raise GraphError(f"chosen edge {e} does not join the pairs of quotient edge {f}")
        chosen.append(e)
    T = Graph.from_edges(G.n, chosen)
    if T.m != G.n - 1:
        raise GraphError("lifted edges do not form a spanning tree")
    return T
