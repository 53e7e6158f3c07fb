"""Finite stand-ins for end arguments: cut sizes across tree edges,
vertex-disjoint paths, and separator checks for faithfulness."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from ..graph_core import Graph, GraphError, connected_components, edge_key
from ..verify import Report


def _side_of(T: Graph, e: tuple[int, int]) -> list[bool]:
    u, v = e
    side = [False] * T.n
    side[v] = True
    stack = [v]
    while stack:
        a = stack.pop()
        for b in T.adj[a]:
            if not side[b] and b != u:
                side[b] = True
                stack.append(b)
    return side


def tree_cut_sizes(Gp: Graph, T: Graph, F: Iterable[tuple[int, int]]) -> dict[tuple[int, int], int]:
    """``|E_Gp(T1, T2)|`` for each ``e`` in ``F``, where ``T1, T2`` are the
    components of ``T - e``."""
    out = {}
    edges = Gp.edges()
    for e in sorted(edge_key(*e) for e in F):
        if not T.has_edge(*e):
            raise GraphError(f"{e} is not an edge of the tree")
        side = _side_of(T, e)
        out[e] = sum(1 for a, b in edges if side[a] != side[b])
    return out


def end_degree_bound(
    Gp: Graph,
    T: Graph,
    F: Iterable[tuple[int, int]],
    boundary: Iterable[int] = (),
    mate: Sequence[int] | None = None,
) -> int:
    """Largest number of ``Gp``-edges across a single edge of ``F``.

    A component of ``T - F`` that meets ``boundary`` might continue past the
    truncation, so it is refused unless it is one matched pair.
    """
    F = {edge_key(*e) for e in F}
    if T.n != Gp.n:
        raise GraphError("tree and graph have different vertex counts")
    rest = Graph.from_edges(T.n, (e for e in T.edges() if e not in F))
    touch = set(boundary)
    for comp in connected_components(rest):
        if touch.isdisjoint(comp):
            continue
        if mate is None or len(comp) != 2 or mate[comp[0]] != comp[1]:
            raise GraphError(f"component {comp[:6]} of T - F reaches the truncation boundary")
    sizes = tree_cut_sizes(Gp, T, F)
    return max(sizes.values(), default=0)


# -- Menger ------------------------------------------------------------------------

@dataclass(frozen=True)
class DisjointPaths:
    count: int
    paths: tuple[tuple[int, ...], ...]
    separator: tuple[int, ...]  # minimum (A, B)-separator, same size as count


def disjoint_paths(G: Graph, A: Iterable[int], B: Iterable[int]) -> DisjointPaths:
    """Maximum set of vertex-disjoint ``(A, B)``-paths, by augmenting paths in
    the split-vertex network with unit capacities."""
    A, B = sorted(set(A)), sorted(set(B))
    if set(A) & set(B):
        raise GraphError("A and B must be disjoint")
    n = G.n
    # node 2v is v_in, 2v+1 is v_out; S = 2n, T = 2n+1. Only the v_in -> v_out
    # arcs have capacity 1, so every minimum cut is a set of vertices.
    S, Tt, big = 2 * n, 2 * n + 1, n + 1
    cap: dict[tuple[int, int], int] = {}
    nbr: list[list[int]] = [[] for _ in range(2 * n + 2)]

    def arc(a: int, b: int, c: int) -> None:
        if (a, b) not in cap and (b, a) not in cap:
            nbr[a].append(b)
            nbr[b].append(a)
        cap.setdefault((b, a), 0)
        cap[(a, b)] = c

    for v in range(n):
        arc(2 * v, 2 * v + 1, 1)
        for w in G.adj[v]:
            arc(2 * v + 1, 2 * w, big)
    for a in A:
        arc(S, 2 * a, big)
    for b in B:
        arc(2 * b + 1, Tt, big)
    orig = dict(cap)

    def augment() -> dict[int, int]:
        prev = {S: S}
        queue = deque([S])
        while queue:
            a = queue.popleft()
            for b in nbr[a]:
                if b not in prev and cap[(a, b)] > 0:
                    prev[b] = a
                    if b == Tt:
                        return prev
                    queue.append(b)
        return prev

    count = 0
    while True:
        prev = augment()
        if Tt not in prev:
            break
        b = Tt
        while b != S:
            a = prev[b]
            cap[(a, b)] -= 1
            cap[(b, a)] += 1
            b = a
        count += 1

    separator = tuple(v for v in range(n) if 2 * v in prev and 2 * v + 1 not in prev)

    def flow(a: int, b: int) -> int:
        return orig[(a, b)] - cap[(a, b)]

    paths = []
    ends = set(B)
    for a in A:
        if flow(S, 2 * a) <= 0:
            continue
        walk, v = [a], a
        while v not in ends:
            v = next(w for w in G.adj[v] if flow(2 * v + 1, 2 * w) > 0)
            walk.append(v)
        paths.append(tuple(walk))
    return DisjointPaths(count, tuple(paths), separator)


# -- faithfulness ------------------------------------------------------------------

def faithfulness_check(
    G: Graph, H: Graph, separators: Iterable[Iterable[int]], boundary: Iterable[int]
) -> Report:
    """Separator test that ``H`` keeps the ends of ``G`` apart.

    For each separator ``S`` the boundary-touching components of ``H - S``
    (stand-ins for ends of ``H``) are matched to the boundary-touching
    components of ``G - S+``, with ``S+`` the closed ``G``-neighbourhood of
    ``S``. Two ``H``-pieces landing in one ``G``-piece means ``H`` splits an
    end of ``G``; a ``G``-piece that receives nothing is an end ``H`` lost.
    """
    if H.n != G.n:
        raise GraphError("H does not span G")
    if any(not G.has_edge(u, v) for u, v in H.edges()):
        raise GraphError("H is not a subgraph of G")
    if len(connected_components(H)) != 1:
        raise GraphError("H is not connected")
    boundary = set(boundary)
    report = Report()
    results = []
    for S in separators:
        S = sorted(set(S))
        plus = set(S).union(*(G.adj[v] for v in S))
        h_ends = [c for c in connected_components(H, exclude=S) if boundary.intersection(c)]
        g_comps = connected_components(G, exclude=plus)
        g_of = {v: i for i, c in enumerate(g_comps) for v in c}
        g_ends = {i for i, c in enumerate(g_comps) if boundary.intersection(c)}
        owner: dict[int, int] = {}
        merged = False
        for j, c in enumerate(h_ends):
            for i in {g_of[v] for v in c if v in boundary and v in g_of}:
                if owner.setdefault(i, j) != j:
                    merged = True
        lost = sorted(g_ends - set(owner))
        ok = not merged and not lost
        results.append({"separator": S, "h_ends": len(h_ends), "g_ends": len(g_ends), "ok": ok})
        if merged:
            report.fail(f"separator {S}: two ends of H fall into one end of G")
        if lost:
            report.fail(f"separator {S}: {len(lost)} boundary piece(s) of G meet no end of H")
    report.checks["separators"] = results
    return report
