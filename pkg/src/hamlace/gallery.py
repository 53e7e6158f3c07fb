"""Graph families: the non-Hamiltonian examples, seeded random instances, and
exhaustive small-instance enumerations."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator

from .graph_core import Graph, bipartition, is_connected
from .matching import Matching, MatchingError, maximum_matching, tree_perfect_matching


@dataclass(frozen=True)
class LayeredGraph:
    graph: Graph
    layers: tuple[tuple[int, ...], ...]

    @property
    def marked(self) -> tuple[int, ...]:
        """First and last layer together."""
        return tuple(sorted(self.layers[0] + self.layers[-1]))


def layered_counterexample(k: int, t: int, s: int) -> LayeredGraph:
    """Layers ``V_0..V_{s+1}`` with complete joins between consecutive layers.

    Inner layers have ``k`` vertices, the two outer ones ``floor(sk/2) + 1``.
    """
    if k < 1 or t < 1:
        raise ValueError("k and t must be positive")
    if s % 2 or s < t:
        raise ValueError(f"s must be even and at least t (got s={s}, t={t})")
    outer = s * k // 2 + 1
    sizes = [outer] + [k] * s + [outer]
    layers, nxt = [], 0
    for size in sizes:
        layers.append(tuple(range(nxt, nxt + size)))
        nxt += size
    edges = [(u, v) for a, b in zip(layers, layers[1:]) for u in a for v in b]
    return LayeredGraph(Graph.from_edges(nxt, edges), tuple(layers))


def subdivided_bistar(k: int) -> Graph:
    """Bi-star with both centres of degree ``k + 1``, each pendant edge
    subdivided twice. Centres are 0 and 1; ``n = 2 + 6k``."""
    if k < 3:
        raise ValueError("k must be at least 3")
    edges = [(0, 1)]
    nxt = 2
    for centre in (0, 1):
        for _ in range(k):
            edges += [(centre, nxt), (nxt, nxt + 1), (nxt + 1, nxt + 2)]
            nxt += 3
    return Graph.from_edges(nxt, edges)


def random_matched_tree(half_n: int, seed: int) -> tuple[Graph, Matching]:
    """Tree on ``2 * half_n`` vertices grown one matched pair at a time.

    Each new pair hangs off a uniformly chosen existing vertex by a single
    non-matching edge; the final labels are shuffled.
    """
    if half_n < 1:
        raise ValueError("half_n must be at least 1")
    rng = random.Random(seed)
    n = 2 * half_n
    pairs = [(0, 1)]
    edges = [(0, 1)]
    for i in range(1, half_n):
        a, b = 2 * i, 2 * i + 1
        if rng.random() < 0.5:
            a, b = b, a
        edges += [(rng.randrange(2 * i), a), (a, b)]
        pairs.append((a, b))
    relabel = list(range(n))
    rng.shuffle(relabel)
    T = Graph.from_edges(n, [(relabel[u], relabel[v]) for u, v in edges])
    return T, Matching.from_pairs(n, [(relabel[u], relabel[v]) for u, v in pairs])


def random_bipartite_with_pm(half_n: int, extra_edges: int, seed: int) -> tuple[Graph, Matching]:
    """A random matched tree plus up to ``extra_edges`` new edges between the
    two colour classes."""
    T, M = random_matched_tree(half_n, seed)
    rng = random.Random(f"extra-{seed}")
    xs, ys = bipartition(T).parts()
    present = T.edge_set()
    spare = [(min(u, v), max(u, v)) for u in xs for v in ys if (min(u, v), max(u, v)) not in present]
    rng.shuffle(spare)
    return T.union(spare[:extra_edges]), M


# -- exhaustive enumerations ---------------------------------------------------------

def all_matched_trees(n: int) -> Iterator[tuple[Graph, Matching]]:
    """Every tree on ``n`` vertices with a perfect matching, one per
    isomorphism class."""
    if n % 2 or n < 2:
        return
    if n == 2:
        yield Graph.from_edges(2, [(0, 1)]), Matching.from_pairs(2, [(0, 1)])
        return
    import networkx as nx

    for t in nx.nonisomorphic_trees(n):
        T = Graph.from_edges(n, t.edges())
        try:
            M = tree_perfect_matching(T)
        except MatchingError:
            continue
        yield T, M


def _column_sorted(rows: tuple[int, ...], k: int) -> tuple[int, ...]:
    # rows are k-bit masks, column 0 is the most significant bit
    cols = sorted(
        (tuple((r >> (k - 1 - j)) & 1 for r in rows) for j in range(k)), reverse=True
    )
    return tuple(
        sum(cols[j][i] << (k - 1 - j) for j in range(k)) for i in range(len(rows))
    )


def _transpose(rows: tuple[int, ...], k: int) -> tuple[int, ...]:
    return tuple(
        sum(((rows[i] >> (k - 1 - j)) & 1) << (k - 1 - i) for i in range(k)) for j in range(k)
    )


def canonical_biadjacency(rows: tuple[int, ...], k: int) -> tuple[int, ...]:
    """Largest row-major reading over all row and column permutations and
    the side swap; equal exactly for isomorphic balanced bipartite graphs.

    For a fixed row order the best column order is the column-sorted one, and
    the first i rows of that only depend on the first i rows chosen, so row
    orders are searched depth-first with prefix pruning.
    """
    best: list = [()]

    def search(mat: tuple[int, ...], used: int, prefix: tuple[int, ...]) -> None:
        i = len(prefix)
        if i == k:
            best[0] = max(best[0], _column_sorted(prefix, k))
            return
        options = {}
        for j in range(k):
            if not (used >> j) & 1 and mat[j] not in options:
                options[mat[j]] = j
        ranked = sorted(
            ((_column_sorted(prefix + (r,), k), j) for r, j in options.items()), reverse=True
        )
        for cand, j in ranked:
            if cand < best[0][: i + 1]:
                break
            search(mat, used | (1 << j), prefix + (mat[j],))

    for mat in (rows, _transpose(rows, k)):
        search(mat, 0, ())
    return best[0]


def _doubly_sorted(k: int) -> Iterator[tuple[int, ...]]:
    # rows non-increasing and columns non-increasing: every class has such a form
    def cols_ok(rows: list[int]) -> bool:
        cols = [tuple((r >> (k - 1 - j)) & 1 for r in rows) for j in range(k)]
        return all(cols[j] >= cols[j + 1] for j in range(k - 1))

    def extend(rows: list[int]) -> Iterator[tuple[int, ...]]:
        if len(rows) == k:
            yield tuple(rows)
            return
        top = rows[-1] if rows else (1 << k) - 1
        for r in range(top, 0, -1):
            rows.append(r)
            if cols_ok(rows):
                yield from extend(rows)
            rows.pop()

    yield from extend([])


def biadjacency_graph(rows: tuple[int, ...], k: int) -> Graph:
    """X = ``0..k-1``, Y = ``k..2k-1``; bit ``k-1-j`` of row ``i`` joins i to k+j."""
    return Graph.from_edges(
        2 * k, [(i, k + j) for i in range(k) for j in range(k) if (rows[i] >> (k - 1 - j)) & 1]
    )


def all_bipartite_with_pm(n: int) -> Iterator[tuple[Graph, Matching]]:
    """Every connected bipartite graph on ``n`` vertices with a perfect
    matching, one per isomorphism class."""
    if n % 2 or n < 2:
        return
    k = n // 2
    seen = set()
    for rows in _doubly_sorted(k):
        G = biadjacency_graph(rows, k)
        if not is_connected(G):
            continue
        M = maximum_matching(G)
        if not M.is_perfect():
            continue
        key = canonical_biadjacency(rows, k)
        if key in seen:
            continue
        seen.add(key)
        yield G, M
