"""Finite simple graphs on dense integer ids, plus traversal and I/O helpers."""

from __future__ import annotations

import hashlib
import json
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

X, Y = 0, 1


class GraphError(ValueError):
    pass


class ParseError(GraphError):
    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class NotBipartiteError(GraphError):
    """Raised with an odd closed walk as evidence."""

    def __init__(self, witness: list[int]):
        self.witness = witness
        super().__init__(f"not bipartite: odd closed walk {witness}")


class Graph:
    """Immutable undirected simple graph on vertices ``0..n-1``.

    Neighbor lists are sorted ascending and every traversal in the package
    follows that order, which is what makes all constructions reproducible.
    """

    __slots__ = ("n", "adj", "_nbr_sets", "_m", "_hash", "__weakref__")

    def __init__(self, n: int, adj: Sequence[Sequence[int]]):
        self.n = n
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(a) for a in adj)
        self._nbr_sets = None
        self._m = sum(len(a) for a in self.adj) // 2
        self._hash = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if n < 0:
            raise GraphError("vertex count must be nonnegative")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) has id out of range [0, {n})")
            if u == v:
                raise GraphError(f"loop edge at {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, [sorted(s) for s in nbrs])

    @property
    def m(self) -> int:
        return self._m

    def __len__(self) -> int:
        return self.n

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        if self._nbr_sets is None:
            self._nbr_sets = tuple(frozenset(a) for a in self.adj)
        return v in self._nbr_sets[u]

    def edges(self) -> list[tuple[int, int]]:
        """All edges as ``(u, v)`` with ``u < v``, lexicographically sorted."""
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self.adj))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def union(self, edges: Iterable[tuple[int, int]]) -> "Graph":
        return Graph.from_edges(self.n, [*self.edges(), *edges])

    def induced_subgraph(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph relabelled to dense ids in ascending order of the
        original ids. Returns the subgraph and the new-id -> old-id table."""
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        adj = [[index[w] for w in self.adj[v] if w in index] for v in keep]
        return Graph(len(keep), adj), keep


def edge_key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


# -- traversal -----------------------------------------------------------------

def bfs_distance(G: Graph, u: int, cap: int) -> dict[int, int]:
    """Unweighted distances from ``u`` to every vertex within ``cap`` hops."""
    if not 0 <= u < G.n:
        raise GraphError(f"vertex {u} out of range")
    dist = {u: 0}
    frontier = [u]
    d = 0
    while frontier and d < cap:
        d += 1
        nxt = []
        for v in frontier:
            for w in G.adj[v]:
                if w not in dist:
                    dist[w] = d
                    nxt.append(w)
        frontier = nxt
    return dist


@dataclass(frozen=True)
class Bipartition:
    side: tuple[int, ...]

    def part(self, v: int) -> int:
        return self.side[v]

    def parts(self) -> tuple[list[int], list[int]]:
        xs = [v for v, s in enumerate(self.side) if s == X]
        ys = [v for v, s in enumerate(self.side) if s == Y]
        return xs, ys

    def is_valid_for(self, G: Graph) -> bool:
        return len(self.side) == G.n and all(self.side[u] != self.side[v] for u, v in G.edges())


def bipartition(G: Graph) -> Bipartition:
    """2-colour ``G``; the smallest vertex of each component gets side X."""
    if G.n == 0:
        raise GraphError("bipartition of the empty graph")
    side = [-1] * G.n
    parent = [-1] * G.n
    for s in range(G.n):
        if side[s] != -1:
            continue
        side[s] = X
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in G.adj[v]:
                if side[w] == -1:
                    side[w] = 1 - side[v]
                    parent[w] = v
                    queue.append(w)
                elif side[w] == side[v]:
                    raise NotBipartiteError(_odd_walk(parent, v, w))
    return Bipartition(tuple(side))


def _odd_walk(parent: list[int], u: int, v: int) -> list[int]:
    # u, v adjacent with equal BFS parity: tree path u..lca..v closes an odd cycle
    up = [u]
    while parent[up[-1]] != -1:
        up.append(parent[up[-1]])
    on_up = {x: i for i, x in enumerate(up)}
    down = [v]
    while down[-1] not in on_up:
        down.append(parent[down[-1]])
    lca = down[-1]
    return up[: on_up[lca] + 1] + down[-2::-1]


def connected_components(G: Graph, exclude: Iterable[int] = ()) -> list[list[int]]:
    """Components of ``G - exclude``, each sorted, ordered by smallest member."""
    seen = [False] * G.n
    for v in exclude:
        seen[v] = True
    comps = []
    for s in range(G.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        stack = [s]
        while stack:
            v = stack.pop()
            for w in G.adj[v]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def is_connected(G: Graph) -> bool:
    return G.n > 0 and len(connected_components(G)) == 1


def is_tree(G: Graph) -> bool:
    return G.n > 0 and G.m == G.n - 1 and is_connected(G)


# -- serialization -------------------------------------------------------------

def _int_token(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer vertex id, got {tok!r}", lineno) from None


def parse_graph(text: str) -> Graph:
    """Parse the ``n m`` header + ``u v`` lines edge-list format.

    Duplicate edges are merged. Blank trailing lines are tolerated.
    """
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise ParseError("empty document", 1)
    head = lines[0].split()
    if len(head) != 2:
        raise ParseError("header must be 'n m'", 1)
    n, m = (_int_token(t, 1) for t in head)
    if n < 0 or m < 0:
        raise ParseError("n and m must be nonnegative", 1)
    body = lines[1:]
    if len(body) != m:
        raise ParseError(f"header announces {m} edges, found {len(body)} lines", 1)
    edges = []
    for i, line in enumerate(body, start=2):
        toks = line.split()
        if len(toks) != 2:
            raise ParseError("edge line must be 'u v'", i)
        u, v = (_int_token(t, i) for t in toks)
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"vertex id out of range [0, {n})", i)
        if u == v:
            raise ParseError(f"loop edge at vertex {u}", i)
        edges.append((u, v))
    return Graph.from_edges(n, edges)


def parse_graph_json(text: str) -> Graph:
    try:
        doc = json.loads(text)
        n = doc["n"]
        edges = [tuple(e) for e in doc["edges"]]
    except (ValueError, KeyError, TypeError) as exc:
        raise ParseError(f"bad JSON graph: {exc}") from None
    if not isinstance(n, int) or any(
        len(e) != 2 or not all(isinstance(x, int) for x in e) for e in edges
    ):
        raise ParseError("JSON graph needs integer 'n' and integer pairs in 'edges'")
    try:
        return Graph.from_edges(n, edges)
    except GraphError as exc:
        raise ParseError(str(exc)) from None


def load_graph(text: str) -> Graph:
    """Accept either the edge-list or the JSON form."""
    if text.lstrip().startswith("{"):
        return parse_graph_json(text)
    return parse_graph(text)


def serialize(G: Graph) -> str:
    edges = G.edges()
    out = [f"{G.n} {len(edges)}"]
    out.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(out) + "\n"


def to_json(G: Graph) -> str:
    return json.dumps({"n": G.n, "edges": [list(e) for e in G.edges()]})


def to_dot(G: Graph, name: str = "G") -> str:
    out = [f"graph {name} {{"]
    out.extend(f"  {v};" for v in range(G.n) if not G.adj[v])
    out.extend(f"  {u} -- {v};" for u, v in G.edges())
    out.append("}")
    return "\n".join(out) + "\n"


def graph_hash(G: Graph) -> str:
    """SHA-256 of the canonical edge-list serialization."""
    return hashlib.sha256(serialize(G).encode()).hexdigest()


# -- small named graphs used across tests and the CLI ----------------------------

def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])
