"""Independent checkers and exhaustive oracles.

Nothing here calls into the constructors: distances come from this module's
own breadth-first search and crossing counts from its own side labelling.
"""

from __future__ import annotations

import json
import weakref
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .graph_core import Graph, GraphError
from .ham_construct import HamCycle, HamPath

DEFAULT_ORACLE_LIMIT = 20


class OracleRefusal(GraphError):
    """Instance is above the oracle's size bound."""


@dataclass
class Report:
    ok: bool = True
    failures: list[str] = field(default_factory=list)
    checks: dict = field(default_factory=dict)

    def fail(self, message: str) -> None:
        self.ok = False
        self.failures.append(message)

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict:
        return {"ok": self.ok, "failures": self.failures, "checks": self.checks}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


# balls are cached per graph so repeated certificates over one host stay linear
_ball_cache: "weakref.WeakKeyDictionary[Graph, dict]" = weakref.WeakKeyDictionary()


def _balls(G: Graph) -> dict:
    per_graph = _ball_cache.get(G)
    if per_graph is None:
        per_graph = _ball_cache[G] = {}
    return per_graph


def _ball(G: Graph, u: int, cap: int, cache: dict | None = None) -> dict[int, int]:
    if cache is None:
        cache = _balls(G)
    key = (u, cap)
    ball = cache.get(key)
    if ball is None:
        ball = {u: 0}
        queue = deque([u])
        while queue:
            v = queue.popleft()
            d = ball[v]
            if d == cap:
                continue
            for w in G.adj[v]:
                if w not in ball:
                    ball[w] = d + 1
                    queue.append(w)
        cache[key] = ball
    return ball


def _seq_of(P) -> tuple[int, ...]:
    return tuple(P.seq) if isinstance(P, (HamPath, HamCycle)) else tuple(P)


def _check_cover(G: Graph, seq: Sequence[int], report: Report) -> None:
    seen = set()
    for v in seq:
        if not 0 <= v < G.n:
            report.fail(f"vertex {v} out of range")
        elif v in seen:
            report.fail(f"vertex {v} repeated")
        seen.add(v)
    missing = [v for v in range(G.n) if v not in seen]
    if missing:
        report.fail(f"vertices missing: {missing[:10]}{' ...' if len(missing) > 10 else ''}")


def _check_steps(G: Graph, pairs: Iterable[tuple[int, int]], t: int, report: Report) -> None:
    bad = 0
    cache = _balls(G)
    for u, v in pairs:
        if not (0 <= u < G.n and 0 <= v < G.n):
            continue
        d = _ball(G, u, t, cache).get(v)
        if d is None or d % 2 == 0:
            bad += 1
            if bad <= 10:
                shown = "> %d" % t if d is None else str(d)
                report.fail(f"d({u},{v}) = {shown} is not odd and <= {t}")
    report.checks["bad_steps"] = bad


def verify_bipower_path(G: Graph, P, x: int, y: int, t: int = 3) -> Report:
    """Check that ``P`` is a Hamiltonian (x, y)-path of the t-th bi-power of ``G``."""
    seq = _seq_of(P)
    report = Report()
    if not seq:
        report.fail("empty path")
        return report
    if seq[0] != x or seq[-1] != y:
        report.fail(f"endpoints are ({seq[0]}, {seq[-1]}), expected ({x}, {y})")
    _check_cover(G, seq, report)
    _check_steps(G, zip(seq, seq[1:]), t, report)
    return report


def verify_bipower_cycle(G: Graph, C, t: int = 3) -> Report:
    """Check that ``C`` (read cyclically) is a Hamiltonian cycle of the t-th bi-power."""
    seq = _seq_of(C)
    report = Report()
    if len(seq) < 3:
        report.fail("a cycle needs at least 3 vertices")
        return report
    _check_cover(G, seq, report)
    _check_steps(G, zip(seq, seq[1:] + seq[:1]), t, report)
    return report


# -- crossings -------------------------------------------------------------------

def _tree_side(T: Graph, e: tuple[int, int]) -> list[bool]:
    u, v = e
    if not T.has_edge(u, v):
        raise GraphError(f"{e} is not a tree edge")
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


def crossing_count(T: Graph, F: Sequence[int], e: tuple[int, int], cyclic: bool = False) -> int:
    """How often the walk ``F`` switches between the two sides of ``T - e``."""
    side = _tree_side(T, e)
    seq = _seq_of(F)
    if isinstance(F, HamCycle):
        cyclic = True
    pairs = zip(seq, seq[1:] + seq[:1]) if cyclic else zip(seq, seq[1:])
    return sum(1 for a, b in pairs if side[a] != side[b])


_root_cache: "weakref.WeakKeyDictionary[Graph, tuple]" = weakref.WeakKeyDictionary()


def _rooting(T: Graph) -> tuple[list[int], list[int]]:
    cached = _root_cache.get(T)
    if cached is None:
        parent = [-1] * T.n
        depth = [-1] * T.n
        for s in range(T.n):
            if depth[s] != -1:
                continue
            depth[s] = 0
            queue = deque([s])
            while queue:
                a = queue.popleft()
                for b in T.adj[a]:
                    if depth[b] == -1:
                        depth[b] = depth[a] + 1
                        parent[b] = a
                        queue.append(b)
        cached = (parent, depth)
        _root_cache[T] = cached
    return cached


def all_crossing_counts(T: Graph, F, cyclic: bool = False) -> dict[tuple[int, int], int]:
    """Crossing count of every edge of the forest ``T`` at once.

    A step ``a -> b`` of the walk crosses exactly the tree edges on the
    ``a``-``b`` tree path, so each step is charged to that path.
    """
    parent, depth = _rooting(T)
    seq = _seq_of(F)
    if isinstance(F, HamCycle):
        cyclic = True
    hits = [0] * T.n  # hits[c] counts crossings of edge (c, parent[c])
    pairs = zip(seq, seq[1:] + seq[:1]) if cyclic else zip(seq, seq[1:])
    for a, b in pairs:
        while depth[a] > depth[b]:
            hits[a] += 1
            a = parent[a]
        while depth[b] > depth[a]:
            hits[b] += 1
            b = parent[b]
        while a != b:
            if parent[a] == -1:
                raise GraphError("walk steps between different tree components")
            hits[a] += 1
            hits[b] += 1
            a, b = parent[a], parent[b]
    return {
        (min(c, parent[c]), max(c, parent[c])): hits[c] for c in range(T.n) if parent[c] != -1
    }


def verify_double_crossing(T: Graph, F, matching_mate: Sequence[int], cyclic: bool = False) -> Report:
    """Every non-matching edge of ``T`` is crossed exactly twice by ``F``."""
    report = Report()
    counts = all_crossing_counts(T, F, cyclic)
    off = {e: c for e, c in counts.items() if matching_mate[e[0]] != e[1] and c != 2}
    report.checks["non_matching_edges"] = sum(1 for e in counts if matching_mate[e[0]] != e[1])
    for e, c in sorted(off.items())[:10]:
        report.fail(f"non-matching tree edge {e} crossed {c} times")
    if off:
        report.checks["bad_edges"] = len(off)
    return report


# -- exhaustive oracles ------------------------------------------------------------

def _masks(G: Graph) -> list[int]:
    return [sum(1 << w for w in G.adj[v]) for v in range(G.n)]


def _sides(G: Graph) -> list[int] | None:
    side = [-1] * G.n
    for s in range(G.n):
        if side[s] != -1:
            continue
        side[s] = 0
        stack = [s]
        while stack:
            v = stack.pop()
            for w in G.adj[v]:
                if side[w] == -1:
                    side[w] = 1 - side[v]
                    stack.append(w)
                elif side[w] == side[v]:
                    return None
    return side


class _Search:
    """Lexicographically first Hamiltonian path search over bitmasks.

    ``end`` is the vertex the walk must finish at (for cycles: adjacent to the
    already visited start). Pruning levels: 0 none, 1 connectivity and
    degree, 2 adds bipartite parity and forced-edge overload.
    """

    def __init__(self, G: Graph, prune: int):
        self.n = G.n
        self.nbr = _masks(G)
        self.prune = prune
        self.side = _sides(G) if prune >= 2 else None
        self.side_mask = 0
        if self.side is not None:
            self.side_mask = sum(1 << v for v in range(G.n) if self.side[v] == 1)

    def _dead(self, c: int, remaining: int, end: int, closing: bool) -> bool:
        # closing: end is already on the walk (cycle start); otherwise end is in remaining
        nbr = self.nbr
        cbit = 1 << c
        endbit = 1 << end
        live = remaining | cbit | endbit
        # connectivity of the live set from c
        reach = cbit
        frontier = cbit
        while frontier:
            v = (frontier & -frontier).bit_length() - 1
            frontier &= frontier - 1
            new = nbr[v] & live & ~reach
            reach |= new
            frontier |= new
        if reach != live:
            return True
        cap: dict[int, int] = {}
        rem = remaining
        while rem:
            w = (rem & -rem).bit_length() - 1
            rem &= rem - 1
            avail = nbr[w] & live & ~(1 << w)
            deg = bin(avail).count("1")
            need = 1 if (w == end and not closing) else 2
            if deg < need:
                return True
            if self.prune >= 2 and deg == need == 2:
                while avail:
                    u = (avail & -avail).bit_length() - 1
                    avail &= avail - 1
                    cap[u] = cap.get(u, 0) + 1
        if self.prune >= 2:
            for u, k in cap.items():
                limit = 2
                if u == c:
                    limit = 1 if c != end else 2
                elif u == end:
                    limit = 1
                if k > limit:
                    return True
            if self.side is not None:
                r = bin(remaining).count("1")
                opp = bin(remaining & (self.side_mask if self.side[c] == 0 else ~self.side_mask)).count("1")
                if opp != (r + 1) // 2:
                    return True
                final = r + 1 if closing else r
                if (self.side[c] ^ (final & 1)) != self.side[end]:
                    return True
        return False

    def run(self, start: int, end: int, closing: bool) -> list[int] | None:
        n, nbr = self.n, self.nbr
        full = (1 << n) - 1
        path = [start]
        visited = 1 << start

        def candidates(c: int, visited: int) -> list[int]:
            remaining = full & ~visited
            opts = nbr[c] & remaining
            if not closing and remaining != (1 << end):
                opts &= ~(1 << end)
            out = []
            while opts:
                v = (opts & -opts).bit_length() - 1
                opts &= opts - 1
                out.append(v)
            return out

        def done(c: int, visited: int) -> bool:
            if visited != full:
                return False
            return (nbr[c] >> end) & 1 == 1 if closing else c == end

        if done(start, visited):
            return path
        iters = [iter(candidates(start, visited))]
        while iters:
            try:
                v = next(iters[-1])
            except StopIteration:
                iters.pop()
                visited &= ~(1 << path.pop())
                continue
            visited |= 1 << v
            path.append(v)
            if done(v, visited):
                return path
            remaining = full & ~visited
            if remaining and not (self.prune and self._dead(v, remaining, end, closing)):
                iters.append(iter(candidates(v, visited)))
            else:
                visited &= ~(1 << path.pop())
        return None


def brute_ham_path(
    G: Graph, x: int, y: int, limit: int = DEFAULT_ORACLE_LIMIT, prune: int = 2
) -> HamPath | None:
    """Lexicographically smallest Hamiltonian (x, y)-path of ``G``, or None."""
    if G.n > limit:
        raise OracleRefusal(f"{G.n} vertices exceeds the oracle bound {limit}")
    if x == y:
        return HamPath((x,), G) if G.n == 1 else None
    seq = _Search(G, prune).run(x, y, closing=False)
    return None if seq is None else HamPath(tuple(seq), G)


def brute_ham_cycle(G: Graph, limit: int = DEFAULT_ORACLE_LIMIT, prune: int = 2) -> HamCycle | None:
    """Lexicographically smallest Hamiltonian cycle through 0 of ``G``, or None."""
    if G.n > limit:
        raise OracleRefusal(f"{G.n} vertices exceeds the oracle bound {limit}")
    if G.n < 3:
        return None
    seq = _Search(G, prune).run(0, 0, closing=True)
    return None if seq is None else HamCycle(tuple(seq), G)


def independence_nonham_witness(G: Graph, S: Iterable[int]) -> Report:
    """An independent set with more than half the vertices rules out a
    Hamiltonian cycle: around a cycle no two of its members are consecutive."""
    S = sorted(set(S))
    report = Report()
    members = set(S)
    clash = next(((u, v) for u in S for v in G.adj[u] if v in members), None)
    if clash:
        report.fail(f"set is not independent: edge {clash}")
    report.checks["size"] = len(S)
    report.checks["n"] = G.n
    if 2 * len(S) <= G.n:
        report.fail(f"|S| = {len(S)} is not more than n/2 = {G.n / 2}")
    return report
