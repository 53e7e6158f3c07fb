"""Infinite locally finite graphs given by a neighbor oracle, and their
matching-saturated finite balls."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Hashable

from ..graph_core import Graph, GraphError
from ..matching import Matching

Vertex = Hashable


class OracleError(GraphError):
    """The neighbor or mate oracle contradicted itself."""


@dataclass(frozen=True)
class LazyGraph:
    """``neighbors(v)`` must return a finite collection of mutually comparable
    vertices; ``mate`` is optional and, when present, an involution along
    edges."""

    name: str
    neighbors: Callable[[Vertex], list]
    base: Vertex
    mate: Callable[[Vertex], Vertex] | None = None


def double_ray() -> LazyGraph:
    """The integers, ``i ~ i+1``, matched as ``(2i, 2i+1)``."""
    return LazyGraph(
        "double-ray",
        lambda i: [i - 1, i + 1],
        0,
        lambda i: i + 1 if i % 2 == 0 else i - 1,
    )


def ladder() -> LazyGraph:
    """``Z x {0, 1}`` with rails and rungs; the rungs are the matching."""

    def nbrs(v):
        i, j = v
        return [(i - 1, j), (i, 1 - j), (i + 1, j)]

    return LazyGraph("ladder", nbrs, (0, 0), lambda v: (v[0], 1 - v[1]))


def matched_binary_tree() -> LazyGraph:
    """Rooted binary tree with every node ``w`` blown up into the matched
    edge ``(w, 0) - (w, 1)``; the parent's ``1``-end meets the child's
    ``0``-end."""

    def nbrs(v):
        w, s = v
        if s == 0:
            return [(w, 1)] + ([(w[:-1], 1)] if w else [])
        return [(w, 0), (w + "0", 0), (w + "1", 0)]

    return LazyGraph("matched-tree", nbrs, ("", 0), lambda v: (v[0], 1 - v[1]))


FAMILIES: dict[str, Callable[[], LazyGraph]] = {
    "double-ray": double_ray,
    "ladder": ladder,
    "matched-tree": matched_binary_tree,
}


def jsonable(v: Vertex):
    return [jsonable(x) for x in v] if isinstance(v, tuple) else v


@dataclass(frozen=True)
class Truncation:
    """Finite induced piece of a lazy graph.

    ``labels[i]`` is the lazy vertex behind dense id ``i``; ``boundary`` lists
    the ids that still have neighbors outside the piece.
    """

    family: str
    radius: int
    graph: Graph
    matching: Matching | None
    labels: tuple
    boundary: tuple[int, ...]

    @cached_property
    def index(self) -> dict:
        return {v: i for i, v in enumerate(self.labels)}


def truncate_saturated(L: LazyGraph, r: int) -> Truncation:
    """Ball of radius ``r`` around the base, closed under the mate oracle.

    Ids follow breadth-first order from the base with neighbors visited in
    sorted order. Every oracle answer touched is checked for symmetry.
    """
    if r < 0:
        raise ValueError("radius must be nonnegative")
    answers: dict = {}

    def ask(v):
        if v not in answers:
            answers[v] = tuple(sorted(set(L.neighbors(v))))
            if v in answers[v]:
                raise OracleError(f"oracle reports a loop at {v!r}")
        return answers[v]

    dist = {L.base: 0}
    queue = deque([L.base])
    while queue:
        v = queue.popleft()
        if dist[v] == r:
            continue
        for w in ask(v):
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    members = set(dist)
    if L.mate is not None:
        for v in list(members):
            m = L.mate(v)
            if m not in ask(v):
                raise OracleError(f"mate({v!r}) = {m!r} is not a neighbor")
            if L.mate(m) != v:
                raise OracleError(f"mate is not an involution at {v!r}")
            members.add(m)

    for v in list(members):
        for w in ask(v):
            if v not in ask(w):
                raise OracleError(f"{w!r} is a neighbor of {v!r} but not conversely")

    order = [L.base]
    ids = {L.base: 0}
    queue = deque([L.base])
    while queue:
        v = queue.popleft()
        for w in answers[v]:
            if w in members and w not in ids:
                ids[w] = len(order)
                order.append(w)
                queue.append(w)
    adj = [sorted(ids[w] for w in answers[v] if w in members) for v in order]
    boundary = tuple(i for i, v in enumerate(order) if any(w not in members for w in answers[v]))
    M = None
    if L.mate is not None:
        M = Matching(tuple(ids[L.mate(v)] for v in order))
    return Truncation(L.name, r, Graph(len(order), adj), M, tuple(order), boundary)
