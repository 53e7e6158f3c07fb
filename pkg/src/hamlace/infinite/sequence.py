"""Nested subtrees of a lifted tree, a Hamiltonian cycle of the cube bi-power
of each, and the pigeonhole extraction of an agreeing subsequence."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ..bipower import bipower
from ..graph_core import Graph, GraphError, bfs_distance, edge_key
from ..ham_construct import ham_cycle
from ..verify import verify_bipower_cycle, verify_double_crossing
from .ends import _side_of
from .lazy import LazyGraph, Truncation, truncate_saturated
from .trees import RootedTree, extend_normal_tree, lift_tree, matched_quotient


LOOKAHEAD = 4


@dataclass
class CycleSequence:
    """All ids are those of ``ambient``, a truncation ``LOOKAHEAD`` beyond the
    last radius whose lifted tree ``tree`` extends every ``T_i``. Around
    ``V(T_last)`` the cube bi-power of ``tree`` is therefore exact.

    ``vertex_sets[i]`` is ``V(T_i)``, ``tree_edges[i]`` is ``E(T_i)`` and
    ``cycles[i]`` is ``C_i``. ``steps`` holds the per-step check results.
    """

    family: str
    radii: tuple[int, ...]
    ambient: Truncation
    tree: Graph
    vertex_sets: list[tuple[int, ...]]
    tree_edges: list[tuple[tuple[int, int], ...]]
    cycles: list[tuple[int, ...]]
    steps: list[dict] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.cycles)

    @property
    def ok(self) -> bool:
        return all(s["cond1"] and s["cond2"] and s["normal"] and s["nested"] for s in self.steps)


def _pair_key(labels, u: int, v: int):
    a, b = labels[u], labels[v]
    return (a, b) if a <= b else (b, a)


class _Lifter:
    """Keeps the quotient tree and lifting edges, keyed by lazy labels so
    they survive re-numbering between radii."""

    def __init__(self) -> None:
        self.q_parent: dict = {}  # pair key -> parent pair key, None at the root
        self.q_depth: dict = {}
        self.lifted: dict = {}  # (child key, parent key) -> lazy edge

    def grow(self, tr: Truncation) -> tuple[Graph, bool]:
        G, M, labels = tr.graph, tr.matching, tr.labels
        pairs = M.pairs()
        keys = [_pair_key(labels, u, v) for u, v in pairs]
        qid = {k: i for i, k in enumerate(keys)}
        Q = matched_quotient(G, M)
        root = qid[_pair_key(labels, 0, M.mate[0])]

        keep = [qid[k] for k in self.q_parent]
        old = None
        if keep:
            parent, depth = [-1] * Q.n, [-1] * Q.n
            for k, p in self.q_parent.items():
                parent[qid[k]] = -1 if p is None else qid[p]
                depth[qid[k]] = self.q_depth[k]
            old = RootedTree(root, tuple(parent), tuple(depth))
        QT = extend_normal_tree(Q, old, keep, root)
        normal = not QT.normality_violations(Q)

        choice = {}
        for c, p in enumerate(QT.parent):
            if p != -1 and (keys[c], keys[p]) in self.lifted:
                a, b = self.lifted[(keys[c], keys[p])]
                choice[edge_key(c, p)] = (tr.index[a], tr.index[b])
        T = lift_tree(G, M, QT.graph(), lambda i, j: choice.get((i, j)) or _smallest(G, pairs, i, j))
        for c, p in enumerate(QT.parent):
            self.q_parent[keys[c]] = None if p == -1 else keys[p]
            self.q_depth[keys[c]] = QT.depth[c]
            if p != -1 and (keys[c], keys[p]) not in self.lifted:
                u, v = _crossing_edge(T, pairs[c], pairs[p])
                self.lifted[(keys[c], keys[p])] = (labels[u], labels[v])
        return T, normal


def _usable(L: LazyGraph, r: int) -> tuple[int, Truncation]:
    tr = truncate_saturated(L, r)
    while tr.graph.n < 4:
        r += 1
        tr = truncate_saturated(L, r)
    return r, tr


def cycle_sequence(L: LazyGraph, schedule: Sequence[int]) -> CycleSequence:
    """``C_i`` for each radius: a Hamiltonian cycle of the cube bi-power of the
    lifted tree of the ``r_i``-truncation.

    Quotient-tree structure and lifting edges chosen at smaller radii are kept,
    so the trees are nested. A radius whose truncation has fewer than four
    vertices is pushed up until it has four; radii overtaken that way are
    dropped.
    """
    schedule = list(schedule)
    if not schedule or any(a >= b for a, b in zip(schedule, schedule[1:])):
        raise ValueError("schedule must be a nonempty strictly increasing list of radii")
    if L.mate is None:
        raise GraphError("the lazy graph needs a matching oracle")

    lifter = _Lifter()
    radii, truncs, trees, cycles, steps = [], [], [], [], []
    prev_edges: set = set()
    for r in schedule:
        if radii and r <= radii[-1]:
            continue
        r, tr = _usable(L, r)
        T, normal = lifter.grow(tr)
        M = tr.matching
        edges = {_pair_key(tr.labels, u, v) for u, v in T.edges()}
        nested = prev_edges <= edges
        prev_edges = edges

        C = ham_cycle(T, M)
        cond1 = verify_bipower_cycle(T, C.seq, 3)
        cond2 = verify_double_crossing(T, C.seq, M.mate, cyclic=True)
        radii.append(r)
        truncs.append(tr)
        trees.append(T)
        cycles.append(C.seq)
        steps.append({
            "radius": r,
            "n": tr.graph.n,
            "cond1": cond1.ok,
            "cond2": cond2.ok,
            "normal": normal,
            "nested": nested,
            "failures": cond1.failures + cond2.failures,
        })

    ambient = truncate_saturated(L, radii[-1] + LOOKAHEAD)
    tree, normal = lifter.grow(ambient)
    amb_edges = {_pair_key(ambient.labels, u, v) for u, v in tree.edges()}
    if not normal or not prev_edges <= amb_edges:
        raise GraphError("look-ahead tree does not extend the last subtree")

    vertex_sets, tree_edges, mapped = [], [], []
    for tr, T, C in zip(truncs, trees, cycles):
        f = [ambient.index[lab] for lab in tr.labels]
        vertex_sets.append(tuple(sorted(f)))
        tree_edges.append(tuple(sorted(edge_key(f[u], f[v]) for u, v in T.edges())))
        mapped.append(tuple(f[v] for v in C))
    return CycleSequence(L.name, tuple(radii), ambient, tree, vertex_sets, tree_edges, mapped, steps)


def _smallest(G: Graph, pairs, i: int, j: int) -> tuple[int, int]:
    a, b = set(pairs[i]), set(pairs[j])
    return min(edge_key(u, v) for u in a for v in G.adj[u] if v in b)


def _crossing_edge(T: Graph, p1, p2) -> tuple[int, int]:
    return next(edge_key(u, v) for u in p1 for v in T.adj[u] if v in p2)


# -- stabilization ---------------------------------------------------------------

def cycle_edges(seq: Sequence[int]) -> frozenset[tuple[int, int]]:
    return frozenset(edge_key(a, b) for a, b in zip(seq, list(seq[1:]) + list(seq[:1])))


@dataclass
class Stabilization:
    windows: list[dict]
    diagonal: list[int]  # index of the first cycle of the chain at each stage
    stop: str

    @property
    def ok(self) -> bool:
        return bool(self.windows) and all(w["members"] for w in self.windows)


def extract_stable(
    host: Graph,
    tree: Graph,
    mate: Sequence[int],
    cycles: Sequence[Sequence[int]],
    boundary: Sequence[int] = (),
    margin: int = 2,
) -> Stabilization:
    """The nested pigeonhole chain on a finite list of cycles of ``host``.

    Each stage takes the first cycle of the current chain and lets ``S`` be
    the union of the matched pairs it meets. The later cycles of the chain are
    grouped by their trace on ``E``, the ``host``-edges leaving ``S``, and the
    largest group (earliest member on ties) becomes the next chain. Whether
    every kept cycle also covers ``S`` plus its ``host``-neighbourhood is
    recorded, not required. The chain stops early if ``S`` comes within
    ``margin`` tree steps of ``boundary``, past which ``host`` may lack edges.
    """
    edge_sets = [cycle_edges(c) for c in cycles]
    vsets = [set(c) for c in cycles]
    touch = set(boundary)
    chain = list(range(len(cycles)))
    windows: list[dict] = []
    diagonal: list[int] = []
    stop = "exhausted"
    while len(chain) > 1:
        first, later = chain[0], chain[1:]
        S = vsets[first] | {mate[v] for v in vsets[first]}
        near = set()
        for v in S:
            near.update(bfs_distance(tree, v, margin))
        if near & touch:
            stop = "boundary"
            break
        diagonal.append(first)
        S_plus = S.union(*(host.adj[v] for v in S))
        E = frozenset(edge_key(u, v) for u in S for v in host.adj[u] if v not in S)
        F = sorted(edge_key(u, v) for u in S for v in tree.adj[u] if v not in S)
        groups: dict = {}
        for j in later:
            groups.setdefault(edge_sets[j] & E, []).append(j)
        trace, members = max(groups.items(), key=lambda kv: (len(kv[1]), -kv[1][0]))
        per_f = {}
        for e in F:
            side = _side_of(tree, e)
            per_f[e] = sum(1 for a, b in trace if side[a] != side[b])
        windows.append({
            "first": first,
            "S": sorted(S),
            "E": sorted(E),
            "F": F,
            "classes": sorted((len(m) for m in groups.values()), reverse=True),
            "members": members,
            "trace": sorted(trace),
            "trace_per_F": [[a, b, c] for (a, b), c in per_f.items()],
            "members_cover_S_plus": all(S_plus <= vsets[j] for j in members),
        })
        chain = members
    if stop == "exhausted" and chain:
        diagonal.append(chain[0])
    return Stabilization(windows, diagonal, stop)


def stabilization_check(S: CycleSequence, margin: int = 2) -> Stabilization:
    if len(S) < 2:
        raise ValueError("need at least two cycles")
    host = bipower(S.tree, 3)
    return extract_stable(host, S.tree, S.ambient.matching.mate, S.cycles, S.ambient.boundary, margin)
