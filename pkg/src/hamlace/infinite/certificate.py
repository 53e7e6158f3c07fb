"""Bundled, re-checkable evidence for a Hamiltonian circle of the cube
bi-power of an infinite graph.

The certificate stores only finite raw data: the ambient truncation, its
lifted spanning tree, and each step's subtree and cycle. Every verdict is a
function of that data (``_evaluate``), so ``recheck`` recomputes it without
touching the lazy graph or any constructor.
"""

from __future__ import annotations

import hashlib
import json
from collections import deque
from typing import Sequence

from ..bipower import bipower
from ..graph_core import Graph, edge_key, graph_hash, is_tree
from ..matching import Matching
from ..verify import Report, verify_bipower_cycle, verify_double_crossing
from .ends import end_degree_bound, faithfulness_check, tree_cut_sizes
from .lazy import LazyGraph, jsonable
from .sequence import cycle_edges, cycle_sequence, extract_stable
from .trees import RootedTree, matched_quotient

FORMAT = "hamlace.infinite/1"


def _digest(doc: dict) -> str:
    body = {k: v for k, v in doc.items() if k != "digest"}
    return hashlib.sha256(json.dumps(body, sort_keys=True, separators=(",", ":")).encode()).hexdigest()


def infinite_certificate(L: LazyGraph, schedule: Sequence[int]) -> dict:
    S = cycle_sequence(L, schedule)
    amb = S.ambient
    raw = {
        "format": FORMAT,
        "family": L.name,
        "schedule": list(schedule),
        "radii": list(S.radii),
        "ambient": {
            "radius": amb.radius,
            "n": amb.graph.n,
            "edges": [list(e) for e in amb.graph.edges()],
            "matching": [list(p) for p in amb.matching.pairs()],
            "boundary": list(amb.boundary),
            "labels": [jsonable(v) for v in amb.labels],
            "hash": graph_hash(amb.graph),
        },
        "tree": {"edges": [list(e) for e in S.tree.edges()], "hash": graph_hash(S.tree)},
        "steps": [
            {
                "radius": r,
                "tree_edges": [list(e) for e in te],
                "cycle": list(c),
                "construction": {k: st[k] for k in ("cond1", "cond2", "normal", "nested")},
            }
            for r, te, c, st in zip(S.radii, S.tree_edges, S.cycles, S.steps)
        ],
    }
    raw["results"] = json.loads(json.dumps(_evaluate(raw)))
    raw["ok"] = raw["results"]["ok"]
    raw["digest"] = _digest(raw)
    return raw


def _rooted(T: Graph, root: int) -> RootedTree:
    parent, depth = [-1] * T.n, [-1] * T.n
    depth[root] = 0
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for w in T.adj[v]:
            if depth[w] == -1:
                parent[w], depth[w] = v, depth[v] + 1
                queue.append(w)
    return RootedTree(root, tuple(parent), tuple(depth))


def _evaluate(raw: dict) -> dict:
    amb = raw["ambient"]
    n = amb["n"]
    G = Graph.from_edges(n, [tuple(e) for e in amb["edges"]])
    M = Matching.from_pairs(n, [tuple(p) for p in amb["matching"]])
    T = Graph.from_edges(n, [tuple(e) for e in raw["tree"]["edges"]])
    boundary = set(amb["boundary"])
    checks: dict[str, bool] = {}
    out: dict = {"checks": checks}

    checks["hashes"] = graph_hash(G) == amb["hash"] and graph_hash(T) == raw["tree"]["hash"]
    checks["tree_spans"] = (
        is_tree(T)
        and all(G.has_edge(u, v) for u, v in T.edges())
        and all(T.has_edge(u, v) for u, v in M.pairs())
    )
    Q = matched_quotient(G, M)
    pairs = M.pairs()
    which = {v: i for i, p in enumerate(pairs) for v in p}
    QT = Graph.from_edges(Q.n, ((which[u], which[v]) for u, v in T.edges() if which[u] != which[v]))
    checks["normal_quotient_tree"] = QT.m == Q.n - 1 and not _rooted(QT, which[0]).normality_violations(Q)

    # conditions (1) and (2) at every step, plus nesting
    vsets, cycles, per_step = [], [], []
    prev: set = set()
    nested = True
    for step in raw["steps"]:
        edges = {edge_key(*e) for e in step["tree_edges"]}
        V = sorted({v for e in edges for v in e})
        sub, keep = T.induced_subgraph(V)
        new = {v: i for i, v in enumerate(keep)}
        in_tree = edges <= T.edge_set() and sub.m == len(edges) and is_tree(sub)
        seq = [new.get(v, -1) for v in step["cycle"]]
        mate = [new.get(M.mate[v], -1) for v in keep]
        c1 = in_tree and -1 not in seq and verify_bipower_cycle(sub, seq, 3).ok
        c2 = c1 and -1 not in mate and verify_double_crossing(sub, seq, mate, cyclic=True).ok
        nested = nested and prev <= edges
        prev = edges
        per_step.append({"radius": step["radius"], "n": len(V), "cond1": c1, "cond2": c2})
        vsets.append(set(V))
        cycles.append(step["cycle"])
    out["steps"] = per_step
    checks["conditions"] = all(s["cond1"] and s["cond2"] for s in per_step)
    checks["nested"] = nested

    host = bipower(T, 3)
    stab = extract_stable(host, T, M.mate, cycles, sorted(boundary))
    out["stabilization"] = {"stop": stab.stop, "diagonal": stab.diagonal, "windows": stab.windows}
    checks["stabilization"] = stab.ok

    # limit graph on the region covered by the last diagonal cycle
    diag = stab.diagonal
    R = sorted(vsets[diag[-1]]) if diag else []
    limit: dict = {"region_size": len(R)}
    if R and stab.windows:
        sub, keep = T.induced_subgraph(R)
        new = {v: i for i, v in enumerate(keep)}
        extra = {edge_key(new[a], new[b]) for j in diag for a, b in cycle_edges(cycles[j])}
        Gp = sub.union(extra)
        mate = [new[M.mate[v]] for v in keep]
        inner = set(stab.windows[-1]["S"])
        # window edges reaching past R belong to a region no later cycle certifies
        certified = {
            edge_key(new[a], new[b]) for w in stab.windows for a, b in w["F"] if a in new and b in new
        }
        outer = {
            (a, b) for a, b in sub.edges()
            if mate[a] != b and not (keep[a] in inner and keep[b] in inner)
        }
        F = certified | outer
        frontier = [
            new[v] for v in R if v in boundary or any(w not in new for w in T.adj[v])
        ]
        try:
            bound = end_degree_bound(Gp, sub, F, frontier, mate)
            finite = True
        except ValueError:
            bound, finite = None, False
        sizes = tree_cut_sizes(Gp, sub, F)
        limit.update({
            "F_size": len(F),
            "certified_F_size": len(certified),
            "bound": bound,
            "certified_bound": max((sizes[e] for e in certified), default=0),
            "cut_sizes": [[keep[a], keep[b], c] for (a, b), c in sorted(sizes.items())],
        })
        checks["components_finite"] = finite
        checks["end_degree"] = finite and bound is not None and bound <= 3

        # every diagonal subtree sits inside its own cycle, and that cycle lies in Gp
        cover = all(
            vsets[j] <= set(cycles[j])
            and all(edge_key(new[a], new[b]) in Gp.edge_set() for a, b in cycle_edges(cycles[j]))
            for j in diag
        )
        chain = all(vsets[a] <= vsets[b] for a, b in zip(diag, diag[1:]))
        checks["cycle_cover"] = cover and chain and set().union(*(vsets[j] for j in diag)) == set(R)
    else:
        checks["end_degree"] = checks["cycle_cover"] = False
    out["limit"] = limit

    seps = [list(p) for p in pairs if set(p) <= set(R)]
    faith = {}
    for name, ambient_graph in (("tree_in_bipower", host), ("tree_in_graph", G)):
        rep = faithfulness_check(ambient_graph, T, seps, boundary)
        faith[name] = {"ok": rep.ok, "failures": rep.failures, "separators": len(seps)}
    out["faithfulness"] = faith
    checks["faithfulness"] = bool(seps) and all(f["ok"] for f in faith.values())

    out["ok"] = all(checks.values())
    return out


def recheck(cert: dict) -> Report:
    """Re-derive every verdict of ``cert`` from its raw data."""
    report = Report()
    if cert.get("format") != FORMAT:
        report.fail(f"unknown certificate format {cert.get('format')!r}")
        return report
    if cert.get("digest") != _digest(cert):
        report.fail("digest does not match the certificate body")
    try:
        again = _evaluate(cert)
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        report.fail(f"certificate data is malformed: {exc}")
        return report
    recorded = cert.get("results", {})
    if json.loads(json.dumps(again)) != recorded:
        report.fail("recomputed results differ from the recorded ones")
    for name, ok in again["checks"].items():
        report.checks[name] = ok
        if not ok:
            report.fail(f"check failed: {name}")
    if cert.get("ok") != again["ok"]:
        report.fail("recorded overall verdict disagrees with the recomputation")
    return report
