"""Command-line entry point.

Exit codes: 0 success or pass, 1 a verification failed (or an oracle found
nothing), 2 bad usage or unreadable input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from typing import Sequence

from .bipower import bipower, power
from .gallery import layered_counterexample, random_bipartite_with_pm, random_matched_tree, subdivided_bistar
from .graph_core import Graph, GraphError, graph_hash, is_tree, load_graph, serialize, to_dot
from .ham_construct import ham_cycle, laceable_ham_path
from .infinite import FAMILIES, infinite_certificate, matched_quotient, recheck
from .matching import (
    Matching,
    maximum_matching,
    parse_matching,
    serialize_matching,
    spanning_tree_with_matching,
    tree_perfect_matching,
)
from .verify import (
    DEFAULT_ORACLE_LIMIT,
    Report,
    all_crossing_counts,
    brute_ham_cycle,
    brute_ham_path,
    verify_bipower_cycle,
    verify_bipower_path,
    verify_double_crossing,
)

FINITE_FORMAT = "hamlace.finite/1"


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _graph(path: str) -> Graph:
    return load_graph(_read(path))


def _matching(path: str, G: Graph) -> Matching:
    return parse_matching(_read(path), G.n)


def _emit_graph(G: Graph, dot: bool) -> None:
    sys.stdout.write(to_dot(G) if dot else serialize(G))


def _finite_cert(kind: str, G: Graph, seq, T: Graph, M: Matching, t: int = 3) -> dict:
    counts = all_crossing_counts(T, seq, cyclic=(kind == "cycle"))
    doc = {
        "format": FINITE_FORMAT,
        "kind": kind,
        "t": t,
        "graph_hash": graph_hash(G),
        "n": G.n,
        "seq": list(seq),
        "tree_edges": [list(e) for e in T.edges()],
        "matching": [list(p) for p in M.pairs()],
        "crossings": [[u, v, c] for (u, v), c in sorted(counts.items())],
    }
    doc["digest"] = _digest(doc)
    return doc


def _digest(doc: dict) -> str:
    body = {k: v for k, v in doc.items() if k != "digest"}
    return hashlib.sha256(json.dumps(body, sort_keys=True, separators=(",", ":")).encode()).hexdigest()


def _write_json(doc, path: str | None) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _seq_from_text(text: str) -> list[int]:
    text = text.strip()
    if text.startswith("{"):
        doc = json.loads(text)
        return [int(v) for v in doc["seq"]]
    try:
        return [int(tok) for tok in text.split()]
    except ValueError:
        raise InputError("certificate must be whitespace-separated vertex ids or JSON") from None


# -- subcommands ---------------------------------------------------------------

def cmd_bipower(a) -> int:
    _emit_graph(bipower(_graph(a.graph), a.t), a.dot)
    return 0


def cmd_power(a) -> int:
    _emit_graph(power(_graph(a.graph), a.t), a.dot)
    return 0


def cmd_match(a) -> int:
    G = _graph(a.graph)
    M = maximum_matching(G)
    sys.stdout.write(serialize_matching(M))
    if not M.is_perfect():
        print(f"note: maximum matching has {len(M)} edges and is not perfect", file=sys.stderr)
    return 0


def cmd_spantree(a) -> int:
    G = _graph(a.graph)
    _emit_graph(spanning_tree_with_matching(G, _matching(a.matching, G)), a.dot)
    return 0


def cmd_hampath(a) -> int:
    G = _graph(a.graph)
    M = _matching(a.matching, G)
    P = laceable_ham_path(G, M, a.x, a.y, check=a.check)
    print(" ".join(map(str, P.seq)))
    if a.cert:
        _write_json(_finite_cert("path", G, P.seq, P.tree, M), a.cert)
    return 0


def cmd_hamcycle(a) -> int:
    G = _graph(a.graph)
    M = _matching(a.matching, G)
    C = ham_cycle(G, M, check=a.check)
    print(" ".join(map(str, C.seq)))
    if a.cert:
        _write_json(_finite_cert("cycle", G, C.seq, C.tree, M), a.cert)
    return 0


def cmd_verify(a) -> int:
    G = _graph(a.graph)
    text = _read(a.cert)
    seq = _seq_from_text(text)
    if a.kind == "path":
        x = seq[0] if a.x is None and seq else a.x
        y = seq[-1] if a.y is None and seq else a.y
        report = verify_bipower_path(G, seq, x, y, a.t)
    else:
        report = verify_bipower_cycle(G, seq, a.t)
    if text.lstrip().startswith("{"):
        doc = json.loads(text)
        if doc.get("graph_hash") not in (None, graph_hash(G)):
            report.fail("certificate was issued for a different graph")
    if a.tree:
        T = _graph(a.tree)
        if T.n != G.n or not is_tree(T):
            raise InputError("--tree must be a spanning tree on the same vertex set")
        M = _matching(a.matching, T) if a.matching else tree_perfect_matching(T)
        if report.ok:
            crossing = verify_double_crossing(T, seq, M.mate, cyclic=(a.kind == "cycle"))
            report.checks["double_crossing"] = crossing.ok
            for msg in crossing.failures:
                report.fail(msg)
    print(report.to_json())
    return 0 if report.ok else 1


def cmd_oracle(a) -> int:
    G = _graph(a.graph)
    if a.kind == "path":
        if a.x is None or a.y is None:
            raise InputError("oracle path needs --from and --to")
        found = brute_ham_path(G, a.x, a.y, limit=a.limit, prune=a.prune)
    else:
        found = brute_ham_cycle(G, limit=a.limit, prune=a.prune)
    if found is None:
        print("none")
        return 1
    print(" ".join(map(str, found.seq)))
    return 0


def cmd_gen(a) -> int:
    marked = None
    M = None
    if a.family == "layered":
        L = layered_counterexample(a.k, a.t, a.s)
        G, marked = L.graph, L.marked
    elif a.family == "bistar":
        G = subdivided_bistar(a.k)
        M = maximum_matching(G)
    elif a.family == "matched-tree":
        G, M = random_matched_tree(a.half_n, a.seed)
    else:
        G, M = random_bipartite_with_pm(a.half_n, a.extra, a.seed)
    if a.out:
        with open(a.out + ".graph", "w", encoding="utf-8") as fh:
            fh.write(serialize(G))
        if M is not None:
            with open(a.out + ".matching", "w", encoding="utf-8") as fh:
                fh.write(serialize_matching(M))
        if marked is not None:
            with open(a.out + ".marked", "w", encoding="utf-8") as fh:
                fh.write(" ".join(map(str, marked)) + "\n")
    else:
        _emit_graph(G, a.dot)
    return 0


def cmd_quotient(a) -> int:
    G = _graph(a.graph)
    _emit_graph(matched_quotient(G, _matching(a.matching, G)), a.dot)
    return 0


def _radii(text: str) -> list[int]:
    try:
        if ":" in text:
            lo, hi = text.split(":")
            return list(range(int(lo), int(hi) + 1))
        return [int(r) for r in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad radius schedule {text!r}; use 1:8 or 1,2,5") from None


def cmd_infinite(a) -> int:
    cert = infinite_certificate(FAMILIES[a.family](), a.radii)
    _write_json(cert, a.out)
    return 0 if cert["ok"] else 1


def _recheck_finite(doc: dict, graph_path: str | None) -> Report:
    report = Report()
    if graph_path is None:
        raise InputError("a path/cycle certificate needs --graph to recheck against")
    G = _graph(graph_path)
    if doc.get("digest") != _digest(doc):
        report.fail("digest does not match the certificate body")
    if doc.get("graph_hash") != graph_hash(G):
        report.fail("certificate was issued for a different graph")
        return report
    seq = doc["seq"]
    cyclic = doc["kind"] == "cycle"
    base = verify_bipower_cycle(G, seq, doc["t"]) if cyclic else verify_bipower_path(G, seq, seq[0], seq[-1], doc["t"])
    for msg in base.failures:
        report.fail(msg)
    T = Graph.from_edges(G.n, [tuple(e) for e in doc["tree_edges"]])
    M = Matching.from_pairs(G.n, [tuple(p) for p in doc["matching"]])
    if not is_tree(T) or any(not G.has_edge(u, v) for u, v in T.edges()):
        report.fail("recorded tree is not a spanning tree of the graph")
        return report
    if any(not T.has_edge(u, v) for u, v in M.pairs()) or not M.is_perfect():
        report.fail("recorded matching is not a perfect matching inside the tree")
    if base.ok:
        counts = all_crossing_counts(T, seq, cyclic)
        if [[u, v, c] for (u, v), c in sorted(counts.items())] != doc["crossings"]:
            report.fail("recorded crossing counts differ from the recomputed ones")
        if cyclic or M.mate[seq[0]] == seq[-1]:
            crossing = verify_double_crossing(T, seq, M.mate, cyclic)
            report.checks["double_crossing"] = crossing.ok
            for msg in crossing.failures:
                report.fail(msg)
    return report


def cmd_recheck(a) -> int:
    try:
        doc = json.loads(_read(a.cert))
    except json.JSONDecodeError as exc:
        raise InputError(f"certificate is not JSON: {exc}") from None
    if doc.get("format") == FINITE_FORMAT:
        report = _recheck_finite(doc, a.graph)
    else:
        report = recheck(doc)
    print(report.to_json())
    return 0 if report.ok else 1


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hamlace", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    def graph_cmd(name: str, func, summary: str, dot: bool = False) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=summary)
        sp.set_defaults(func=func)
        if dot:
            sp.add_argument("--dot", action="store_true", help="emit Graphviz DOT instead of an edge list")
        return sp

    for name, func, what in (("bipower", cmd_bipower, "odd distance at most t"), ("power", cmd_power, "distance at most t")):
        sp = graph_cmd(name, func, f"join vertices at {what}", dot=True)
        sp.add_argument("--t", type=int, default=3)
        sp.add_argument("graph")

    sp = graph_cmd("match", cmd_match, "maximum bipartite matching")
    sp.add_argument("graph")

    for name, func, summary in (
        ("spantree", cmd_spantree, "spanning tree containing a perfect matching"),
        ("quotient", cmd_quotient, "graph on the matched pairs"),
    ):
        sp = graph_cmd(name, func, summary, dot=True)
        sp.add_argument("--matching", required=True)
        sp.add_argument("graph")

    sp = graph_cmd("hampath", cmd_hampath, "Hamiltonian path of the cube bi-power")
    sp.add_argument("--matching", required=True)
    sp.add_argument("--from", dest="x", type=int, required=True)
    sp.add_argument("--to", dest="y", type=int, required=True)
    sp.add_argument("--cert", help="write a JSON certificate here")
    sp.add_argument("--check", action="store_true", help="check every step while constructing")
    sp.add_argument("graph")

    sp = graph_cmd("hamcycle", cmd_hamcycle, "Hamiltonian cycle of the cube bi-power")
    sp.add_argument("--matching", required=True)
    sp.add_argument("--cert", help="write a JSON certificate here")
    sp.add_argument("--check", action="store_true")
    sp.add_argument("graph")

    sp = graph_cmd("verify", cmd_verify, "check a path or cycle certificate")
    sp.add_argument("kind", choices=("path", "cycle"))
    sp.add_argument("--t", type=int, default=3)
    sp.add_argument("--tree", help="also require double crossings of this tree's non-matching edges")
    sp.add_argument("--matching", help="matching of --tree (default: the tree's own)")
    sp.add_argument("--from", dest="x", type=int)
    sp.add_argument("--to", dest="y", type=int)
    sp.add_argument("graph")
    sp.add_argument("cert")

    sp = graph_cmd("oracle", cmd_oracle, "exhaustive Hamiltonian path or cycle search")
    sp.add_argument("kind", choices=("path", "cycle"))
    sp.add_argument("--from", dest="x", type=int)
    sp.add_argument("--to", dest="y", type=int)
    sp.add_argument("--limit", type=int, default=DEFAULT_ORACLE_LIMIT)
    sp.add_argument("--prune", type=int, choices=(0, 1, 2), default=2)
    sp.add_argument("graph")

    gen = sub.add_parser("gen", help="build a graph family")
    fams = gen.add_subparsers(dest="family", required=True, metavar="family")
    g = fams.add_parser("layered", help="layered non-Hamiltonian family")
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--t", type=int, default=3)
    g.add_argument("--s", type=int, required=True)
    g = fams.add_parser("bistar", help="bi-star with subdivided pendant edges")
    g.add_argument("--k", type=int, default=3)
    g = fams.add_parser("matched-tree", help="random tree with a perfect matching")
    g.add_argument("--half-n", type=int, required=True)
    g.add_argument("--seed", type=int, required=True)
    g = fams.add_parser("bipartite", help="random bipartite graph with a perfect matching")
    g.add_argument("--half-n", type=int, required=True)
    g.add_argument("--extra", type=int, default=0)
    g.add_argument("--seed", type=int, required=True)
    for g in fams.choices.values():
        g.set_defaults(func=cmd_gen)
        g.add_argument("--out", help="write PREFIX.graph, PREFIX.matching, PREFIX.marked")
        g.add_argument("--dot", action="store_true")

    sp = graph_cmd("infinite", cmd_infinite, "certificate for a built-in infinite family")
    sp.add_argument("--family", choices=sorted(FAMILIES), required=True)
    sp.add_argument("--radii", type=_radii, default=_radii("1:8"))
    sp.add_argument("--out", help="write the certificate here instead of stdout")

    sp = graph_cmd("recheck", cmd_recheck, "re-verify a JSON certificate")
    sp.add_argument("--graph", help="graph file, needed for path and cycle certificates")
    sp.add_argument("cert")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, GraphError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
