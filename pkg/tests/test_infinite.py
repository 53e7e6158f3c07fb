import json

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hamlace.bipower import bipower
from hamlace.gallery import layered_counterexample
from hamlace.graph_core import Graph, GraphError, complete_bipartite, cycle_graph, is_tree, path_graph
from hamlace.ham_construct import ham_cycle
from hamlace.infinite import (
    FAMILIES,
    LazyGraph,
    OracleError,
    cycle_sequence,
    disjoint_paths,
    double_ray,
    end_degree_bound,
    extend_normal_tree,
    extract_stable,
    faithfulness_check,
    infinite_certificate,
    ladder,
    lift_tree,
    matched_binary_tree,
    matched_quotient,
    normal_spanning_tree,
    recheck,
    stabilization_check,
    tree_cut_sizes,
    truncate_saturated,
)
from hamlace.infinite.sequence import cycle_edges
from hamlace.matching import Matching

from .oracles import brute_menger, to_nx
from .strategies import graphs


def pm(n, pairs):
    return Matching.from_pairs(n, pairs)


class TestTruncation:
    def test_double_ray(self):
        t = truncate_saturated(double_ray(), 2)
        assert sorted(t.labels) == [-2, -1, 0, 1, 2, 3]
        assert t.graph.m == 5 and t.matching.is_perfect()
        assert {t.labels[v] for v in t.boundary} == {-2, 3}

    def test_radius_zero_takes_the_mate(self):
        t = truncate_saturated(double_ray(), 0)
        assert t.labels == (0, 1) and t.graph.edges() == [(0, 1)]

    def test_ladder(self):
        t = truncate_saturated(ladder(), 1)
        assert t.graph.n == 6 and t.graph.m == 7
        assert t.index[(0, 0)] == 0

    def test_binary_tree_grows(self):
        sizes = [truncate_saturated(matched_binary_tree(), r).graph.n for r in range(5)]
        assert sizes == sorted(sizes) and sizes[0] == 2

    def test_asymmetric_oracle(self):
        bad = LazyGraph("bad", lambda i: [i + 1], 0, lambda i: i + 1 if i % 2 == 0 else i - 1)
        with pytest.raises(OracleError):
            truncate_saturated(bad, 3)

    def test_mate_off_an_edge(self):
        bad = LazyGraph("bad", lambda i: [i - 1, i + 1], 0, lambda i: i + 2 if i % 4 < 2 else i - 2)
        with pytest.raises(OracleError):
            truncate_saturated(bad, 2)

    def test_negative_radius(self):
        with pytest.raises(ValueError):
            truncate_saturated(double_ray(), -1)


class TestQuotientAndTrees:
    def test_quotients(self):
        assert matched_quotient(path_graph(4), pm(4, [(0, 1), (2, 3)])).edges() == [(0, 1)]
        Q = matched_quotient(cycle_graph(6), pm(6, [(0, 1), (2, 3), (4, 5)]))
        assert Q.n == 3 and Q.m == 3
        t = truncate_saturated(double_ray(), 4)
        Q = matched_quotient(t.graph, t.matching)
        assert is_tree(Q) and max(Q.degree(v) for v in range(Q.n)) == 2

    def test_normal_tree_examples(self):
        assert normal_spanning_tree(cycle_graph(4)).parent == (-1, 0, 1, 2)
        assert max(normal_spanning_tree(complete_bipartite(3, 3)).depth) == 5
        with pytest.raises(GraphError):
            normal_spanning_tree(Graph.from_edges(3, [(0, 1)]))

    @given(graphs(max_n=10))
    def test_dfs_trees_are_normal(self, G):
        if not nx.is_connected(to_nx(G)):
            return
        T = normal_spanning_tree(G)
        assert not T.normality_violations(G)
        assert is_tree(T.graph()) if G.n > 1 else True

    def test_extension_keeps_old_part(self):
        G = path_graph(5).union([(0, 4)])
        old = normal_spanning_tree(path_graph(3))
        parent = list(old.parent) + [-1, -1]
        depth = list(old.depth) + [-1, -1]
        from hamlace.infinite import RootedTree
        T = extend_normal_tree(G, RootedTree(0, tuple(parent), tuple(depth)), [0, 1, 2], 0)
        assert T.parent[:3] == (-1, 0, 1) and not T.normality_violations(G)

    def test_extension_refuses_incomparable_neighbourhood(self):
        from hamlace.infinite import RootedTree
        from hamlace.ham_construct import ConstructionError
        # old tree: 0 with children 1 and 2; new vertex 3 sees both
        G = Graph.from_edges(4, [(0, 1), (0, 2), (1, 3), (2, 3)])
        old = RootedTree(0, (-1, 0, 0, -1), (0, 1, 1, -1))
        with pytest.raises(ConstructionError):
            extend_normal_tree(G, old, [0, 1, 2], 0)

    def test_lift_examples(self):
        M = pm(4, [(0, 1), (2, 3)])
        assert lift_tree(path_graph(4), M, path_graph(2)).edges() == [(0, 1), (1, 2), (2, 3)]
        M6 = pm(6, [(0, 1), (2, 3), (4, 5)])
        T = lift_tree(cycle_graph(6), M6, path_graph(3))
        assert is_tree(T) and T.m == 5

    def test_lift_ladder(self):
        t = truncate_saturated(ladder(), 3)
        Q = matched_quotient(t.graph, t.matching)
        T = lift_tree(t.graph, t.matching, normal_spanning_tree(Q))
        rungs = sum(1 for u, v in T.edges() if t.labels[u][0] == t.labels[v][0])
        assert rungs == Q.n and T.m - rungs == Q.n - 1

    def test_lift_bad_choice(self):
        M = pm(4, [(0, 1), (2, 3)])
        G = cycle_graph(4)
        with pytest.raises(GraphError):
            lift_tree(G, M, path_graph(2), {(0, 1): (0, 2)})
        assert lift_tree(G, M, path_graph(2), {(0, 1): (0, 3)}).has_edge(0, 3)


class TestSequence:
    def test_double_ray(self):
        S = cycle_sequence(double_ray(), (1, 2, 3))
        assert [len(v) for v in S.vertex_sets] == [4, 6, 8] and S.ok
        for a, b in zip(S.tree_edges, S.tree_edges[1:]):
            assert set(a) <= set(b)
        for te in S.tree_edges:
            assert set(te) <= S.tree.edge_set()

    def test_small_radius_advances(self):
        assert cycle_sequence(double_ray(), (0,)).radii == (1,)
        assert cycle_sequence(double_ray(), (0, 1, 2)).radii == (1, 2)

    def test_ladder(self):
        S = cycle_sequence(ladder(), (1, 2))
        assert S.ok and len(S) == 2

    def test_cycles_are_cube_bipower_cycles(self):
        S = cycle_sequence(matched_binary_tree(), (2, 3))
        from hamlace.verify import verify_bipower_cycle
        for V, C in zip(S.vertex_sets, S.cycles):
            sub, keep = S.tree.induced_subgraph(V)
            new = {v: i for i, v in enumerate(keep)}
            assert verify_bipower_cycle(sub, [new[v] for v in C], 3).ok

    @pytest.mark.parametrize("bad", [(), (2, 2), (3, 1)])
    def test_schedule_must_increase(self, bad):
        with pytest.raises(ValueError):
            cycle_sequence(double_ray(), bad)

    def test_needs_matching(self):
        with pytest.raises(GraphError):
            cycle_sequence(LazyGraph("x", lambda i: [i - 1, i + 1], 0), (1, 2))


class TestStabilization:
    def setup_method(self):
        self.T = path_graph(12)
        self.mate = [v ^ 1 for v in range(12)]
        self.host = bipower(self.T, 3)

    def _cycle(self, k):
        # Hamiltonian cycle of the cube bi-power on the first 2k vertices
        sub, _ = self.T.induced_subgraph(range(2 * k))
        return ham_cycle(sub, pm(2 * k, [(2 * i, 2 * i + 1) for i in range(k)])).seq

    def test_constant_sequence(self):
        C = self._cycle(2)
        stab = extract_stable(self.host, self.T, self.mate, [C] * 5)
        assert stab.ok and stab.diagonal == [0, 1, 2, 3, 4]
        assert [len(w["members"]) for w in stab.windows] == [4, 3, 2, 1]

    def test_alternating_sequence(self):
        a, b = self._cycle(2), self._cycle(3)
        seq = [a, b, a, b, a, b]
        stab = extract_stable(self.host, self.T, self.mate, seq)
        first = stab.windows[0]
        assert sum(first["classes"]) == 5 and first["classes"][0] == 3
        # the first cycle has no edge leaving its own pairs, every b does
        assert first["members"] == [1, 3, 5] and first["trace"]
        assert stab.diagonal == [0, 1, 3, 5]

    def test_members_share_trace(self):
        cycles = [self._cycle(k) for k in (2, 3, 4, 5, 3, 4)]
        stab = extract_stable(self.host, self.T, self.mate, cycles)
        for w in stab.windows:
            E = {tuple(e) for e in w["E"]}
            for j in w["members"]:
                assert sorted(cycle_edges(cycles[j]) & E) == [tuple(e) for e in w["trace"]]
            assert len(w["members"]) == w["classes"][0]

    def test_boundary_stop(self):
        C = self._cycle(2)
        stab = extract_stable(self.host, self.T, self.mate, [C] * 3, boundary=[5])
        assert stab.stop == "boundary" and not stab.ok and stab.diagonal == []

    def test_on_real_sequence(self):
        stab = stabilization_check(cycle_sequence(double_ray(), range(1, 7)))
        assert stab.ok and stab.diagonal == sorted(stab.diagonal)
        with pytest.raises(ValueError):
            stabilization_check(cycle_sequence(double_ray(), (1,)))


class TestEnds:
    def test_tree_alone(self):
        T = path_graph(6)
        assert end_degree_bound(T, T, [(1, 2), (3, 4)]) == 1

    def test_double_ray_cycle(self):
        T = path_graph(8)
        C = ham_cycle(T, pm(8, [(0, 1), (2, 3), (4, 5), (6, 7)]))
        Gp = T.union(cycle_edges(C.seq))
        F = [(1, 2), (3, 4), (5, 6)]
        sizes = tree_cut_sizes(Gp, T, F)
        H = to_nx(Gp)
        for u, v in F:
            left = set(range(u + 1))
            assert sizes[(u, v)] == sum(1 for a, b in H.edges() if (a in left) != (b in left))
            # a Hamiltonian cycle crosses each cut an even, positive number of times
            assert sizes[(u, v)] - (0 if (u, v) in cycle_edges(C.seq) else 1) in (2,)
        assert end_degree_bound(Gp, T, F) == max(sizes.values()) <= 3

    def test_full_bipower_exceeds(self):
        T = path_graph(6)
        assert end_degree_bound(bipower(T, 3), T, [(2, 3)]) > 3

    def test_boundary_component_refused(self):
        T = path_graph(6)
        mate = [v ^ 1 for v in range(6)]
        with pytest.raises(GraphError):
            end_degree_bound(T, T, [(1, 2)], boundary=[5], mate=mate)
        assert end_degree_bound(T, T, [(1, 2), (3, 4)], boundary=[5], mate=mate) == 1

    def test_non_tree_edge(self):
        with pytest.raises(GraphError):
            tree_cut_sizes(path_graph(4), path_graph(4), [(0, 2)])


class TestMenger:
    def test_examples(self):
        assert disjoint_paths(path_graph(4), [0], [3]).count == 1
        assert disjoint_paths(complete_bipartite(3, 3), [0, 1, 2], [3, 4, 5]).count == 3
        for k in (1, 2, 3):
            L = layered_counterexample(k, 3, 4)
            assert disjoint_paths(L.graph, L.layers[0], L.layers[-1]).count == k

    def test_overlap_rejected(self):
        with pytest.raises(GraphError):
            disjoint_paths(path_graph(3), [0, 1], [1, 2])

    @settings(max_examples=120)
    @given(graphs(max_n=9), st.data())
    def test_against_brute(self, G, data):
        verts = list(range(G.n))
        A = data.draw(st.sets(st.sampled_from(verts), max_size=3))
        B = data.draw(st.sets(st.sampled_from(verts), max_size=3).map(lambda s: s - A))
        res = disjoint_paths(G, A, B)
        assert res.count == brute_menger(G, A, B) == len(res.paths) == len(res.separator)
        used = set()
        for p in res.paths:
            assert p[0] in A and p[-1] in B
            assert all(G.has_edge(a, b) for a, b in zip(p, p[1:]))
            assert used.isdisjoint(p)
            used.update(p)


class TestFaithfulness:
    def test_identity_passes(self):
        t = truncate_saturated(ladder(), 4)
        assert faithfulness_check(t.graph, t.graph, t.matching.pairs(), t.boundary).ok

    def test_double_ray_tree(self):
        S = cycle_sequence(double_ray(), (1, 2, 3))
        amb = S.ambient
        seps = [p for p in amb.matching.pairs() if set(p) <= set(S.vertex_sets[-1])]
        assert faithfulness_check(amb.graph, S.tree, seps, amb.boundary).ok

    def test_star_tree_on_ladder_fails(self):
        t = truncate_saturated(ladder(), 4)
        idx, lab = t.index, t.labels
        rails = [(u, v) for u, v in t.graph.edges() if lab[u][1] == lab[v][1]]
        H = Graph.from_edges(t.graph.n, rails + [(idx[(0, 0)], idx[(0, 1)])])
        assert is_tree(H)
        rep = faithfulness_check(t.graph, H, [(idx[(1, 0)], idx[(1, 1)])], t.boundary)
        assert not rep.ok and "two ends of H" in rep.failures[0]

    def test_input_errors(self):
        G = cycle_graph(4)
        with pytest.raises(GraphError):
            faithfulness_check(G, path_graph(3), [], [])
        with pytest.raises(GraphError):
            faithfulness_check(G, Graph.from_edges(4, [(0, 2)]), [], [])
        with pytest.raises(GraphError):
            faithfulness_check(G, Graph.from_edges(4, [(0, 1)]), [], [])


@pytest.fixture(scope="module")
def certs():
    return {
        "double-ray": infinite_certificate(double_ray(), range(1, 9)),
        "ladder": infinite_certificate(ladder(), range(1, 9)),
        "matched-tree": infinite_certificate(matched_binary_tree(), range(1, 6)),
    }


class TestCertificate:
    @pytest.mark.parametrize("family", sorted(FAMILIES))
    def test_ok_and_rechecks(self, certs, family):
        cert = certs[family]
        assert cert["ok"] and all(cert["results"]["checks"].values())
        assert cert["results"]["limit"]["bound"] <= 3
        again = json.loads(json.dumps(cert))
        assert recheck(again).ok

    def test_deterministic(self, certs):
        assert infinite_certificate(double_ray(), range(1, 9)) == certs["double-ray"]

    def test_tampered_cycle(self, certs):
        cert = json.loads(json.dumps(certs["double-ray"]))
        c = cert["steps"][-1]["cycle"]
        c[0], c[1] = c[1], c[0]
        rep = recheck(cert)
        assert not rep.ok and any("digest" in f for f in rep.failures)

    def test_tampered_but_redigested(self, certs):
        from hamlace.infinite.certificate import _digest
        cert = json.loads(json.dumps(certs["ladder"]))
        c = cert["steps"][-1]["cycle"]
        c[1] = c[0]
        cert["digest"] = _digest(cert)
        rep = recheck(cert)
        assert not rep.ok and "recomputed results differ from the recorded ones" in rep.failures
        assert "check failed: conditions" in rep.failures

    def test_malformed(self, certs):
        from hamlace.infinite.certificate import _digest
        cert = json.loads(json.dumps(certs["ladder"]))
        cert["tree"]["edges"].pop()
        cert["digest"] = _digest(cert)
        rep = recheck(cert)
        assert not rep.ok and "malformed" in rep.failures[0]

    def test_unknown_format(self):
        assert not recheck({"format": "x"}).ok
