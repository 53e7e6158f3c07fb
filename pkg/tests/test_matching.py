import pytest
from hypothesis import given
from hypothesis import strategies as st

from hamlace.gallery import all_matched_trees, random_matched_tree
from hamlace.graph_core import Bipartition, Graph, GraphError, ParseError, complete_bipartite, cycle_graph, is_tree, path_graph
from hamlace.matching import (
    DisjointSet,
    Matching,
    MatchingError,
    maximum_matching,
    parse_matching,
    require_perfect,
    serialize_matching,
    spanning_tree_with_matching,
    tree_perfect_matching,
)

from .oracles import max_matching_size, perfect_matchings
from .strategies import bipartite_graphs, matched_bipartite

P4 = path_graph(4)


class TestMaximumMatching:
    def test_p4(self):
        assert maximum_matching(P4).pairs() == [(0, 1), (2, 3)]

    def test_c6(self):
        M = maximum_matching(cycle_graph(6))
        assert len(M) == 3 and M.is_perfect() and M.is_valid_for(cycle_graph(6))

    def test_star(self):
        M = maximum_matching(Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)]))
        assert len(M) == 1 and not M.is_perfect()

    def test_rejects_bad_bipartition(self):
        with pytest.raises(GraphError):
            maximum_matching(P4, Bipartition((0, 0, 1, 1)))

    @given(bipartite_graphs(max_n=12))
    def test_size_matches_brute_force(self, G):
        M = maximum_matching(G)
        assert M.is_valid_for(G)
        assert len(M) == max_matching_size(G)

    @given(bipartite_graphs(max_n=12))
    def test_deterministic(self, G):
        assert maximum_matching(G) == maximum_matching(G)


class TestTreeMatching:
    def test_examples(self):
        assert tree_perfect_matching(P4).pairs() == [(0, 1), (2, 3)]
        with pytest.raises(MatchingError):
            tree_perfect_matching(path_graph(3))
        spider = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
        with pytest.raises(MatchingError):
            tree_perfect_matching(spider)
        with pytest.raises(GraphError):
            tree_perfect_matching(cycle_graph(4))

    def test_unique_against_brute_force(self):
        # all trees up to 12 vertices, with or without a perfect matching
        import networkx as nx

        for n in range(2, 13, 2):
            for t in nx.nonisomorphic_trees(n):
                T = Graph.from_edges(n, t.edges())
                pms = perfect_matchings(T)
                assert len(pms) <= 1
                if pms:
                    assert frozenset(tree_perfect_matching(T).pairs()) == pms[0]
                else:
                    with pytest.raises(MatchingError):
                        tree_perfect_matching(T)

    @given(st.integers(1, 40), st.integers(0, 999))
    def test_recovers_generator_matching(self, half_n, seed):
        T, M = random_matched_tree(half_n, seed)
        assert tree_perfect_matching(T) == M


class TestSpanningTree:
    def test_c4(self):
        T = spanning_tree_with_matching(cycle_graph(4), Matching.from_pairs(4, [(0, 1), (2, 3)]))
        assert T.edges() == [(0, 1), (1, 2), (2, 3)]

    def test_tree_is_fixed(self):
        for T, M in all_matched_trees(8):
            assert spanning_tree_with_matching(T, M) == T

    def test_k33(self):
        K = complete_bipartite(3, 3)
        M = Matching.from_pairs(6, [(0, 3), (1, 4), (2, 5)])
        T = spanning_tree_with_matching(K, M)
        assert T.m == 5 and is_tree(T)
        assert all(T.has_edge(u, v) for u, v in M.pairs())

    @given(matched_bipartite())
    def test_properties(self, GM):
        G, M = GM
        T = spanning_tree_with_matching(G, M)
        assert is_tree(T) and T.n == G.n
        assert all(G.has_edge(u, v) for u, v in T.edges())
        assert all(T.has_edge(u, v) for u, v in M.pairs())

    def test_errors(self):
        with pytest.raises(MatchingError):
            spanning_tree_with_matching(P4, Matching.from_pairs(4, [(0, 1)]))
        with pytest.raises(MatchingError):
            spanning_tree_with_matching(P4, Matching.from_pairs(4, [(0, 3), (1, 2)]))
        two = Graph.from_edges(4, [(0, 1), (2, 3)])
        with pytest.raises(GraphError):
            spanning_tree_with_matching(two, Matching.from_pairs(4, [(0, 1), (2, 3)]))


class TestMatchingType:
    def test_from_pairs_rejects_overlap(self):
        with pytest.raises(MatchingError):
            Matching.from_pairs(3, [(0, 1), (1, 2)])
        with pytest.raises(MatchingError):
            Matching.from_pairs(2, [(0, 0)])

    def test_serialization(self):
        M = Matching.from_pairs(4, [(3, 2), (1, 0)])
        text = serialize_matching(M)
        assert text == "0 1\n2 3\n"
        assert parse_matching(text, 4) == M
        with pytest.raises(ParseError):
            parse_matching("0 1\n1 2\n", 4)
        with pytest.raises(ParseError, match="line 1"):
            parse_matching("0 a\n", 4)

    def test_require_perfect(self):
        require_perfect(P4, Matching.from_pairs(4, [(0, 1), (2, 3)]))
        with pytest.raises(MatchingError):
            require_perfect(P4, Matching.from_pairs(4, [(1, 2)]))

    def test_disjoint_set(self):
        ds = DisjointSet(4)
        assert ds.union(0, 1) and ds.union(2, 3) and ds.union(1, 3)
        assert not ds.union(0, 2)
        assert len({ds.find(v) for v in range(4)}) == 1
