"""Hamiltonian paths and cycles in the cube bi-power of bipartite graphs with
a perfect matching, with independent verifiers and a finite certificate
pipeline for infinite locally finite graphs."""

from .bipower import bipower, power
from .graph_core import Bipartition, Graph, GraphError, NotBipartiteError, ParseError, bipartition, parse_graph
from .ham_construct import ConstructionError, HamCycle, HamPath, ham_cycle, laceable_ham_path, tree_ham_path
from .matching import Matching, MatchingError, maximum_matching, spanning_tree_with_matching, tree_perfect_matching

__all__ = [
    "Bipartition", "ConstructionError", "Graph", "GraphError", "HamCycle", "HamPath", "Matching",
    "MatchingError", "NotBipartiteError", "ParseError", "bipartition", "bipower", "ham_cycle",
    "laceable_ham_path", "maximum_matching", "parse_graph", "power", "spanning_tree_with_matching",
    "tree_ham_path", "tree_perfect_matching",
]
