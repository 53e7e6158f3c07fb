from .ends import DisjointPaths, disjoint_paths, end_degree_bound, faithfulness_check, tree_cut_sizes
from .lazy import (
    FAMILIES,
    LazyGraph,
    OracleError,
    Truncation,
    double_ray,
    ladder,
    matched_binary_tree,
    truncate_saturated,
)
from .sequence import CycleSequence, Stabilization, cycle_sequence, extract_stable, stabilization_check
from .trees import RootedTree, extend_normal_tree, lift_tree, matched_quotient, normal_spanning_tree
from .certificate import infinite_certificate, recheck

__all__ = [
    "FAMILIES", "CycleSequence", "DisjointPaths", "LazyGraph", "OracleError", "RootedTree",
    "Stabilization", "Truncation", "cycle_sequence", "disjoint_paths", "double_ray",
    "end_degree_bound", "extend_normal_tree", "extract_stable", "faithfulness_check",
    "infinite_certificate", "ladder", "lift_tree", "matched_binary_tree", "matched_quotient",
    "normal_spanning_tree", "recheck", "stabilization_check", "tree_cut_sizes", "truncate_saturated",
]
