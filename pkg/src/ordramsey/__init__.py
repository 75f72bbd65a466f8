"""Ordered matchings versus triangles: constructions, scanning, shift
statistics, local-lemma audit and exact ordered Ramsey search."""
from .ordered import (OrderedGraph, OrderedMatching, IntervalPartition, matching_from_permutation,
                      permutation_from_matching, interval_chromatic_number, contains_ordered_subgraph)
from .coloring import EdgeColoring
from .shifts import shift_statistic
from .scanning import ColorMatrix, multi_thread_scan, theorem5_bound, theorem4_bound
from .exact import arrows, ordered_ramsey

__all__ = [
    "OrderedGraph", "OrderedMatching", "IntervalPartition", "matching_from_permutation",
    "permutation_from_matching", "interval_chromatic_number", "contains_ordered_subgraph",
    "EdgeColoring", "shift_statistic", "ColorMatrix", "multi_thread_scan", "theorem5_bound",
    "theorem4_bound", "arrows", "ordered_ramsey",
]
__version__ = "0.1.0"
