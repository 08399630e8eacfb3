"""Generalized coloring numbers: evaluation, greedy approximation, exact search and hardness reductions."""

from .backconn import build_level_dag, estimated_bcon, exact_admissibility, exact_bcon
from .exact import Answer, SearchBudget, decide_col, decide_wcol, minimize
from .graph import Graph, bfs_layers, degeneracy, parse_graph, serialize_graph, subdivide_edge
from .greedy import bounded_coloring, weighted_reach_sum
from .reach import PrefixOrder, ReachReport, evaluate_order, reach_set, wreach_set
from .reductions import audit_structure, build_colr, build_wcol2, build_wcolr, extract_assignment, witness_order
from .sat import CnfFormula, brute_force_sat, normalize_to_2clause3sat, parse_cnf, repair_exact_rsat

__all__ = [
    "Answer",
    "CnfFormula",
    "Graph",
    "PrefixOrder",
    "ReachReport",
    "SearchBudget",
    "audit_structure",
    "bfs_layers",
    "bounded_coloring",
    "brute_force_sat",
    "build_colr",
    "build_level_dag",
    "build_wcol2",
    "build_wcolr",
    "decide_col",
    "decide_wcol",
    "degeneracy",
    "estimated_bcon",
    "evaluate_order",
    "exact_admissibility",
    "exact_bcon",
    "extract_assignment",
    "minimize",
    "normalize_to_2clause3sat",
    "parse_cnf",
    "parse_graph",
    "reach_set",
    "repair_exact_rsat",
    "serialize_graph",
    "subdivide_edge",
    "weighted_reach_sum",
    "witness_order",
    "wreach_set",
]
