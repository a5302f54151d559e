"""Transitive reduction of (signed) digraphs: exact, approximate and brute force."""

__version__ = "0.1.0"

from .approx import (SOLVERS, critical_max_ed_2approx, critical_min_ed_2approx, fj_weighted_min_ed,
                     kry_contract, min_btr, pseudonode_transform, reduce_graph)
from .arborescence import Arborescence, min_in_arborescence, min_out_arborescence
from .closure import (Condensation, ParityClass, ParityClosure, classify_parity, closure_equal,
                      parity_closure, reachability, scc_condense)
from .errors import (ArcNotInGraph, CycleSearchBudgetExceeded, DomainError, EmptyGraph, Infeasible,
                     MissingWitness, NoArborescence, NotAcyclic, NotStronglyConnected, ParseError,
                     TooLarge, TredkitError, Unreachable)
from .graph import Arc, GraphBuilder, SignedDigraph, format_edgelist, graph_from_edges, parse_edgelist
from .lp import CutSet, LpSolution, integrality_gap, matching_lower_bound, ratio_report, solve_lp_small
from .oracle import exact_max_deletions, exact_min
from .reduction import (ReductionResult, dag_reduce, decompose_solve_combine, parity_augment,
                        verify_repair)
from .synthesis import Evidence, PseudoNode, build_graph, parse_evidence, redundancy, synthesize
