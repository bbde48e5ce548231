"""Cycles and closed walks in the graph of overlapping permutations G(n)."""

__version__ = "0.1.0"

from .errors import (ConditionNotMet, ConstructionError, DomainError, GraphSizeError,
                     InvalidWordError, ResourceLimitExceeded)
from .perm import (all_perms, complement, cyclic_shift, format_perm, identity, is_alternating,
                   is_trivial, parse_perm, rank, reversal, standardize, unrank)
from .graph import (ImplicitOverlapGraph, OverlapGraph, build, double_edge_pair, edge_endpoints,
                    edges_connecting)
from .walks import (ClosedWalk, OverlapProfile, Walk, branch_count, branching_condition_general,
                    branching_condition_small_n, build_closed_walk, build_walk_between,
                    closed_walk_condition, forbidden_by_lemma, overlap_profile, successor_candidate)
from .census import (CensusReport, closed_walks_through, coexisting_cycle_lengths,
                     count_closed_walk_classes, enumerate_k_cycles, special_two_cycle_vertices,
                     two_cycle_count_formula, two_cycle_vertex_formula, v_count, v_prime_formula,
                     w_count, w_formula, w_upper_bound)
