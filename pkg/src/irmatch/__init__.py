"""Bounded-cycle matching on compatibility graphs and individually rational
mechanisms for players that own random subsets of the vertices."""

from .graph import (Graph, GraphFormatError, UndirectedGraph, add_altruist_backedges,
                    enumerate_cycles, format_graph, induced_subgraph, parse_graph,
                    to_undirected, weakly_connected_components)
from .solver import (Chain, Matching, SolveOptions, SolverLimitError, InstanceTooLargeError,
                     brute_force_cover, longest_chain_dag, max_cycle_cover, opt_size)
from .blossom import max_matching_blossom
from .decomposition import (build_partition, claim2_closed_form, edmonds_gallai,
                            exact_internal_expectation, verify_claim1)
from .ownership import (OwnershipAssignment, PlayerProfile, internal_subgraph,
                        restrict_matching, sample_ownership)
from .mechanisms import (GapRecord, MechanismOutcome, augment_mechanism,
                         corollary1_bound, ir_gaps, theorem1_bound, veto_mechanism)

__version__ = "0.1.0"
