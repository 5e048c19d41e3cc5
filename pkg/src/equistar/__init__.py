"""Equitable list coloring of star forests.

Decide, construct, and exhaustively verify equitable list colorings of
disjoint unions of stars: an exact solver, canonical enumeration of list
assignments up to symmetry, an exhaustive choosability checker, a library of
defeating gadgets, a constructive colorer for two stars, closed-form
characterizations, and the PARTITION reduction behind the hardness of
equitable 2-coloring.
"""

from .model import (
    Coloring,
    ListAssignment,
    StarForest,
    VertexId,
    is_equitable_k_coloring,
    is_equitable_list_coloring,
    is_proper,
    rho,
)
from .solver import SolveOutcome, leaf_assignment, solve, solve_center_fixed
from .enumeration import (
    CanonicalAssignment,
    IncompleteEnumeration,
    canonicalize,
    default_palette_bound,
    domination_palette_bound,
    enumerate_canonical,
    sample_assignment,
)
from .choosability import ChoosabilityVerdict, find_counterexample, is_equitably_k_choosable
from .gadgets import (
    constant_assignment,
    lemma_add_gadget,
    same_stars_even_gadget,
    same_stars_odd_gadget,
    tconstruct_gadget,
    verify_gadget,
)
from .greedy import (
    GreedyOutcome,
    MainOutcome,
    RebalanceState,
    lemma_reduce_color,
    post_greedy_disposition,
    rebalance,
    run_eps_greedy,
    theorem_main_color,
)
from .reduction import (
    PartitionInstance,
    equitable_2colorable,
    extract_partition,
    partition_exists,
    reduce_partition,
)
from . import formulas

__version__ = "0.1.0"

__all__ = [
    "CanonicalAssignment",
    "ChoosabilityVerdict",
    "Coloring",
    "GreedyOutcome",
    "IncompleteEnumeration",
    "ListAssignment",
    "MainOutcome",
    "PartitionInstance",
    "RebalanceState",
    "SolveOutcome",
    "StarForest",
    "VertexId",
    "canonicalize",
    "constant_assignment",
    "default_palette_bound",
    "domination_palette_bound",
    "enumerate_canonical",
    "equitable_2colorable",
    "extract_partition",
    "find_counterexample",
    "formulas",
    "is_equitable_k_coloring",
    "is_equitable_list_coloring",
    "is_equitably_k_choosable",
    "is_proper",
    "leaf_assignment",
    "lemma_add_gadget",
    "lemma_reduce_color",
    "partition_exists",
    "post_greedy_disposition",
    "rebalance",
    "reduce_partition",
    "rho",
    "run_eps_greedy",
    "same_stars_even_gadget",
    "same_stars_odd_gadget",
    "sample_assignment",
    "solve",
    "solve_center_fixed",
    "tconstruct_gadget",
    "theorem_main_color",
    "verify_gadget",
]
