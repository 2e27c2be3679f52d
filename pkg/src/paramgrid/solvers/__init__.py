"""Built-in problem families and their non-parametric solvers."""

from .independence import (
    IndependenceSystem,
    from_generators,
    greedy_solve,
    independence_instance,
    rank_quotient_exact,
)
from .knapsack import (
    Item,
    KnapsackData,
    knapsack_data,
    knapsack_instance,
    knapsack_scaling_solve,
    knapsack_solve,
)
from .mincut import Arc, CutGraph, cut_graph, cut_record, min_cut_solve, mincut_instance

__all__ = [
    "Arc",
    "CutGraph",
    "IndependenceSystem",
    "Item",
    "KnapsackData",
    "cut_graph",
    "cut_record",
    "from_generators",
    "greedy_solve",
    "independence_instance",
    "knapsack_data",
    "knapsack_instance",
    "knapsack_scaling_solve",
    "knapsack_solve",
    "min_cut_solve",
    "mincut_instance",
    "rank_quotient_exact",
]
