"""Classical simulation and resource estimation of tree-generator based
amplitude-amplification search for the 0-1 knapsack problem."""

from .core import (
    Assignment,
    BudgetExceededError,
    InstanceFormatError,
    KnapsackInstance,
    exact_optimum,
    generate_instance,
    integer_greedy,
    parse_instance,
    profit_register_bound,
    serialize_instance,
    subinstance_bound,
)
from .qtg import BiasConfig, StateSet, TreeState, build_state_set, brute_force_state_set, optimal_bias
from .resources import ResourceCounts, qtg_totals, qubit_counts, search_tally
from .search import REMAINDER, SearchConfig, SearchTrace, amplification_factor, qmaxsearch, qsearch

__version__ = "0.1.0"
