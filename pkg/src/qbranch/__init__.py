"""Hybrid quantum-classical heuristics for Set Partitioning.

Exact Cover / Set Partitioning instances are mapped to Ising Hamiltonians,
solved approximately with an ideal QAOA statevector simulation driven by an
interpolation-ladder angle optimizer, and injected into Branch-and-Price as
a primal heuristic and bound provider.
"""

from .angles import (
    DepthRecord,
    LadderResult,
    interpolate,
    local_search,
    optimize_p1_global,
    run_ladder,
)
from .colgen import (
    BnpResult,
    BnpStats,
    CgTrace,
    Column,
    ColumnPool,
    HeuristicOutcome,
    RmpSolution,
    SearchMode,
    SearchNode,
    branch_and_price,
    column_generation,
    default_slack_cost,
    fixing_dive,
    is_promising,
    make_exact_heuristic,
    make_qaoa_heuristic,
    price,
    solve_rmp_lp,
)
from .generate import GenerationError, generate, graph_stats, simplify_costs
from .heuristic import qaoa_solve_columns
from .ilp import (
    ENUMERATION_GUARD,
    FeasibleSet,
    SetPartitioningInstance,
    SizeError,
    brute_force_solve,
    check_feasible,
    gf2_rank,
    gf2_solution_bound,
)
from .ising import (
    INFINITY,
    IsingModel,
    WeightFactor,
    map_to_ising,
    min_gap_ratio,
    resolve_weights,
)
from .network import ConnectionNetwork, Flight, enumerate_routes, full_instance
from .qaoa import (
    STATEVECTOR_GUARD,
    AngleSchedule,
    StateVector,
    SuccessMode,
    bitstring_to_assignment,
    evolve,
    expectation,
    expectation_p1_analytic,
    sample,
    success_probability,
)
from .simplex import LpSolution, SimplexError, primal_simplex

__all__ = [
    "ENUMERATION_GUARD",
    "INFINITY",
    "STATEVECTOR_GUARD",
    "AngleSchedule",
    "BnpResult",
    "BnpStats",
    "CgTrace",
    "Column",
    "ColumnPool",
    "ConnectionNetwork",
    "DepthRecord",
    "FeasibleSet",
    "Flight",
    "GenerationError",
    "HeuristicOutcome",
    "IsingModel",
    "LadderResult",
    "LpSolution",
    "RmpSolution",
    "SearchMode",
    "SearchNode",
    "SetPartitioningInstance",
    "SimplexError",
    "SizeError",
    "StateVector",
    "SuccessMode",
    "WeightFactor",
    "bitstring_to_assignment",
    "branch_and_price",
    "brute_force_solve",
    "check_feasible",
    "column_generation",
    "default_slack_cost",
    "enumerate_routes",
    "evolve",
    "expectation",
    "expectation_p1_analytic",
    "fixing_dive",
    "full_instance",
    "generate",
    "gf2_rank",
    "gf2_solution_bound",
    "graph_stats",
    "interpolate",
    "is_promising",
    "local_search",
    "make_exact_heuristic",
    "make_qaoa_heuristic",
    "map_to_ising",
    "min_gap_ratio",
    "optimize_p1_global",
    "price",
    "primal_simplex",
    "qaoa_solve_columns",
    "run_ladder",
    "sample",
    "simplify_costs",
    "solve_rmp_lp",
    "success_probability",
]

__version__ = "0.1.0"
