"""Column Generation and Branch-and-Price with a pluggable integer heuristic.

The restricted master LP is solved with the primal simplex; new columns come
from a label-setting resource-constrained shortest path over the connection
network.  After each pricing round a promising-RMP predicate may trigger an
integer heuristic (exact enumeration or the QAOA pipeline) whose feasible
solutions provide incumbents, upper bounds for pruning, and an early-stop
threshold.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .ilp import (
    ENUMERATION_GUARD,
    FeasibleSet,
    SetPartitioningInstance,
    brute_force_solve,
    check_feasible,
)
from .network import ConnectionNetwork
from .simplex import LpSolution, SimplexError, primal_simplex

REDUCED_COST_TOL = 1e-9
INTEGRALITY_TOL = 1e-6


@dataclass(frozen=True)
class Column:
    flights: tuple[int, ...]
    cost: int
    origin: str  # initial | priced | heuristic

    def __post_init__(self):
        object.__setattr__(self, "flights", tuple(sorted(set(self.flights))))

    @property
    def is_slack(self) -> bool:
        return self.origin == "initial"


class ColumnPool:
    """Deduplicated columns; a duplicate flight set keeps the cheaper cost."""

    def __init__(self, columns=()):
        self.columns: list[Column] = []
        self.active: list[bool] = []
        self._index: dict[tuple[tuple[int, ...], bool], int] = {}
        for col in columns:
            self.add(col)

    def add(self, col: Column) -> int:
        """Add or merge a column, returning its pool index.

        Slack columns never merge with real columns: they must stay in the
        pool as the simplex starting basis even when pricing later produces a
        cheaper single-flight route over the same row."""
        key = (col.flights, col.is_slack)
        if key in self._index:
            i = self._index[key]
            if col.cost < self.columns[i].cost:
                self.columns[i] = col
            self.active[i] = True  # re-pricing an evicted column revives it
            return i
        self._index[key] = len(self.columns)
        self.columns.append(col)
        self.active.append(True)
        return self._index[key]

    def evict(self, duals, cap: int, keep: set[int]) -> int:
        """Deactivate priced columns, largest reduced cost first, until at
        most `cap` non-slack columns stay active.  Indices stay stable so
        search-tree references remain valid; a re-priced column revives.
        Returns the number of columns deactivated."""
        duals = np.asarray(duals, dtype=np.float64)
        candidates = [
            i
            for i, col in enumerate(self.columns)
            if self.active[i] and not col.is_slack and i not in keep
        ]
        excess = sum(
            1
            for i, col in enumerate(self.columns)
            if self.active[i] and not col.is_slack
        ) - cap
        if excess <= 0:
            return 0
        reduced = {
            i: self.columns[i].cost - float(sum(duals[list(self.columns[i].flights)]))
            for i in candidates
        }
        victims = sorted(candidates, key=lambda i: -reduced[i])[:excess]
        for i in victims:
            self.active[i] = False
        return len(victims)

    def __len__(self) -> int:
        return len(self.columns)

    def __iter__(self):
        return iter(self.columns)

    @classmethod
    def with_slack(cls, n_flights: int, slack_cost: int) -> "ColumnPool":
        return cls(
            Column((f,), slack_cost, "initial") for f in range(n_flights)
        )


@dataclass(frozen=True)
class RmpSolution:
    x: np.ndarray  # primal value per pool column (0 for excluded columns)
    duals: np.ndarray  # dual per flight (0 for rows outside the subproblem)
    objective: float
    basis: tuple[int, ...]  # pool indices of basic columns


@dataclass(frozen=True)
class SearchNode:
    fixed_to_one: frozenset[int]  # pool column indices forced into the solution
    forbidden: frozenset[tuple[int, ...]]  # flight sets banned from the pool view
    depth: int
    lp_bound: float = float("-inf")


@dataclass(frozen=True)
class HeuristicOutcome:
    """Feasible integer solutions over a candidate column list, cheapest first."""

    solutions: tuple[tuple[tuple[int, ...], int], ...]  # (assignment, cost)
    best_feasible_cost: int | None = None

    @classmethod
    def empty(cls) -> "HeuristicOutcome":
        return cls(())


def default_slack_cost(net: ConnectionNetwork) -> int:
    """Big-M exceeding any cover cost: 1 + total absolute flight and arc cost."""
    return 1 + sum(abs(f.cost) for f in net.flights) + sum(
        abs(c) for c in net.arc_costs
    )


def solve_rmp_lp(
    pool: ColumnPool,
    n_flights: int,
    b,
    rows: tuple[int, ...] | None = None,
    forbidden: frozenset[tuple[int, ...]] = frozenset(),
) -> RmpSolution:
    """LP over the pool columns (optionally a row subset) by primal simplex.

    Slack columns guarantee a feasible starting basis.  Columns touching
    excluded rows or carrying a forbidden flight set are left out.
    """
    b = np.asarray(b, dtype=np.float64)
    if rows is None:
        rows = tuple(range(n_flights))
    row_pos = {f: k for k, f in enumerate(rows)}
    col_ids = []
    for i, col in enumerate(pool.columns):
        if not col.is_slack and (col.flights in forbidden or not pool.active[i]):
            continue
        if all(f in row_pos for f in col.flights):
            col_ids.append(i)
    if not col_ids:
        raise ValueError("no admissible columns")
    m = len(rows)
    a = np.zeros((m, len(col_ids)))
    c = np.zeros(len(col_ids))
    basis = [-1] * m
    for k, i in enumerate(col_ids):
        col = pool.columns[i]
        for f in col.flights:
            a[row_pos[f], k] = 1.0
        c[k] = col.cost
        if col.is_slack and len(col.flights) == 1:
            basis[row_pos[col.flights[0]]] = k
    if any(v < 0 for v in basis):
        raise ValueError("pool lacks slack columns for a starting basis")
    lp = primal_simplex(a, b[list(rows)], c, basis)
    x = np.zeros(len(pool))
    for k, i in enumerate(col_ids):
        x[i] = lp.x[k]
    duals = np.zeros(n_flights)
    for f, k in row_pos.items():
        duals[f] = lp.duals[k]
    return RmpSolution(
        x=x,
        duals=duals,
        objective=lp.objective,
        basis=tuple(col_ids[k] for k in lp.basis),
    )


@dataclass
class _Label:
    reduced_cost: float
    resource: float
    cost: int
    path: tuple[int, ...]

    def dominates(self, other: "_Label") -> bool:
        return (
            self.reduced_cost <= other.reduced_cost + 1e-12
            and self.resource <= other.resource + 1e-12
            and (
                self.reduced_cost < other.reduced_cost - 1e-12
                or self.resource < other.resource - 1e-12
            )
        )


def price(
    net: ConnectionNetwork,
    duals,
    k_best: int = 10,
    allowed: set[int] | None = None,
) -> list[tuple[tuple[int, ...], int, float]]:
    """Label-setting over the flight DAG; returns up to k_best routes with
    negative reduced cost as (sorted flight tuple, cost, reduced cost)."""
    duals = np.asarray(duals, dtype=np.float64)
    if allowed is None:
        allowed = set(range(net.n_flights))
    succ = net.successors()
    labels: dict[int, list[_Label]] = {i: [] for i in range(net.n_flights)}

    def settle(node: int, lab: _Label) -> bool:
        bucket = labels[node]
        for other in bucket:
            if other.dominates(lab) or (
                other.reduced_cost <= lab.reduced_cost + 1e-12
                and other.resource <= lab.resource + 1e-12
            ):
                return False
        bucket[:] = [o for o in bucket if not lab.dominates(o)]
        bucket.append(lab)
        return True

    for i in net.topological_order():
        if i not in allowed:
            continue
        f = net.flights[i]
        if f.resource_use <= net.resource_limit:
            settle(i, _Label(f.cost - duals[i], f.resource_use, f.cost, (i,)))
        for lab in list(labels[i]):
            for j, arc_cost in succ[i]:
                if j not in allowed:
                    continue
                g = net.flights[j]
                res = lab.resource + g.resource_use
                if res > net.resource_limit:
                    continue
                settle(
                    j,
                    _Label(
                        lab.reduced_cost + g.cost + arc_cost - duals[j],
                        res,
                        lab.cost + g.cost + arc_cost,
                        lab.path + (j,),
                    ),
                )

    complete = [
        lab
        for bucket in labels.values()
        for lab in bucket
        if lab.reduced_cost < -REDUCED_COST_TOL
    ]
    complete.sort(key=lambda l: l.reduced_cost)
    return [
        (tuple(sorted(lab.path)), lab.cost, lab.reduced_cost)
        for lab in complete[:k_best]
    ]


def is_promising(
    objectives: list[float],
    rmp: RmpSolution,
    warmup: int = 3,
    stall_tol: float = 0.05,
    integral_fraction: float = 0.25,
) -> bool:
    """Heuristic trigger: enough iterations, stalled LP objective, and a
    solution leaning integral."""
    if len(objectives) < warmup:
        return False
    prev, last = objectives[-2], objectives[-1]
    if abs(prev) > 1e-12 and (prev - last) / abs(prev) >= stall_tol:
        return False
    support = np.flatnonzero(rmp.x > 1e-6)
    if support.size == 0:
        return False
    near_integral = np.sum(rmp.x[support] > 0.9)
    return bool(near_integral / support.size >= integral_fraction)


@dataclass
class CgTrace:
    objectives: list[float] = field(default_factory=list)
    columns_added: int = 0
    heuristic_calls: int = 0
    heuristic_solutions: list[tuple[tuple[int, ...], int]] = field(default_factory=list)
    best_upper_bound: float = float("inf")
    capped: bool = False
    stopped_by_bound: bool = False


def column_generation(
    net: ConnectionNetwork,
    b=None,
    pool: ColumnPool | None = None,
    heuristic=None,
    promising=is_promising,
    rows: tuple[int, ...] | None = None,
    forbidden: frozenset[tuple[int, ...]] = frozenset(),
    max_iter: int = 200,
    k_per_iter: int = 10,
    stop_upper_bound: float | None = None,
    eviction_factor: int = 10,
) -> tuple[RmpSolution, ColumnPool, CgTrace]:
    """Alternate RMP solve and pricing until no negative reduced cost remains.

    `heuristic(columns, column_ids, n_flights, b, x_values)` is invoked on the
    non-slack pool view when the promising predicate fires; its feasible
    solutions are recorded as upper bounds.  With integer costs the loop also
    stops early once the LP bound reaches best_upper_bound - 1.
    """
    n_flights = net.n_flights
    if b is None:
        b = tuple([1] * n_flights)
    if rows is None:
        rows = tuple(range(n_flights))
    if pool is None:
        pool = ColumnPool.with_slack(n_flights, default_slack_cost(net))
    trace = CgTrace()
    if stop_upper_bound is not None:
        trace.best_upper_bound = stop_upper_bound
    rmp = solve_rmp_lp(pool, n_flights, b, rows, forbidden)
    trace.objectives.append(rmp.objective)
    for _ in range(max_iter):
        new_routes = price(net, rmp.duals, k_per_iter, allowed=set(rows))
        new_routes = [
            (fl, cost, rc) for fl, cost, rc in new_routes if fl not in forbidden
        ]
        if not new_routes:
            break
        for flights, cost, _ in new_routes:
            pool.add(Column(flights, cost, "priced"))
        trace.columns_added += len(new_routes)
        rmp = solve_rmp_lp(pool, n_flights, b, rows, forbidden)
        trace.objectives.append(rmp.objective)
        # keep the pool bounded: retire the worst columns beyond the cap,
        # never touching the current basis (that would lose dual information)
        pool.evict(rmp.duals, eviction_factor * n_flights, set(rmp.basis))
        if heuristic is not None and promising is not None:
            if promising(trace.objectives, rmp):
                columns = [
                    (i, col)
                    for i, col in enumerate(pool.columns)
                    if not col.is_slack and pool.active[i]
                    and col.flights not in forbidden
                    and all(f in rows for f in col.flights)
                ]
                outcome = heuristic(
                    [col for _, col in columns],
                    [i for i, _ in columns],
                    n_flights,
                    b,
                    rows,
                    rmp,
                )
                trace.heuristic_calls += 1
                for assignment, cost in outcome.solutions:
                    pool_assignment = tuple(
                        columns[k][0] for k in range(len(columns)) if assignment[k]
                    )
                    trace.heuristic_solutions.append((pool_assignment, cost))
                    if cost < trace.best_upper_bound:
                        trace.best_upper_bound = cost
        if rmp.objective >= trace.best_upper_bound - 1 + 1e-9:
            trace.stopped_by_bound = True
            break
    else:
        trace.capped = True
    return rmp, pool, trace


def make_exact_heuristic():
    """Exact integer heuristic: brute-force over the candidate columns."""

    def hook(columns, column_ids, n_flights, b, rows, rmp) -> HeuristicOutcome:
        if not columns or len(columns) > ENUMERATION_GUARD:
            return HeuristicOutcome.empty()
        row_list = sorted(rows)
        remap = {f: k for k, f in enumerate(row_list)}
        inst = SetPartitioningInstance(
            len(row_list),
            tuple(tuple(remap[f] for f in col.flights) for col in columns),
            tuple(col.cost for col in columns),
            tuple(b[f] for f in row_list),
        )
        feas = brute_force_solve(inst)
        if len(feas) == 0:
            return HeuristicOutcome.empty()
        ranked = sorted(
            ((sol, inst.cost(sol)) for sol in feas.solutions),
            key=lambda t: (t[1], t[0]),
        )
        return HeuristicOutcome(tuple(ranked), ranked[0][1])

    return hook


def make_qaoa_heuristic(
    f: float = 10.0,
    p_max: int = 6,
    shots: int = 256,
    seed: int = 0,
    qubit_guard: int = 16,
):
    """Fig.-1-style pipeline: preprocess, map, optimize angles, sample,
    keep feasible samples, polish with 1- and 2-flip moves."""
    from .heuristic import qaoa_solve_columns

    def hook(columns, column_ids, n_flights, b, rows, rmp) -> HeuristicOutcome:
        x_values = [rmp.x[i] for i in column_ids]
        return qaoa_solve_columns(
            columns, n_flights, b, rows,
            f=f, p_max=p_max, shots=shots, seed=seed,
            qubit_guard=qubit_guard, x_values=x_values,
        )

    return hook


class SearchMode(Enum):
    DIVE = "dive"
    FULL_BRANCH = "full_branch"


@dataclass
class BnpStats:
    nodes_created: int = 0
    pruned_bound: int = 0
    pruned_integrality: int = 0
    pruned_infeasibility: int = 0
    branched: int = 0
    open_at_exit: int = 0
    cg_iterations: int = 0
    heuristic_calls: int = 0
    heuristic_incumbents: int = 0

    def accounting_ok(self) -> bool:
        return self.nodes_created == (
            self.pruned_bound
            + self.pruned_integrality
            + self.pruned_infeasibility
            + self.branched
            + self.open_at_exit
        )


@dataclass(frozen=True)
class BnpResult:
    status: str  # optimal | feasible | infeasible
    incumbent: tuple[tuple[int, ...], ...] | None  # flight sets of chosen columns
    cost: float | None
    stats: BnpStats
    incumbent_origins: tuple[str, ...] = ()


def fixing_dive(rmp: RmpSolution, pool: ColumnPool, node: SearchNode) -> SearchNode:
    """Dive child: fix the fractional column closest to 1 (ties: lowest index)."""
    candidates = [
        i
        for i in range(len(pool))
        if INTEGRALITY_TOL < rmp.x[i] < 1 - INTEGRALITY_TOL
    ]
    if not candidates:
        raise ValueError("solution already integral: nothing to fix")
    chosen = max(candidates, key=lambda i: (rmp.x[i], -i))
    fixed = set(node.fixed_to_one) | {chosen}
    forbidden = set(node.forbidden)
    chosen_flights = set(pool.columns[chosen].flights)
    for i, col in enumerate(pool.columns):
        if i != chosen and set(col.flights) & chosen_flights and not col.is_slack:
            forbidden.add(col.flights)
    return SearchNode(frozenset(fixed), frozenset(forbidden), node.depth + 1)


def branch_and_price(
    net: ConnectionNetwork,
    b=None,
    heuristic=None,
    mode: SearchMode = SearchMode.FULL_BRANCH,
    threshold: float | None = None,
    promising=is_promising,
    max_nodes: int = 500,
    k_per_iter: int = 10,
) -> BnpResult:
    """Branch-and-Bound with Column Generation bounds (Branch-and-Price).

    FULL_BRANCH partitions on the most fractional column (forbid vs fix);
    DIVE replaces branching with the fixing heuristic plus backtracking on
    infeasibility.  Heuristic incumbents tighten the upper bound; with a
    threshold the search exits on the first incumbent at or below it.
    """
    n_flights = net.n_flights
    if b is None:
        b = tuple([1] * n_flights)
    slack_cost = default_slack_cost(net)
    pool = ColumnPool.with_slack(n_flights, slack_cost)
    stats = BnpStats()
    incumbent: tuple[tuple[int, ...], ...] | None = None
    incumbent_cost = float("inf")
    incumbent_origins: tuple[str, ...] = ()

    root = SearchNode(frozenset(), frozenset(), 0)
    stack: list[SearchNode] = [root]
    stop = False

    def update_incumbent(flight_sets, cost, origins):
        nonlocal incumbent, incumbent_cost, incumbent_origins, stop
        if cost < incumbent_cost:
            incumbent = tuple(sorted(flight_sets))
            incumbent_cost = cost
            incumbent_origins = tuple(origins)
            if threshold is not None and cost <= threshold:
                stop = True

    while stack and not stop and stats.nodes_created < max_nodes:
        node = stack.pop()
        stats.nodes_created += 1
        fixed_cols = [pool.columns[i] for i in sorted(node.fixed_to_one)]
        covered: set[int] = set()
        overlap = False
        for col in fixed_cols:
            if covered & set(col.flights):
                overlap = True
            covered |= set(col.flights)
        if overlap:
            stats.pruned_infeasibility += 1
            continue
        fixed_cost = sum(col.cost for col in fixed_cols)
        remaining = tuple(f for f in range(n_flights) if f not in covered)
        if not remaining:
            stats.pruned_integrality += 1
            update_incumbent(
                [col.flights for col in fixed_cols],
                fixed_cost,
                [col.origin for col in fixed_cols],
            )
            continue
        rmp, pool, trace = column_generation(
            net,
            b,
            pool=pool,
            heuristic=heuristic,
            promising=promising,
            rows=remaining,
            forbidden=node.forbidden,
            k_per_iter=k_per_iter,
            stop_upper_bound=(
                incumbent_cost - fixed_cost
                if incumbent_cost < float("inf")
                else None
            ),
        )
        stats.cg_iterations += len(trace.objectives)
        stats.heuristic_calls += trace.heuristic_calls
        for pool_assignment, cost in trace.heuristic_solutions:
            stats.heuristic_incumbents += 1
            sets = [pool.columns[i].flights for i in pool_assignment]
            origins = [pool.columns[i].origin for i in pool_assignment]
            update_incumbent(
                [col.flights for col in fixed_cols] + sets,
                fixed_cost + cost,
                [col.origin for col in fixed_cols] + ["heuristic"] * len(sets),
            )
        lp_bound = fixed_cost + rmp.objective
        node = SearchNode(node.fixed_to_one, node.forbidden, node.depth, lp_bound)
        if lp_bound >= incumbent_cost - 1e-9:
            stats.pruned_bound += 1
            continue
        support = np.flatnonzero(rmp.x > INTEGRALITY_TOL)
        fractional = [
            int(i) for i in support if rmp.x[i] < 1 - INTEGRALITY_TOL
        ]
        slack_active = any(pool.columns[int(i)].is_slack for i in support)
        if not fractional:
            if slack_active:
                # integral but resting on big-cost slack: region has no cover
                stats.pruned_infeasibility += 1
                continue
            stats.pruned_integrality += 1
            chosen = [pool.columns[int(i)] for i in support]
            update_incumbent(
                [col.flights for col in fixed_cols]
                + [col.flights for col in chosen],
                fixed_cost + sum(col.cost for col in chosen),
                [col.origin for col in fixed_cols]
                + [col.origin for col in chosen],
            )
            continue
        stats.branched += 1
        if mode is SearchMode.FULL_BRANCH:
            j = min(fractional, key=lambda i: (abs(rmp.x[i] - 0.5), i))
            forbid_child = SearchNode(
                node.fixed_to_one,
                node.forbidden | {pool.columns[j].flights},
                node.depth + 1,
            )
            fix_child = SearchNode(
                node.fixed_to_one | {j}, node.forbidden, node.depth + 1
            )
            stack.append(forbid_child)
            stack.append(fix_child)
        else:
            child = fixing_dive(rmp, pool, node)
            # backtracking sibling: forbid the dived column if the dive fails
            dived = next(iter(child.fixed_to_one - node.fixed_to_one))
            fallback = SearchNode(
                node.fixed_to_one,
                node.forbidden | {pool.columns[dived].flights},
                node.depth + 1,
            )
            stack.append(fallback)
            stack.append(child)

    stats.open_at_exit = len(stack)
    if incumbent is None:
        return BnpResult("infeasible", None, None, stats)
    status = "optimal" if not stack and not stop else "feasible"
    return BnpResult(status, incumbent, incumbent_cost, stats, incumbent_origins)
