"""Instance generation with a controlled number of feasible solutions.

An instance with exactly k covers is built from k random partitions of the
flight set, padded with random non-improving routes, and verified against
the brute-force oracle; construction alone is never trusted because padding
and cross-combinations of partitions can create extra covers.
"""

from __future__ import annotations

import numpy as np

from .ilp import FeasibleSet, SetPartitioningInstance, brute_force_solve


class GenerationError(RuntimeError):
    pass


def _random_partition(
    rng: np.random.Generator,
    n_flights: int,
    existing: tuple[tuple[int, ...], ...] = (),
    reuse_prob: float = 0.5,
) -> list[tuple[int, ...]]:
    """Random partition of the flight set into nonempty routes.

    With probability `reuse_prob` a step reuses a fitting route from
    `existing`; sharing routes across partitions keeps the union small,
    which is what makes higher target solution counts reachable."""
    remaining = set(range(n_flights))
    routes = []
    while remaining:
        fitting = [r for r in existing if set(r) <= remaining]
        if fitting and rng.random() < reuse_prob:
            route = fitting[int(rng.integers(len(fitting)))]
        else:
            size = int(rng.integers(1, max(2, n_flights // 2) + 1))
            size = min(size, len(remaining))
            pool = sorted(remaining)
            route = tuple(
                sorted(rng.choice(pool, size=size, replace=False))
            )
        routes.append(tuple(int(f) for f in route))
        remaining -= set(route)
    return routes


def generate(
    n_routes: int,
    target_solutions: int,
    n_flights: int,
    seed: int = 0,
    max_retries: int = 500,
    cost_range: tuple[int, int] = (1, 100),
) -> SetPartitioningInstance:
    """Instance with exactly `target_solutions` feasible covers, verified by
    brute force; retries with derived seeds until exact."""
    if not (1 <= target_solutions <= n_routes // 2):
        raise ValueError("target_solutions must lie in [1, n_routes/2]")
    if n_routes > 26:
        raise ValueError("n_routes above enumeration guard")
    for attempt in range(max_retries):
        rng = np.random.default_rng((seed, attempt))
        route_set: dict[tuple[int, ...], None] = {}
        for _ in range(target_solutions):
            existing = tuple(route_set)
            for route in _random_partition(rng, n_flights, existing):
                route_set[route] = None
        if len(route_set) > n_routes:
            continue
        base_routes = tuple(route_set)
        base_inst = SetPartitioningInstance(
            n_flights, base_routes, tuple([1] * len(base_routes))
        )
        # cross-combinations of partitions can over- or under-shoot the target
        if len(brute_force_solve(base_inst)) != target_solutions:
            continue
        # pad with random subsets, re-verifying the cover count after each
        pad_tries = 0
        while len(route_set) < n_routes and pad_tries < 200:
            pad_tries += 1
            size = int(rng.integers(2, max(3, n_flights // 2) + 1))
            route = tuple(sorted(rng.choice(n_flights, size=size, replace=False)))
            if route in route_set:
                continue
            route_set[route] = None
            routes = tuple(route_set)
            inst = SetPartitioningInstance(
                n_flights, routes, tuple([1] * len(routes))
            )
            if len(brute_force_solve(inst)) != target_solutions:
                del route_set[route]
        if len(route_set) != n_routes:
            continue
        routes = tuple(route_set)
        costs = tuple(
            int(c) for c in rng.integers(cost_range[0], cost_range[1] + 1, n_routes)
        )
        inst = SetPartitioningInstance(n_flights, routes, costs)
        if len(brute_force_solve(inst)) == target_solutions:
            return inst
    raise GenerationError(
        f"no instance with exactly {target_solutions} covers in {max_retries} tries "
        f"(n_routes={n_routes}, n_flights={n_flights}, seed={seed})"
    )


def simplify_costs(
    inst: SetPartitioningInstance,
    seed: int = 0,
    divisor: int = 1,
    max_perturbations: int = 1000,
) -> SetPartitioningInstance:
    """Shift (and optionally divide) costs so the minimum is 1, then perturb
    by +1 steps until all costs are distinct and the optimal cover is unique."""
    if divisor < 1:
        raise ValueError("divisor must be >= 1")
    feas = brute_force_solve(inst)
    if len(feas) == 0:
        raise ValueError("instance has no feasible solution")
    rng = np.random.default_rng(seed)
    base = min(inst.costs)
    costs = [int(round((c - base) / divisor)) + 1 for c in inst.costs]

    def rebuild():
        return SetPartitioningInstance(
            inst.n_flights, inst.routes, tuple(costs), inst.b
        )

    for _ in range(max_perturbations):
        # distinct costs first, preserving relative order where possible
        order = sorted(range(len(costs)), key=lambda r: (costs[r], r))
        bumped = False
        for a, b in zip(order, order[1:]):
            if costs[b] <= costs[a]:
                costs[b] = costs[a] + 1
                bumped = True
        if bumped:
            continue
        cand = rebuild()
        sol_costs = [cand.cost(s) for s in feas.solutions]
        best = min(sol_costs)
        ties = [i for i, v in enumerate(sol_costs) if v == best]
        if len(ties) == 1:
            return cand
        # raise one route inside a random non-kept tied solution
        victim = feas.solutions[ties[int(rng.integers(1, len(ties)))]]
        used = [r for r, v in enumerate(victim) if v]
        costs[used[int(rng.integers(len(used)))]] += 1
    raise GenerationError("could not reach a unique optimum within the budget")


def graph_stats(inst: SetPartitioningInstance) -> tuple[float, float, list[int]]:
    """(average degree, density, per-node degrees) of the route conflict graph
    (routes adjacent iff they share a flight); identical to the Ising coupling
    graph for any positive constraint weight."""
    n = inst.n_routes
    sets = [set(r) for r in inst.routes]
    degrees = [0] * n
    edges = 0
    for i in range(n):
        for j in range(i + 1, n):
            if sets[i] & sets[j]:
                degrees[i] += 1
                degrees[j] += 1
                edges += 1
    possible = n * (n - 1) // 2
    density = edges / possible if possible else 0.0
    return (sum(degrees) / n if n else 0.0, density, degrees)
