"""QAOA-based integer heuristic for restricted master instances.

Pipeline: preprocess the candidate columns (drop duplicates; truncate to the
qubit guard keeping the columns with the largest LP values), map to an Ising
Hamiltonian, optimize angles with the interpolation ladder, sample, keep the
samples that are feasible covers, and polish them with 1- and 2-flip moves.
"""

from __future__ import annotations

import numpy as np

from .angles import run_ladder
from .colgen import Column, HeuristicOutcome
from .ilp import SetPartitioningInstance, check_feasible
from .ising import map_to_ising, resolve_weights
from .qaoa import bitstring_to_assignment, evolve, sample


def _polish(inst: SetPartitioningInstance, x: np.ndarray) -> np.ndarray:
    """Greedy 1-flip then 2-flip descent keeping feasibility."""
    x = x.copy()
    n = inst.n_routes
    improved = True
    while improved:
        improved = False
        base = inst.cost(x)
        for i in range(n):
            y = x.copy()
            y[i] ^= 1
            if inst.cost(y) < base and check_feasible(inst, y):
                x = y
                improved = True
                break
        if improved:
            continue
        for i in range(n):
            for j in range(i + 1, n):
                y = x.copy()
                y[i] ^= 1
                y[j] ^= 1
                if inst.cost(y) < base and check_feasible(inst, y):
                    x = y
                    improved = True
                    break
            if improved:
                break
    return x


def qaoa_solve_columns(
    columns: list[Column],
    n_flights: int,
    b,
    rows,
    f: float = 10.0,
    p_max: int = 6,
    shots: int = 256,
    seed: int = 0,
    qubit_guard: int = 16,
    x_values=None,
) -> HeuristicOutcome:
    """Solve the Set Partitioning problem over candidate columns with QAOA.

    Returns feasible solutions (assignments over `columns`) sorted by cost;
    empty outcome when no sampled bitstring is feasible."""
    if not columns:
        return HeuristicOutcome.empty()
    keep = list(range(len(columns)))
    if len(columns) > qubit_guard:
        if x_values is None:
            x_values = [0.0] * len(columns)
        keep = sorted(
            sorted(range(len(columns)), key=lambda i: -x_values[i])[:qubit_guard]
        )
    row_list = sorted(rows)
    remap = {fl: k for k, fl in enumerate(row_list)}
    inst = SetPartitioningInstance(
        len(row_list),
        tuple(tuple(remap[fl] for fl in columns[i].flights) for i in keep),
        tuple(columns[i].cost for i in keep),
        tuple(b[fl] for fl in row_list),
    )
    try:
        mu1, mu2 = resolve_weights(inst, f)
    except ValueError:
        return HeuristicOutcome.empty()
    model = map_to_ising(inst, mu1, mu2)
    ladder = run_ladder(model, p_max, feas=None, seed=seed, p1_budget=600)
    state = evolve(model, ladder.final.angles)
    hist = sample(state, shots, seed)

    feasible: dict[tuple[int, ...], int] = {}
    for key in hist:
        x = np.asarray(bitstring_to_assignment(key), dtype=np.int64)
        if not check_feasible(inst, x):
            continue
        x = _polish(inst, x)
        feasible[tuple(int(v) for v in x)] = inst.cost(x)
    if not feasible:
        return HeuristicOutcome.empty()
    ranked = sorted(feasible.items(), key=lambda t: (t[1], t[0]))
    solutions = []
    for x_small, cost in ranked:
        full = [0] * len(columns)
        for k, i in enumerate(keep):
            full[i] = x_small[k]
        solutions.append((tuple(full), cost))
    return HeuristicOutcome(tuple(solutions), solutions[0][1])
