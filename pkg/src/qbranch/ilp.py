"""Set Partitioning / Exact Cover instances, feasibility checks and brute-force oracles.

An instance is the ILP

    min  c . x   s.t.  A x = b,  x in {0,1}^|R|

where column r of the binary matrix A is a route (a set of flights), c_r is
its integer cost, and b defaults to all ones (each flight covered exactly
once).  Columns are stored sparsely as sorted flight-index tuples.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

# 2^26 assignments is the largest enumeration we attempt.
ENUMERATION_GUARD = 26


class SizeError(ValueError):
    """Raised when an instance exceeds an enumeration or qubit guard."""


@dataclass(frozen=True)
class SetPartitioningInstance:
    """Sparse Set Partitioning instance: routes as sorted flight tuples."""

    n_flights: int
    routes: tuple[tuple[int, ...], ...]
    costs: tuple[int, ...]
    b: tuple[int, ...] = ()

    def __post_init__(self):
        if self.n_flights < 1:
            raise ValueError("need at least one flight")
        routes = tuple(tuple(sorted({int(f) for f in r})) for r in self.routes)
        object.__setattr__(self, "routes", routes)
        costs = tuple(int(c) for c in self.costs)
        object.__setattr__(self, "costs", costs)
        if len(routes) != len(costs):
            raise ValueError("routes and costs length mismatch")
        for r in routes:
            if not r:
                raise ValueError("route covers no flight")
            if r[0] < 0 or r[-1] >= self.n_flights:
                raise ValueError("flight index out of range")
        b = self.b if self.b else tuple([1] * self.n_flights)
        b = tuple(int(v) for v in b)
        if len(b) != self.n_flights:
            raise ValueError("b length mismatch")
        if any(v < 0 for v in b):
            raise ValueError("b entries must be nonnegative")
        object.__setattr__(self, "b", b)

    @property
    def n_routes(self) -> int:
        return len(self.routes)

    def dense(self) -> np.ndarray:
        """Dense |F| x |R| constraint matrix."""
        a = np.zeros((self.n_flights, self.n_routes), dtype=np.int64)
        for r, flights in enumerate(self.routes):
            a[list(flights), r] = 1
        return a

    def penalty(self, x) -> int:
        """Quadratic constraint violation sum_f (sum_r a_fr x_r - b_f)^2."""
        x = np.asarray(x, dtype=np.int64)
        cover = self.dense() @ x
        return int(np.sum((cover - np.asarray(self.b)) ** 2))

    def cost(self, x) -> int:
        x = np.asarray(x, dtype=np.int64)
        return int(np.asarray(self.costs) @ x)

    def to_json(self) -> str:
        return json.dumps(
            {
                "n_flights": self.n_flights,
                "routes": [
                    {"flights": list(r), "cost": c}
                    for r, c in zip(self.routes, self.costs)
                ],
                "b": list(self.b),
            },
            indent=2,
        )

    @classmethod
    def from_json(cls, text: str) -> "SetPartitioningInstance":
        data = json.loads(text)
        routes = tuple(tuple(r["flights"]) for r in data["routes"])
        costs = tuple(r["cost"] for r in data["routes"])
        b = tuple(data.get("b") or ())
        return cls(data["n_flights"], routes, costs, b)


@dataclass(frozen=True)
class FeasibleSet:
    """All feasible assignments of an instance plus the optimum index.

    Ties on cost break to the lexicographically smallest bitstring
    (x_0, x_1, ...), keeping oracles reproducible.
    """

    solutions: tuple[tuple[int, ...], ...]
    optimal_index: int | None = None

    def __len__(self) -> int:
        return len(self.solutions)

    @property
    def optimum(self) -> tuple[int, ...] | None:
        if self.optimal_index is None:
            return None
        return self.solutions[self.optimal_index]


def check_feasible(inst: SetPartitioningInstance, x) -> bool:
    """True iff sum_r a_fr x_r = b_f for every flight f."""
    x = np.asarray(x, dtype=np.int64)
    if x.shape != (inst.n_routes,):
        raise ValueError(f"assignment length {x.shape} != {inst.n_routes} routes")
    if np.any((x != 0) & (x != 1)):
        raise ValueError("assignment entries must be 0/1")
    cover = np.zeros(inst.n_flights, dtype=np.int64)
    for r in np.flatnonzero(x):
        cover[list(inst.routes[r])] += 1
    return bool(np.array_equal(cover, np.asarray(inst.b)))


def _bit_matrix(start: int, stop: int, n: int) -> np.ndarray:
    """Rows = binary expansions of start..stop-1, bit r in column r."""
    idx = np.arange(start, stop, dtype=np.int64)
    return ((idx[:, None] >> np.arange(n)) & 1).astype(np.int8)


def brute_force_solve(inst: SetPartitioningInstance) -> FeasibleSet:
    """Enumerate all 2^|R| assignments; collect feasible ones and the optimum."""
    n = inst.n_routes
    if n > ENUMERATION_GUARD:
        raise SizeError(f"{n} routes exceeds enumeration guard {ENUMERATION_GUARD}")
    a = inst.dense().astype(np.int64)
    b = np.asarray(inst.b, dtype=np.int64)
    c = np.asarray(inst.costs, dtype=np.int64)
    solutions: list[tuple[int, ...]] = []
    chunk = 1 << 20
    for start in range(0, 1 << n, chunk):
        stop = min(start + chunk, 1 << n)
        bits = _bit_matrix(start, stop, n)
        ok = np.all(bits.astype(np.int64) @ a.T == b, axis=1)
        for row in bits[ok]:
            solutions.append(tuple(int(v) for v in row))
    if not solutions:
        return FeasibleSet(())
    costs = [int(c @ np.asarray(s)) for s in solutions]
    best = min(range(len(solutions)), key=lambda i: (costs[i], solutions[i]))
    return FeasibleSet(tuple(solutions), best)


def gf2_rank(rows: list[int], n_cols: int) -> int:
    """Rank over GF(2) via Gaussian elimination on int bitsets."""
    work = [r for r in rows if r]
    rank = 0
    for col in range(n_cols):
        pivot = None
        for i in range(rank, len(work)):
            if (work[i] >> col) & 1:
                pivot = i
                break
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        for i in range(len(work)):
            if i != rank and ((work[i] >> col) & 1):
                work[i] ^= work[rank]
        rank += 1
        if rank == len(work):
            break
    return rank


def gf2_solution_bound(inst: SetPartitioningInstance) -> int:
    """Upper bound 2^(|R| - rank_2(A)) on |S_feasible|; 0 if A x = b mod 2 is inconsistent."""
    n = inst.n_routes
    # row f as a bitset over routes, augmented with b_f mod 2 in bit n
    rows = []
    for f in range(inst.n_flights):
        row = 0
        for r, flights in enumerate(inst.routes):
            if f in flights:
                row ^= 1 << r
        rows.append(row)
    b_bits = [v % 2 for v in inst.b]
    rank_a = gf2_rank(rows, n)
    aug = [row | (bit << n) for row, bit in zip(rows, b_bits)]
    rank_aug = gf2_rank(aug, n + 1)
    if rank_aug > rank_a:
        return 0
    return 1 << (n - rank_a)
