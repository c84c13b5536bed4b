"""Map Set Partitioning instances to weighted Ising spin-glass Hamiltonians.

The diagonal Hamiltonian over spins s_r = 2 x_r - 1 is

    E(x) = sum_r h_r s_r + sum_{r<r'} J_rr' s_r s_r' + offset

with h_r = mu1 * c_r / 2 + mu2 * sum_f a_fr (n_f / 2 - b_f),
J_rr' = mu2 * sum_f a_fr a_fr' / 2 and n_f the number of routes covering
flight f.  The constant offset is kept so that E(x) equals
mu1 * c.x + mu2 * penalty(x) exactly for every bitstring, which makes every
oracle test a direct comparison against the ILP objective.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .ilp import ENUMERATION_GUARD, SetPartitioningInstance, SizeError

INFINITY = math.inf


@dataclass(frozen=True)
class IsingModel:
    """Diagonal Ising cost model: fields h, couplings J over unordered pairs, offset."""

    h: tuple[float, ...]
    couplings: tuple[tuple[int, int, float], ...]  # (i, j, J_ij) with i < j
    offset: float = 0.0

    def __post_init__(self):
        seen = set()
        cleaned = []
        for i, j, v in self.couplings:
            if i == j:
                raise ValueError("no self-couplings")
            i, j = (i, j) if i < j else (j, i)
            if (i, j) in seen:
                raise ValueError(f"duplicate coupling ({i},{j})")
            if i < 0 or j >= self.n:
                raise ValueError("coupling index out of range")
            seen.add((i, j))
            if v != 0.0:
                cleaned.append((i, j, float(v)))
        object.__setattr__(self, "couplings", tuple(sorted(cleaned)))
        object.__setattr__(self, "h", tuple(float(v) for v in self.h))

    @property
    def n(self) -> int:
        return len(self.h)

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple((i, j) for i, j, _ in self.couplings)

    def coupling_map(self) -> dict[tuple[int, int], float]:
        return {(i, j): v for i, j, v in self.couplings}

    def neighbors(self) -> list[dict[int, float]]:
        """Adjacency with coupling values, symmetric view."""
        adj: list[dict[int, float]] = [{} for _ in range(self.n)]
        for i, j, v in self.couplings:
            adj[i][j] = v
            adj[j][i] = v
        return adj

    def energy(self, x) -> float:
        s = 2 * np.asarray(x, dtype=np.float64) - 1
        e = self.offset + float(np.asarray(self.h) @ s)
        for i, j, v in self.couplings:
            e += v * s[i] * s[j]
        return e

    def energies(self) -> np.ndarray:
        """Diagonal of the Hamiltonian over all 2^n bitstrings (bit r = x_r)."""
        n = self.n
        if n > ENUMERATION_GUARD:
            raise SizeError(f"{n} spins exceeds enumeration guard")
        idx = np.arange(1 << n, dtype=np.int64)
        spins = [2.0 * ((idx >> i) & 1) - 1.0 for i in range(n)]
        e = np.full(1 << n, self.offset)
        for i, hi in enumerate(self.h):
            if hi:
                e += hi * spins[i]
        for i, j, v in self.couplings:
            e += v * spins[i] * spins[j]
        return e

    def to_json(self) -> str:
        return json.dumps(
            {
                "n": self.n,
                "h": list(self.h),
                "J": [[i, j, v] for i, j, v in self.couplings],
                "offset": self.offset,
            },
            indent=2,
        )

    @classmethod
    def from_json(cls, text: str) -> "IsingModel":
        data = json.loads(text)
        h = tuple(data["h"])
        if len(h) != data["n"]:
            raise ValueError("h length disagrees with n")
        return cls(h, tuple((i, j, v) for i, j, v in data["J"]), data["offset"])


@dataclass(frozen=True)
class WeightFactor:
    """Balance factor f with the resolved integer weight pair (mu1, mu2)."""

    f: float
    mu1: int
    mu2: int

    def __post_init__(self):
        if self.f == INFINITY:
            if (self.mu1, self.mu2) != (0, 1):
                raise ValueError("f=inf requires (mu1, mu2) = (0, 1)")
        else:
            if self.f <= 0:
                raise ValueError("f must be positive")
            if self.mu1 != 1 or self.mu2 < 1:
                raise ValueError("finite f requires mu1 = 1 and mu2 >= 1")


def map_to_ising(inst: SetPartitioningInstance, mu1: int, mu2: int) -> IsingModel:
    """Penalty-mapped Hamiltonian with weights mu1 (objective) and mu2 (constraints)."""
    if mu2 < 1:
        raise ValueError("mu2 must be >= 1")
    if mu1 < 0:
        raise ValueError("mu1 must be >= 0")
    n = inst.n_routes
    cover_count = np.zeros(inst.n_flights)  # n_f
    for flights in inst.routes:
        cover_count[list(flights)] += 1
    b = np.asarray(inst.b, dtype=np.float64)
    h = np.zeros(n)
    for r, flights in enumerate(inst.routes):
        fl = list(flights)
        h[r] = mu1 * inst.costs[r] / 2.0 + mu2 * float(
            np.sum(cover_count[fl] / 2.0 - b[fl])
        )
    couplings: dict[tuple[int, int], float] = {}
    flight_sets = [set(fl) for fl in inst.routes]
    for i in range(n):
        for j in range(i + 1, n):
            shared = len(flight_sets[i] & flight_sets[j])
            if shared:
                couplings[(i, j)] = mu2 * shared / 2.0
    offset = mu1 * sum(inst.costs) / 2.0 + mu2 * float(
        np.sum((cover_count / 2.0 - b) ** 2 + cover_count / 4.0)
    )
    return IsingModel(
        tuple(h), tuple((i, j, v) for (i, j), v in couplings.items()), offset
    )


def resolve_weights(inst: SetPartitioningInstance, f: float) -> tuple[int, int]:
    """Weight pair from the balance factor: (0,1) for f=inf, otherwise
    mu2 = round(f * lambda_max_objective / lambda_max_exact_cover) clamped to >= 1.

    lambda_max of the objective part is sum_r |c_r| / 2 (separable diagonal);
    lambda_max of the constraint part, offset included, equals the maximum
    penalty value over all bitstrings, found by enumeration.
    """
    if f == INFINITY:
        return (0, 1)
    if f <= 0:
        raise ValueError("f must be positive")
    lam_obj = sum(abs(c) for c in inst.costs) / 2.0
    ec = map_to_ising(inst, 0, 1)
    lam_ec = float(np.max(ec.energies()))
    if lam_ec == 0:
        raise ValueError("degenerate instance: constraint Hamiltonian is flat zero")
    # banker's rounding; the notation in use does not pin half-way behavior
    mu2 = int(round(f * lam_obj / lam_ec))
    return (1, max(1, mu2))


def min_gap_ratio(model: IsingModel) -> float:
    """(E_1 - E_0) / E_max: smallest nonzero gap above the ground level,
    as a ratio of the maximum diagonal energy."""
    e = model.energies()
    ground = float(np.min(e))
    above = e[e > ground + 1e-12]
    if above.size == 0:
        raise ValueError("all energies equal: no nonzero gap")
    gap = float(np.min(above)) - ground
    return gap / float(np.max(e))
