"""Ideal QAOA statevector simulation for diagonal Ising cost Hamiltonians.

The state over n qubits is a complex vector of 2^n amplitudes; index i
encodes the bitstring x through its binary expansion with route 0 as the
least significant bit.  A depth-p circuit alternates a diagonal phase pass
exp(-i gamma_k E(x)) with a product mixing pass exp(-i beta_k sigma_x) per
qubit, applied to the uniform superposition.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .ilp import FeasibleSet, SizeError
from .ising import IsingModel

# complex-double statevector of 2^24 amplitudes is ~256 MiB
STATEVECTOR_GUARD = 24


class SuccessMode(Enum):
    EXACT_COVER = "exact_cover"
    SET_PARTITIONING = "set_partitioning"


@dataclass(frozen=True)
class AngleSchedule:
    """Variational angles (gamma_1..p, beta_1..p); gamma in [0, 2pi], beta in [0, pi]."""

    gamma: tuple[float, ...]
    beta: tuple[float, ...]

    def __post_init__(self):
        gamma = tuple(float(g) for g in self.gamma)
        beta = tuple(float(b) for b in self.beta)
        if len(gamma) != len(beta) or not gamma:
            raise ValueError("gamma and beta must have equal positive length")
        if any(not (0.0 <= g <= 2 * math.pi) for g in gamma):
            raise ValueError("gamma outside [0, 2pi]")
        if any(not (0.0 <= b <= math.pi) for b in beta):
            raise ValueError("beta outside [0, pi]")
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "beta", beta)

    @property
    def p(self) -> int:
        return len(self.gamma)

    def as_array(self) -> np.ndarray:
        return np.concatenate([self.gamma, self.beta])

    @classmethod
    def from_array(cls, values) -> "AngleSchedule":
        values = np.asarray(values, dtype=np.float64)
        p = values.size // 2
        return cls(tuple(values[:p]), tuple(values[p:]))


@dataclass(frozen=True)
class StateVector:
    """Normalized 2^n amplitude vector; bit r of the index is x_r."""

    n: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amp = np.asarray(self.amplitudes, dtype=np.complex128)
        if amp.shape != (1 << self.n,):
            raise ValueError("amplitude vector has wrong length")
        if abs(np.linalg.norm(amp) - 1.0) > 1e-12:
            raise ValueError("state not normalized")
        object.__setattr__(self, "amplitudes", amp)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


# Up to this many qubits the mixing pass goes through a cached dense
# Walsh-Hadamard matrix (diagonalizing the transverse field); beyond it the
# matrix would not fit and per-qubit butterflies take over.
_DENSE_MIX_LIMIT = 10


@functools.lru_cache(maxsize=4)
def _hadamard_basis(n: int) -> tuple[np.ndarray, np.ndarray]:
    """(W, m) with W the n-qubit Hadamard transform and m the eigenvalues
    of sum_q sigma_x^(q) in that basis: m(x) = n - 2 popcount(x)."""
    w = np.array([[1.0]])
    h = np.array([[1.0, 1.0], [1.0, -1.0]]) / math.sqrt(2.0)
    for _ in range(n):
        w = np.kron(h, w)
    idx = np.arange(1 << n, dtype=np.int64)
    popcount = np.zeros(1 << n, dtype=np.int64)
    for q in range(n):
        popcount += (idx >> q) & 1
    return w, (n - 2 * popcount).astype(np.float64)


def _mix_pass(amp: np.ndarray, n: int, beta: float) -> np.ndarray:
    """Apply exp(-i beta sigma_x) on every qubit via in-place butterflies.

    Mutates and returns `amp`; callers pass a freshly phased copy."""
    c = math.cos(beta)
    s = -1j * math.sin(beta)
    for q in range(n):
        view = amp.reshape(-1, 2, 1 << q)
        a0 = view[:, 0, :].copy()
        a1 = view[:, 1, :]
        view[:, 0, :] = c * a0 + s * a1
        view[:, 1, :] = s * a0 + c * a1
    return amp


def evolve(
    model: IsingModel, angles: AngleSchedule, energies: np.ndarray | None = None
) -> StateVector:
    """Run the depth-p circuit on |+>; a precomputed energy table may be reused."""
    n = model.n
    if n > STATEVECTOR_GUARD:
        raise SizeError(f"{n} qubits exceeds statevector guard {STATEVECTOR_GUARD}")
    if energies is None:
        energies = model.energies()
    amp = np.full(1 << n, 1.0 / math.sqrt(1 << n), dtype=np.complex128)
    if n <= _DENSE_MIX_LIMIT:
        w, mix_eig = _hadamard_basis(n)
        for gamma, beta in zip(angles.gamma, angles.beta):
            amp = amp * np.exp(-1j * gamma * energies)
            if beta != 0.0:  # keep zero-angle layers exactly the identity
                amp = w @ (np.exp(-1j * beta * mix_eig) * (w @ amp))
    else:
        for gamma, beta in zip(angles.gamma, angles.beta):
            amp = amp * np.exp(-1j * gamma * energies)
            amp = _mix_pass(amp, n, beta)
    return StateVector(n, amp)


def expectation(state: StateVector, model: IsingModel) -> float:
    """<H> = sum_x |amp(x)|^2 E(x), offset included."""
    if model.n != state.n:
        raise ValueError("state and model dimensions disagree")
    return float(state.probabilities() @ model.energies())


def expectation_p1_analytic(model: IsingModel, gamma: float, beta: float) -> float:
    """Closed-form depth-one expectation value, triangle terms included."""
    h = model.h
    adj = model.neighbors()
    s2b = math.sin(2 * beta)
    s4b = math.sin(4 * beta)
    total = model.offset

    # field terms: h_i sin(2b) sin(2g h_i) prod_{j~i} cos(2g J_ij)
    for i, hi in enumerate(h):
        prod = 1.0
        for _, jij in adj[i].items():
            prod *= math.cos(2 * gamma * jij)
        total += hi * s2b * math.sin(2 * gamma * hi) * prod

    for i, j, jij in model.couplings:
        nbr_i = adj[i]
        nbr_j = adj[j]
        common = set(nbr_i) & set(nbr_j)
        # exclusive-neighbor cosine products (edge (i,j) itself excluded)
        prod_i = 1.0
        for k, v in nbr_i.items():
            if k != j and k not in common:
                prod_i *= math.cos(2 * gamma * v)
        prod_j = 1.0
        for k, v in nbr_j.items():
            if k != i and k not in common:
                prod_j *= math.cos(2 * gamma * v)
        # triangle-aware bracket over common neighbors
        prod_minus = 1.0
        prod_plus = 1.0
        for p in common:
            prod_minus *= math.cos(2 * gamma * (nbr_i[p] - nbr_j[p]))
            prod_plus *= math.cos(2 * gamma * (nbr_i[p] + nbr_j[p]))
        yy = (
            s2b * s2b
            * prod_i
            * prod_j
            * (
                math.cos(2 * gamma * (h[i] - h[j])) * prod_minus
                - math.cos(2 * gamma * (h[i] + h[j])) * prod_plus
            )
        )
        # yz + zy pieces
        prod_all_i = 1.0
        for k, v in nbr_i.items():
            if k != j:
                prod_all_i *= math.cos(2 * gamma * v)
        prod_all_j = 1.0
        for k, v in nbr_j.items():
            if k != i:
                prod_all_j *= math.cos(2 * gamma * v)
        cross = s4b * math.sin(2 * gamma * jij) * (
            math.cos(2 * gamma * h[i]) * prod_all_i
            + math.cos(2 * gamma * h[j]) * prod_all_j
        )
        total += (jij / 2.0) * (yy + cross)
    return total


def success_probability(
    state: StateVector, feas: FeasibleSet, mode: SuccessMode
) -> float:
    """Probability mass on feasible solutions (EXACT_COVER) or the optimum
    (SET_PARTITIONING)."""
    probs = state.probabilities()

    def index_of(x: tuple[int, ...]) -> int:
        if len(x) != state.n:
            raise ValueError("solution length disagrees with state dimension")
        return sum(bit << r for r, bit in enumerate(x))

    if mode is SuccessMode.SET_PARTITIONING:
        if feas.optimal_index is None:
            raise ValueError("no feasible solutions: optimum undefined")
        return float(probs[index_of(feas.optimum)])
    return float(sum(probs[index_of(x)] for x in feas.solutions))


def sample(state: StateVector, shots: int, seed: int) -> dict[str, int]:
    """Seeded multinomial draw; keys are bitstrings with x_0 first."""
    if shots < 1:
        raise ValueError("shots must be >= 1")
    rng = np.random.default_rng(seed)
    probs = state.probabilities()
    probs = probs / probs.sum()
    counts = rng.multinomial(shots, probs)
    hist: dict[str, int] = {}
    for idx in np.flatnonzero(counts):
        key = "".join(str((int(idx) >> r) & 1) for r in range(state.n))
        hist[key] = int(counts[idx])
    return hist


def bitstring_to_assignment(key: str) -> tuple[int, ...]:
    return tuple(int(ch) for ch in key)
