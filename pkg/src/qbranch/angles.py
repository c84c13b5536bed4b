"""Variational angle search: global depth-1 optimization, interpolation to
deeper schedules, and bounded local refinement.

Depth 1 is optimized on the cheap closed-form landscape; each deeper depth
starts from a linear interpolation of the previous optimum and is refined
with bounded quasi-Newton descent on the simulated objective.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import differential_evolution, minimize

from .ilp import FeasibleSet
from .ising import IsingModel
from .qaoa import (
    AngleSchedule,
    SuccessMode,
    evolve,
    expectation_p1_analytic,
    success_probability,
)

TWO_PI = 2 * math.pi


@dataclass(frozen=True)
class DepthRecord:
    depth: int
    angles: AngleSchedule
    expectation: float
    p_exact_cover: float | None
    p_set_partitioning: float | None
    evaluations: int
    wallclock: float


@dataclass(frozen=True)
class LadderResult:
    records: tuple[DepthRecord, ...]

    @property
    def final(self) -> DepthRecord:
        return self.records[-1]


def _clip_box(values: np.ndarray) -> np.ndarray:
    p = values.size // 2
    out = values.copy()
    out[:p] = np.clip(out[:p], 0.0, TWO_PI)
    out[p:] = np.clip(out[p:], 0.0, math.pi)
    return out


def optimize_p1_global(
    model: IsingModel, budget: int = 3000, seed: int = 0
) -> tuple[float, float]:
    """Differential evolution over [0, 2pi] x [0, pi] on the analytic depth-1
    landscape, followed by a single local polish."""
    if budget < 50:
        raise ValueError("budget must be >= 50")

    def objective(v):
        return expectation_p1_analytic(model, v[0], v[1])

    popsize = 15
    # DE evaluates ~popsize*dim points per generation plus the init population
    maxiter = max(1, budget // (popsize * 2) - 1)
    result = differential_evolution(
        objective,
        bounds=[(0.0, TWO_PI), (0.0, math.pi)],
        seed=seed,
        popsize=popsize,
        maxiter=maxiter,
        tol=1e-10,
        polish=True,
    )
    gamma, beta = _clip_box(np.asarray(result.x))
    return float(gamma), float(beta)


def interpolate(angles: AngleSchedule) -> AngleSchedule:
    """Depth k -> k+1 starting point: endpoints copied, interior element i
    (1-based) is ((i-1)/k) eta_{i-1} + ((k-i+1)/k) eta_i."""
    k = angles.p

    def stretch(eta: tuple[float, ...]) -> tuple[float, ...]:
        out = [eta[0]]
        for i in range(2, k + 1):
            out.append(((i - 1) / k) * eta[i - 2] + ((k - i + 1) / k) * eta[i - 1])
        out.append(eta[k - 1])
        return tuple(out)

    return AngleSchedule(stretch(angles.gamma), stretch(angles.beta))


class _CountingObjective:
    def __init__(self, model: IsingModel):
        self.model = model
        self.energies = model.energies()
        self.calls = 0

    def __call__(self, v: np.ndarray) -> float:
        self.calls += 1
        state = evolve(self.model, AngleSchedule.from_array(_clip_box(v)), self.energies)
        return float(state.probabilities() @ self.energies)


def local_search(
    model: IsingModel,
    start: AngleSchedule,
    tol: float = 1e-8,
    objective: _CountingObjective | None = None,
) -> AngleSchedule:
    """Bounded L-BFGS-B descent with central finite-difference gradients.

    Never returns a point worse than the start."""
    obj = objective if objective is not None else _CountingObjective(model)
    p = start.p
    bounds = [(0.0, TWO_PI)] * p + [(0.0, math.pi)] * p
    x0 = start.as_array()
    f0 = obj(x0)
    result = minimize(
        obj,
        x0,
        method="L-BFGS-B",
        jac="3-point",
        bounds=bounds,
        options={"gtol": tol, "maxiter": 500},
    )
    if result.fun <= f0 + 1e-12:
        return AngleSchedule.from_array(_clip_box(result.x))
    return start


def run_ladder(
    model: IsingModel,
    p_max: int,
    feas: FeasibleSet | None = None,
    seed: int = 0,
    p1_budget: int = 3000,
    tol: float = 1e-8,
) -> LadderResult:
    """Interpolation ladder: global search at depth 1, then interpolate and
    locally refine for k = 2..p_max, recording metrics at each depth."""
    if p_max < 1:
        raise ValueError("p_max must be >= 1")
    records = []
    energies = model.energies()

    def metrics(angles: AngleSchedule, evals: int, t0: float):
        state = evolve(model, angles, energies)
        exp_val = float(state.probabilities() @ energies)
        p_ec = p_sp = None
        if feas is not None and len(feas) > 0:
            p_ec = success_probability(state, feas, SuccessMode.EXACT_COVER)
            p_sp = success_probability(state, feas, SuccessMode.SET_PARTITIONING)
        return DepthRecord(
            angles.p, angles, exp_val, p_ec, p_sp, evals, time.perf_counter() - t0
        )

    t0 = time.perf_counter()
    gamma1, beta1 = optimize_p1_global(model, budget=p1_budget, seed=seed)
    best = AngleSchedule((gamma1,), (beta1,))
    obj1 = _CountingObjective(model)
    best = local_search(model, best, tol, obj1)
    records.append(metrics(best, p1_budget + obj1.calls, t0))

    for _ in range(2, p_max + 1):
        t0 = time.perf_counter()
        start = interpolate(best)
        obj = _CountingObjective(model)
        best = local_search(model, start, tol, obj)
        records.append(metrics(best, obj.calls, t0))
    return LadderResult(tuple(records))
