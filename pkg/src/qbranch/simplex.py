"""Dense primal simplex for the restricted master LP.

Solves min c.x s.t. A x = b, x >= 0 from a given starting basis (the
big-cost slack identity columns the master always carries).  Dantzig
pricing with a switch to Bland's rule after a cycling threshold.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class SimplexError(RuntimeError):
    pass


@dataclass(frozen=True)
class LpSolution:
    x: np.ndarray
    duals: np.ndarray
    objective: float
    basis: tuple[int, ...]
    iterations: int


def primal_simplex(
    a: np.ndarray,
    b: np.ndarray,
    c: np.ndarray,
    basis: list[int],
    max_iter: int = 10_000,
    bland_after: int = 2_000,
) -> LpSolution:
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    c = np.asarray(c, dtype=np.float64)
    m, n = a.shape
    if len(basis) != m:
        raise ValueError("basis size must equal row count")
    basis = list(basis)
    for it in range(max_iter):
        bmat = a[:, basis]
        try:
            xb = np.linalg.solve(bmat, b)
            duals = np.linalg.solve(bmat.T, c[basis])
        except np.linalg.LinAlgError as exc:
            raise SimplexError("singular basis matrix") from exc
        reduced = c - duals @ a
        reduced[basis] = 0.0
        if it < bland_after:
            entering = int(np.argmin(reduced))
            if reduced[entering] >= -1e-9:
                return _solution(xb, duals, c, basis, n, it)
        else:
            candidates = np.flatnonzero(reduced < -1e-9)
            if candidates.size == 0:
                return _solution(xb, duals, c, basis, n, it)
            entering = int(candidates[0])
        direction = np.linalg.solve(bmat, a[:, entering])
        positive = direction > 1e-10
        if not np.any(positive):
            raise SimplexError("LP is unbounded")
        ratios = np.full(m, np.inf)
        ratios[positive] = xb[positive] / direction[positive]
        leaving = int(np.argmin(ratios))
        basis[leaving] = entering
    raise SimplexError("simplex iteration cap reached")


def _solution(xb, duals, c, basis, n, iterations) -> LpSolution:
    x = np.zeros(n)
    x[basis] = np.maximum(xb, 0.0)
    return LpSolution(
        x=x,
        duals=duals,
        objective=float(c[basis] @ xb),
        basis=tuple(basis),
        iterations=iterations,
    )
