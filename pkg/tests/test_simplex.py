"""Primal simplex: hand LP, scipy cross-check, duality identities."""

import numpy as np
import pytest
from scipy.optimize import linprog

from qbranch import SimplexError, primal_simplex


def with_slacks(a, b, c, big_m):
    """Equality-form LP augmented with identity slack columns and a big-M
    cost, giving the starting basis the solver expects."""
    m, n = a.shape
    a_full = np.hstack([a, np.eye(m)])
    c_full = np.concatenate([c, np.full(m, big_m)])
    basis = list(range(n, n + m))
    return a_full, b, c_full, basis


class TestHandLp:
    def test_two_by_two(self):
        # min 2x + 3y s.t. x + y = 4, x - y = 0 -> x = y = 2, objective 10
        a = np.array([[1.0, 1.0], [1.0, -1.0]])
        b = np.array([4.0, 0.0])
        c = np.array([2.0, 3.0])
        af, bf, cf, basis = with_slacks(a, b, c, 100.0)
        sol = primal_simplex(af, bf, cf, basis)
        assert sol.objective == pytest.approx(10.0)
        assert sol.x[:2] == pytest.approx([2.0, 2.0])
        # duals solve B^T pi = c_B: pi1 + pi2 = 2, pi1 - pi2 = 3
        assert sol.duals == pytest.approx([2.5, -0.5])

    def test_degenerate_choice(self):
        # min x1 + x2 over x1 + x2 = 1 picks either unit vector at cost 1
        a = np.array([[1.0, 1.0]])
        af, bf, cf, basis = with_slacks(a, np.array([1.0]), np.array([1.0, 1.0]), 50.0)
        sol = primal_simplex(af, bf, cf, basis)
        assert sol.objective == pytest.approx(1.0)

    def test_unbounded_detected(self):
        # min -x with a free direction: x - y = 0, both can grow
        a = np.array([[1.0, -1.0]])
        af, bf, cf, basis = with_slacks(
            a, np.array([0.0]), np.array([-1.0, 0.0]), 50.0
        )
        with pytest.raises(SimplexError):
            primal_simplex(af, bf, cf, basis)


class TestAgainstScipy:
    def test_random_covering_lps(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            m = int(rng.integers(2, 6))
            n = int(rng.integers(m, 12))
            a = (rng.random((m, n)) < 0.5).astype(float)
            a[rng.integers(0, m), :] = 1.0  # keep the system feasible-ish
            b = np.ones(m)
            c = rng.integers(1, 20, n).astype(float)
            big_m = float(c.sum() + 1)
            af, bf, cf, basis = with_slacks(a, b, c, big_m)
            sol = primal_simplex(af, bf, cf, basis)
            ref = linprog(cf, A_eq=af, b_eq=bf, bounds=(0, None), method="highs")
            assert ref.status == 0
            assert sol.objective == pytest.approx(ref.fun, abs=1e-7)

    def test_duality_identities(self):
        rng = np.random.default_rng(8)
        for _ in range(20):
            m = int(rng.integers(2, 5))
            n = int(rng.integers(m, 10))
            a = (rng.random((m, n)) < 0.6).astype(float)
            b = np.ones(m)
            c = rng.integers(1, 15, n).astype(float)
            af, bf, cf, basis = with_slacks(a, b, c, float(c.sum() + 1))
            sol = primal_simplex(af, bf, cf, basis)
            # strong duality and dual feasibility at termination
            assert sol.objective == pytest.approx(float(bf @ sol.duals), abs=1e-7)
            reduced = cf - sol.duals @ af
            assert float(reduced.min()) >= -1e-9
            # primal feasibility
            assert af @ sol.x == pytest.approx(bf, abs=1e-8)
            assert float(sol.x.min()) >= -1e-10
