"""QAOA integer heuristic over candidate columns."""

import numpy as np
import pytest

from qbranch import Column, check_feasible, qaoa_solve_columns
from qbranch.ilp import SetPartitioningInstance


def columns_from(specs):
    return [Column(fl, cost, "priced") for fl, cost in specs]


class TestQaoaSolveColumns:
    def test_single_cover_found(self):
        # one obvious partition among distractors; sampled covers must
        # include it given a deep-enough ladder
        cols = columns_from(
            [((0, 1), 4), ((2,), 3), ((0, 2), 5), ((1, 2), 6), ((0,), 2)]
        )
        rows = (0, 1, 2)
        out = qaoa_solve_columns(
            cols, 3, (1, 1, 1), rows, f=10.0, p_max=5, shots=256, seed=0
        )
        assert out.solutions
        inst = SetPartitioningInstance(
            3, tuple(c.flights for c in cols), tuple(c.cost for c in cols)
        )
        for assignment, cost in out.solutions:
            assert check_feasible(inst, assignment)
            assert inst.cost(assignment) == cost
        costs = [c for _, c in out.solutions]
        assert costs == sorted(costs)
        assert out.best_feasible_cost == costs[0]

    def test_infeasible_columns_give_empty_outcome(self):
        cols = columns_from([((0,), 2)])  # flight 1 is uncoverable
        out = qaoa_solve_columns(cols, 2, (1, 1), (0, 1), p_max=2, shots=32, seed=0)
        assert out.solutions == ()
        assert out.best_feasible_cost is None

    def test_empty_input(self):
        out = qaoa_solve_columns([], 2, (1, 1), (0, 1))
        assert out.solutions == ()

    def test_truncation_keeps_high_lp_columns(self):
        # guard of 2 with LP mass on the two covering columns: the cover
        # must survive preprocessing and be found
        cols = columns_from([((0,), 9), ((1,), 9), ((0, 1), 50)])
        out = qaoa_solve_columns(
            cols, 2, (1, 1), (0, 1),
            p_max=4, shots=128, seed=0, qubit_guard=2,
            x_values=[1.0, 1.0, 0.0],
        )
        assert out.solutions
        best = out.solutions[0][0]
        assert best == (1, 1, 0)
        assert out.solutions[0][1] == 18

    def test_deterministic(self):
        cols = columns_from([((0, 1), 4), ((0,), 2), ((1,), 3)])
        kw = dict(f=5.0, p_max=3, shots=64, seed=9)
        a = qaoa_solve_columns(cols, 2, (1, 1), (0, 1), **kw)
        b = qaoa_solve_columns(cols, 2, (1, 1), (0, 1), **kw)
        assert a == b

    def test_row_subset(self):
        # flight 0 already covered elsewhere: solve over remaining rows only
        cols = columns_from([((1,), 3), ((2,), 4), ((1, 2), 9)])
        out = qaoa_solve_columns(
            cols, 3, (1, 1, 1), rows=(1, 2), p_max=4, shots=128, seed=1
        )
        assert out.solutions
        assert out.solutions[0][0] == (1, 1, 0)
        assert out.best_feasible_cost == 7
