"""Instance generation: exact solution counts, cost simplification, stats."""

import numpy as np
import pytest

from qbranch import (
    GenerationError,
    SetPartitioningInstance,
    brute_force_solve,
    generate,
    graph_stats,
    simplify_costs,
)


class TestGenerate:
    def test_exact_counts(self):
        for target in (1, 2, 3):
            inst = generate(8, target, 8, seed=1)
            assert inst.n_routes == 8
            assert inst.n_flights == 8
            assert len(brute_force_solve(inst)) == target

    def test_deterministic(self):
        assert generate(6, 2, 6, seed=4) == generate(6, 2, 6, seed=4)

    def test_seed_varies_output(self):
        assert generate(8, 2, 8, seed=0) != generate(8, 2, 8, seed=1)

    def test_rejects_bad_target(self):
        with pytest.raises(ValueError):
            generate(6, 0, 6)
        with pytest.raises(ValueError):
            generate(6, 4, 6)  # above n_routes / 2

    def test_rejects_oversized(self):
        with pytest.raises(ValueError):
            generate(30, 2, 10)


class TestSimplifyCosts:
    def test_shift_example(self):
        # huge offset costs collapse to small distinct ones starting at 1
        inst = SetPartitioningInstance(1, ((0,), (0,)), (1000000, 1000003))
        out = simplify_costs(inst)
        assert out.costs == (1, 4)

    def test_postconditions(self):
        inst = generate(8, 3, 8, seed=7)
        out = simplify_costs(inst, seed=7)
        assert min(out.costs) == 1
        assert len(set(out.costs)) == out.n_routes
        feas = brute_force_solve(out)
        assert len(feas) == 3
        sol_costs = sorted(out.cost(s) for s in feas.solutions)
        assert sol_costs[0] < sol_costs[1]  # unique optimum

    def test_divisor(self):
        inst = SetPartitioningInstance(1, ((0,), (0,)), (100, 110))
        out = simplify_costs(inst, divisor=10)
        assert out.costs == (1, 2)

    def test_structure_preserved(self):
        inst = generate(6, 2, 6, seed=2)
        out = simplify_costs(inst, seed=2)
        assert out.routes == inst.routes
        assert out.b == inst.b

    def test_infeasible_rejected(self):
        inst = SetPartitioningInstance(2, ((0,),), (5,))
        with pytest.raises(ValueError):
            simplify_costs(inst)


class TestGraphStats:
    def test_hand_triangle(self):
        # routes (0,1), (1,2), (0,2): every pair conflicts -> complete graph
        inst = SetPartitioningInstance(3, ((0, 1), (1, 2), (0, 2)), (1, 1, 1))
        avg_degree, density, degrees = graph_stats(inst)
        assert degrees == [2, 2, 2]
        assert avg_degree == pytest.approx(2.0)
        assert density == pytest.approx(1.0)

    def test_disjoint_routes(self):
        inst = SetPartitioningInstance(2, ((0,), (1,)), (1, 1))
        avg_degree, density, degrees = graph_stats(inst)
        assert degrees == [0, 0]
        assert density == 0.0
