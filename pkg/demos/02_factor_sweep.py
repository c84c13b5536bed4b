"""Sweep the balance factor f and compare success probabilities.

With f = inf the Hamiltonian ignores costs: the state spreads over all
feasible covers, so the probability of the *optimal* cover is roughly
P_EC / |S|.  A well-chosen finite f concentrates mass on the optimum.

Run:  python3 demos/02_factor_sweep.py
"""

import math

from qbranch import (
    brute_force_solve,
    generate,
    map_to_ising,
    resolve_weights,
    run_ladder,
    simplify_costs,
)


def main():
    inst = simplify_costs(generate(6, 3, 6, seed=1), seed=1)
    feas = brute_force_solve(inst)
    print(f"instance with {len(feas)} covers; depth 25 ladder per factor\n")
    print(f"{'f':>6} {'mu2':>5} {'P_EC':>8} {'P_SP':>8}")
    for f in (math.inf, 1.0, 5.0, 20.0):
        mu1, mu2 = resolve_weights(inst, f)
        model = map_to_ising(inst, mu1, mu2)
        final = run_ladder(model, 25, feas, seed=0).final
        label = "inf" if f == math.inf else f"{f:g}"
        print(f"{label:>6} {mu2:>5} {final.p_exact_cover:>8.4f} "
              f"{final.p_set_partitioning:>8.4f}")


if __name__ == "__main__":
    main()
