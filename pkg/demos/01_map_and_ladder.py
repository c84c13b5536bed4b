"""Generate a small Set Partitioning instance, map it to an Ising
Hamiltonian, and watch the interpolation ladder push the success
probability toward 1.

Run:  python3 demos/01_map_and_ladder.py
"""

import math

from qbranch import (
    brute_force_solve,
    generate,
    map_to_ising,
    min_gap_ratio,
    resolve_weights,
    run_ladder,
    simplify_costs,
)


def main():
    inst = simplify_costs(generate(6, 2, 6, seed=11), seed=11)
    feas = brute_force_solve(inst)
    print(f"instance: {inst.n_routes} routes over {inst.n_flights} flights, "
          f"{len(feas)} feasible covers, optimum cost "
          f"{min(inst.cost(s) for s in feas.solutions)}")

    for f in (math.inf, 10.0):
        mu1, mu2 = resolve_weights(inst, f)
        model = map_to_ising(inst, mu1, mu2)
        print(f"\nf = {f}: weights (mu1, mu2) = ({mu1}, {mu2}), "
              f"{len(model.couplings)} couplings, "
              f"min gap ratio {min_gap_ratio(model):.4f}")
        ladder = run_ladder(model, 12, feas, seed=0)
        print(f"{'p':>3} {'<E>':>10} {'P_EC':>8} {'P_SP':>8}")
        for rec in ladder.records:
            print(f"{rec.depth:>3} {rec.expectation:>10.4f} "
                  f"{rec.p_exact_cover:>8.4f} {rec.p_set_partitioning:>8.4f}")


if __name__ == "__main__":
    main()
