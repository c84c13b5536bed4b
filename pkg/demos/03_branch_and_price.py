"""Branch-and-Price on the bundled 6-flight connection network, with and
without primal heuristics injecting incumbents.

The exact enumeration heuristic and the QAOA pipeline both provide upper
bounds early; a good bound prunes the search tree at the root.

Run:  python3 demos/03_branch_and_price.py
"""

from importlib.resources import files

from qbranch import (
    ConnectionNetwork,
    branch_and_price,
    brute_force_solve,
    full_instance,
    make_exact_heuristic,
    make_qaoa_heuristic,
)


def main():
    net = ConnectionNetwork.from_json(
        files("qbranch.data").joinpath("toy6.json").read_text()
    )
    inst = full_instance(net)
    feas = brute_force_solve(inst)
    print(f"network: {net.n_flights} flights, {inst.n_routes} legal routes, "
          f"{len(feas)} covers, brute-force optimum "
          f"{min(inst.cost(s) for s in feas.solutions)}\n")

    runs = [
        ("no heuristic", None),
        ("exact enumeration", make_exact_heuristic()),
        ("qaoa pipeline", make_qaoa_heuristic(p_max=5, shots=256, seed=0)),
    ]
    print(f"{'heuristic':<18} {'cost':>5} {'nodes':>6} {'heur calls':>11} "
          f"{'origins'}")
    for label, heuristic in runs:
        res = branch_and_price(net, heuristic=heuristic)
        origins = ",".join(sorted(set(res.incumbent_origins)))
        print(f"{label:<18} {res.cost:>5} {res.stats.nodes_created:>6} "
              f"{res.stats.heuristic_calls:>11} {origins}")


if __name__ == "__main__":
    main()
