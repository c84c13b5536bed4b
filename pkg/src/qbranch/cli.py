"""Command-line surface: generate instances, run the QAOA ladder, sweep the
balance factor, and run hybrid Branch-and-Price.

Exit codes: 0 success (including a reported-infeasible solve), 2 usage
errors, 3 resource-guard violations.
"""

from __future__ import annotations

import csv
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import click

from .angles import run_ladder
from .colgen import (
    SearchMode,
    branch_and_price,
    make_exact_heuristic,
    make_qaoa_heuristic,
)
from .generate import generate as generate_instance
from .generate import graph_stats, simplify_costs
from .ilp import SetPartitioningInstance, SizeError, brute_force_solve, gf2_solution_bound
from .ising import map_to_ising, resolve_weights
from .network import ConnectionNetwork
from .qaoa import STATEVECTOR_GUARD

EXIT_GUARD = 3


def _parse_factor(value: str) -> float:
    if value.strip().lower() in ("inf", "infinity"):
        return math.inf
    f = float(value)
    if f <= 0:
        raise click.BadParameter("factor must be positive or 'inf'")
    return f


@click.group()
def main():
    """Hybrid quantum-classical Set Partitioning toolkit."""


@main.command("generate")
@click.option("--routes", type=int, required=True)
@click.option("--solutions", type=int, required=True)
@click.option("--flights", type=int, default=None, help="defaults to --routes")
@click.option("--seed", type=int, default=0)
@click.option("--out", type=click.Path(), default="instance.json")
def cmd_generate(routes, solutions, flights, seed, out):
    """Generate an instance with an exact feasible-solution count."""
    if flights is None:
        flights = routes
    if not (1 <= solutions <= routes // 2):
        raise click.BadParameter("--solutions must lie in [1, routes/2]")
    inst = generate_instance(routes, solutions, flights, seed)
    inst = simplify_costs(inst, seed)
    Path(out).write_text(inst.to_json())
    feas = brute_force_solve(inst)
    avg_deg, density, degrees = graph_stats(inst)
    stats = {
        "n_routes": inst.n_routes,
        "n_flights": inst.n_flights,
        "n_feasible": len(feas),
        "gf2_bound": gf2_solution_bound(inst),
        "avg_degree": avg_deg,
        "density": density,
        "degrees": degrees,
    }
    stats_path = Path(out).with_suffix(".stats.json")
    stats_path.write_text(json.dumps(stats, indent=2))
    click.echo(f"wrote {out} and {stats_path}")


def _run_one_ladder(inst, f, pmax, seed):
    mu1, mu2 = resolve_weights(inst, f)
    model = map_to_ising(inst, mu1, mu2)
    feas = brute_force_solve(inst)
    return run_ladder(model, pmax, feas, seed), mu1, mu2


@main.command("qaoa")
@click.option("--instance", type=click.Path(exists=True), required=True)
@click.option("--f", "factor", default="inf", help="balance factor (float or 'inf')")
@click.option("--pmax", type=int, default=5)
@click.option("--seed", type=int, default=0)
@click.option("--out", type=click.Path(), default="ladder.csv")
def cmd_qaoa(instance, factor, pmax, seed, out):
    """Optimize angles depth by depth and write the per-depth trace CSV."""
    f = _parse_factor(factor)
    inst = SetPartitioningInstance.from_json(Path(instance).read_text())
    if inst.n_routes > STATEVECTOR_GUARD:
        click.echo(f"instance exceeds the {STATEVECTOR_GUARD}-qubit guard", err=True)
        sys.exit(EXIT_GUARD)
    ladder, _, _ = _run_one_ladder(inst, f, pmax, seed)
    with open(out, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["depth", "expectation", "p_exact_cover", "p_set_partitioning",
             "wallclock", "evaluations", "gamma", "beta"]
        )
        for rec in ladder.records:
            writer.writerow(
                [rec.depth, rec.expectation, rec.p_exact_cover,
                 rec.p_set_partitioning, rec.wallclock, rec.evaluations,
                 " ".join(map(str, rec.angles.gamma)),
                 " ".join(map(str, rec.angles.beta))]
            )
    click.echo(f"wrote {out}")


@main.command("sweep")
@click.option("--instance", "instances", type=click.Path(exists=True),
              multiple=True, required=True)
@click.option("--f", "factors", multiple=True, default=("inf",))
@click.option("--pmax", type=int, default=10)
@click.option("--seed", type=int, default=0)
@click.option("--out", type=click.Path(), default="sweep.csv")
def cmd_sweep(instances, factors, pmax, seed, out):
    """Run the ladder for each (instance, factor) cell; resumable by row.

    Cells run in parallel when QBRANCH_THREADS > 1; a single writer appends
    finished rows in deterministic (instance, factor) order."""
    factor_values = [_parse_factor(f) for f in factors]
    done = set()
    out_path = Path(out)
    if out_path.exists():
        with open(out_path, newline="") as fh:
            for row in csv.DictReader(fh):
                done.add((row["instance"], row["f"]))
    cells = []
    for path in instances:
        inst = SetPartitioningInstance.from_json(Path(path).read_text())
        if inst.n_routes > STATEVECTOR_GUARD:
            click.echo(f"{path}: exceeds qubit guard", err=True)
            sys.exit(EXIT_GUARD)
        n_feasible = len(brute_force_solve(inst))
        for f_str, f in zip(factors, factor_values):
            if (path, f_str) not in done:
                cells.append((path, inst, n_feasible, f_str, f))

    def run_cell(cell):
        path, inst, n_feasible, f_str, f = cell
        ladder, mu1, mu2 = _run_one_ladder(inst, f, pmax, seed)
        final = ladder.final
        return [path, inst.n_routes, n_feasible, pmax, f_str, mu1, mu2,
                final.p_exact_cover, final.p_set_partitioning]

    threads = int(os.environ.get("QBRANCH_THREADS", "1"))
    if threads > 1 and len(cells) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run_cell, cells))
    else:
        results = [run_cell(cell) for cell in cells]
    mode = "a" if done else "w"
    with open(out_path, mode, newline="") as fh:
        writer = csv.writer(fh)
        if not done:
            writer.writerow(
                ["instance", "n_routes", "n_feasible", "p", "f",
                 "mu1", "mu2", "p_exact_cover", "p_set_partitioning"]
            )
        writer.writerows(results)
    click.echo(f"wrote {out}")


@main.command("bnp")
@click.option("--network", type=click.Path(exists=True), required=True)
@click.option("--heuristic", "heuristic_name",
              type=click.Choice(["none", "mock-exact", "qaoa"]), default="none")
@click.option("--mode", type=click.Choice(["dive", "full-branch"]),
              default="full-branch")
@click.option("--f", "factor", default="10")
@click.option("--pmax", type=int, default=6)
@click.option("--shots", type=int, default=256)
@click.option("--seed", type=int, default=0)
@click.option("--threshold", type=float, default=None)
@click.option("--out", type=click.Path(), default="bnp_report.json")
def cmd_bnp(network, heuristic_name, mode, factor, pmax, shots, seed, threshold, out):
    """Run (hybrid) Branch-and-Price on a network file and write a report."""
    net = ConnectionNetwork.from_json(Path(network).read_text())
    heuristic = None
    if heuristic_name == "mock-exact":
        heuristic = make_exact_heuristic()
    elif heuristic_name == "qaoa":
        heuristic = make_qaoa_heuristic(
            f=_parse_factor(factor), p_max=pmax, shots=shots, seed=seed
        )
    search_mode = SearchMode.DIVE if mode == "dive" else SearchMode.FULL_BRANCH
    try:
        result = branch_and_price(
            net, heuristic=heuristic, mode=search_mode, threshold=threshold
        )
    except SizeError as exc:
        click.echo(str(exc), err=True)
        sys.exit(EXIT_GUARD)
    report = {
        "status": result.status,
        "cost": result.cost,
        "incumbent": [list(r) for r in result.incumbent] if result.incumbent else None,
        "incumbent_origins": list(result.incumbent_origins),
        "stats": vars(result.stats),
    }
    Path(out).write_text(json.dumps(report, indent=2))
    click.echo(f"status={result.status} cost={result.cost}; wrote {out}")


if __name__ == "__main__":
    main()
