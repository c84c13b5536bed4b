"""Flight connection networks for the pricing problem.

A network is a DAG of flights with time-forward connection arcs, a virtual
source before every flight and a virtual sink after every flight.  A route
is any source-to-sink flight path whose cumulative resource use stays within
the limit; its cost is the sum of its flight costs plus the connection cost
of each arc it uses (arc costs default to zero).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .ilp import SetPartitioningInstance


@dataclass(frozen=True)
class Flight:
    id: str
    dep: float
    arr: float
    cost: int
    resource_use: float = 0.0

    def __post_init__(self):
        if self.arr <= self.dep:
            raise ValueError(f"flight {self.id}: arrival must be after departure")
        if self.resource_use < 0:
            raise ValueError(f"flight {self.id}: negative resource use")


@dataclass(frozen=True)
class ConnectionNetwork:
    """Flights with legal-connection arcs (index pairs, optional connection
    cost) and one cumulative resource."""

    flights: tuple[Flight, ...]
    arcs: tuple[tuple[int, int], ...]
    min_turn: float = 0.0
    resource_limit: float = float("inf")
    arc_costs: tuple[int, ...] = ()

    def __post_init__(self):
        n = len(self.flights)
        if n == 0:
            raise ValueError("network needs at least one flight")
        arcs = tuple(self.arcs)
        costs = tuple(self.arc_costs) if self.arc_costs else tuple([0] * len(arcs))
        if len(costs) != len(arcs):
            raise ValueError("arc_costs length mismatch")
        for i, j in arcs:
            if not (0 <= i < n and 0 <= j < n) or i == j:
                raise ValueError(f"bad arc ({i}, {j})")
            if self.flights[i].arr > self.flights[j].dep:
                raise ValueError(
                    f"arc ({i}, {j}) is not time-forward: "
                    f"{self.flights[i].arr} > {self.flights[j].dep}"
                )
        order = sorted(range(len(arcs)), key=lambda k: arcs[k])
        object.__setattr__(self, "arcs", tuple(arcs[k] for k in order))
        object.__setattr__(self, "arc_costs", tuple(int(costs[k]) for k in order))

    @property
    def n_flights(self) -> int:
        return len(self.flights)

    @classmethod
    def from_flights(
        cls,
        flights,
        min_turn: float = 0.0,
        resource_limit: float = float("inf"),
        arcs=None,
        arc_costs=None,
    ) -> "ConnectionNetwork":
        """Derive arcs from times when no explicit list is given:
        f -> g allowed iff arr(f) + min_turn <= dep(g)."""
        flights = tuple(flights)
        if arcs is None:
            arcs = tuple(
                (i, j)
                for i, f in enumerate(flights)
                for j, g in enumerate(flights)
                if i != j and f.arr + min_turn <= g.dep
            )
        return cls(flights, tuple(arcs), min_turn, resource_limit, tuple(arc_costs or ()))

    def successors(self) -> list[list[tuple[int, int]]]:
        """Outgoing (next flight, connection cost) per flight."""
        succ: list[list[tuple[int, int]]] = [[] for _ in self.flights]
        for (i, j), cost in zip(self.arcs, self.arc_costs):
            succ[i].append((j, cost))
        return succ

    def topological_order(self) -> list[int]:
        """Flights by departure time (times are forward along arcs)."""
        return sorted(range(self.n_flights), key=lambda i: (self.flights[i].dep, i))

    def to_json(self) -> str:
        limit = self.resource_limit
        return json.dumps(
            {
                "flights": [
                    {
                        "id": f.id,
                        "dep": f.dep,
                        "arr": f.arr,
                        "cost": f.cost,
                        "resource_use": f.resource_use,
                    }
                    for f in self.flights
                ],
                "arcs": [
                    [self.flights[i].id, self.flights[j].id, cost]
                    for (i, j), cost in zip(self.arcs, self.arc_costs)
                ],
                "min_turn": self.min_turn,
                "resource_limit": None if limit == float("inf") else limit,
            },
            indent=2,
        )

    @classmethod
    def from_json(cls, text: str) -> "ConnectionNetwork":
        data = json.loads(text)
        flights = tuple(
            Flight(
                str(f["id"]),
                f["dep"],
                f["arr"],
                f["cost"],
                f.get("resource_use", 0.0),
            )
            for f in data["flights"]
        )
        limit = data.get("resource_limit")
        if limit is None:
            limit = float("inf")
        arcs = None
        arc_costs = None
        if data.get("arcs") is not None:
            index = {f.id: i for i, f in enumerate(flights)}
            arcs = []
            arc_costs = []
            for entry in data["arcs"]:
                arcs.append((index[str(entry[0])], index[str(entry[1])]))
                arc_costs.append(entry[2] if len(entry) > 2 else 0)
        return cls.from_flights(
            flights, data.get("min_turn", 0.0), limit, arcs, arc_costs
        )


def enumerate_routes(net: ConnectionNetwork) -> list[tuple[tuple[int, ...], int]]:
    """All resource-feasible routes as (flight path tuple, cost); exponential,
    for toy networks and oracles only."""
    succ = net.successors()
    routes: list[tuple[tuple[int, ...], int]] = []

    def extend(path: list[int], cost: int, used: float):
        routes.append((tuple(path), cost))
        for j, arc_cost in succ[path[-1]]:
            r = used + net.flights[j].resource_use
            if r <= net.resource_limit:
                extend(path + [j], cost + net.flights[j].cost + arc_cost, r)

    for i in range(net.n_flights):
        if net.flights[i].resource_use <= net.resource_limit:
            extend([i], net.flights[i].cost, net.flights[i].resource_use)
    return routes


def full_instance(net: ConnectionNetwork) -> SetPartitioningInstance:
    """Set Partitioning instance over every legal route (oracle-sized only).

    Duplicate flight sets keep their cheapest realization."""
    best: dict[tuple[int, ...], int] = {}
    for path, cost in enumerate_routes(net):
        key = tuple(sorted(path))
        if key not in best or cost < best[key]:
            best[key] = cost
    keys = sorted(best)
    return SetPartitioningInstance(
        net.n_flights, tuple(keys), tuple(best[k] for k in keys)
    )
