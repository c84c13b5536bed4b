"""Connection networks: arc derivation, route enumeration, serialization."""

import json

import pytest

from qbranch import (
    ConnectionNetwork,
    Flight,
    SetPartitioningInstance,
    enumerate_routes,
    full_instance,
)


def chain_flights():
    return [
        Flight("A", 0.0, 1.0, 5),
        Flight("B", 2.0, 3.0, 4),
        Flight("C", 4.0, 5.0, 3),
    ]


class TestConstruction:
    def test_flight_validation(self):
        with pytest.raises(ValueError):
            Flight("X", 2.0, 1.0, 1)
        with pytest.raises(ValueError):
            Flight("X", 0.0, 1.0, 1, resource_use=-1.0)

    def test_derived_arcs(self):
        net = ConnectionNetwork.from_flights(chain_flights(), min_turn=0.5)
        assert net.arcs == ((0, 1), (0, 2), (1, 2))
        assert net.arc_costs == (0, 0, 0)

    def test_min_turn_cuts_tight_connection(self):
        net = ConnectionNetwork.from_flights(chain_flights(), min_turn=1.5)
        assert net.arcs == ((0, 2),)

    def test_rejects_backward_arc(self):
        with pytest.raises(ValueError):
            ConnectionNetwork(tuple(chain_flights()), ((1, 0),))

    def test_topological_order(self):
        flights = [Flight("L", 3.0, 4.0, 1), Flight("E", 0.0, 1.0, 1)]
        net = ConnectionNetwork.from_flights(flights)
        assert net.topological_order() == [1, 0]


class TestEnumeration:
    def test_chain_routes(self):
        net = ConnectionNetwork.from_flights(chain_flights(), min_turn=0.5)
        routes = {path: cost for path, cost in enumerate_routes(net)}
        assert routes == {
            (0,): 5, (1,): 4, (2,): 3,
            (0, 1): 9, (0, 2): 8, (1, 2): 7,
            (0, 1, 2): 12,
        }

    def test_arc_costs_add_to_route_cost(self):
        net = ConnectionNetwork.from_flights(
            chain_flights(),
            min_turn=0.5,
            arcs=[(0, 1), (1, 2)],
            arc_costs=[10, 1],
        )
        routes = {path: cost for path, cost in enumerate_routes(net)}
        assert routes[(0, 1)] == 5 + 4 + 10
        assert routes[(0, 1, 2)] == 5 + 4 + 3 + 10 + 1

    def test_resource_limit(self):
        flights = [
            Flight("A", 0.0, 1.0, 1, resource_use=2.0),
            Flight("B", 2.0, 3.0, 1, resource_use=2.0),
        ]
        net = ConnectionNetwork.from_flights(flights, resource_limit=3.0)
        assert {p for p, _ in enumerate_routes(net)} == {(0,), (1,)}


class TestFullInstance:
    def test_chain_instance(self):
        net = ConnectionNetwork.from_flights(chain_flights(), min_turn=0.5)
        inst = full_instance(net)
        assert isinstance(inst, SetPartitioningInstance)
        assert inst.n_routes == 7
        assert inst.n_flights == 3

    def test_duplicate_flight_sets_keep_cheapest(self):
        # two parallel arcs produce routes over the same flights at
        # different costs; only the cheaper realization survives
        flights = [Flight("A", 0.0, 1.0, 5), Flight("B", 2.0, 3.0, 4)]
        net_cheap = ConnectionNetwork.from_flights(
            flights, arcs=[(0, 1)], arc_costs=[0]
        )
        net_costly = ConnectionNetwork.from_flights(
            flights, arcs=[(0, 1)], arc_costs=[7]
        )
        assert dict(zip(full_instance(net_cheap).routes,
                        full_instance(net_cheap).costs))[(0, 1)] == 9
        assert dict(zip(full_instance(net_costly).routes,
                        full_instance(net_costly).costs))[(0, 1)] == 16


class TestSerialization:
    def test_roundtrip(self):
        net = ConnectionNetwork.from_flights(
            chain_flights(), min_turn=0.5,
            arcs=[(0, 1), (1, 2)], arc_costs=[2, 0],
        )
        again = ConnectionNetwork.from_json(net.to_json())
        assert again == net

    def test_two_element_arc_entries_default_to_zero_cost(self):
        text = json.dumps({
            "flights": [
                {"id": "A", "dep": 0.0, "arr": 1.0, "cost": 5},
                {"id": "B", "dep": 2.0, "arr": 3.0, "cost": 4},
            ],
            "arcs": [["A", "B"]],
            "min_turn": 0.5,
            "resource_limit": None,
        })
        net = ConnectionNetwork.from_json(text)
        assert net.arcs == ((0, 1),)
        assert net.arc_costs == (0,)
        assert net.resource_limit == float("inf")

    def test_resource_limit_roundtrip(self):
        flights = [Flight("A", 0.0, 1.0, 1, resource_use=1.0)]
        net = ConnectionNetwork.from_flights(flights, resource_limit=4.5)
        assert ConnectionNetwork.from_json(net.to_json()).resource_limit == 4.5
