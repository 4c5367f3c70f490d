import random
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from stablerot.bruteforce import brute_stable
from stablerot.fixtures import fixture
from stablerot.instance import InstanceError
from stablerot.maxflow import FlowNetwork
from stablerot.mincost import (
    SINK,
    SOURCE,
    as_rational,
    closure_network,
    cost_vector,
    load_costs,
    matching_cost,
    max_flow,
    min_cost_stable,
    min_weight_ideal,
)
from stablerot.poset import build_poset

from tests.strategies import instances


@given(st.integers(0, 2**32))
def test_dinic_agrees_with_networkx(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 8)
    net, g = FlowNetwork(), nx.DiGraph()
    g.add_nodes_from(range(n))
    for v in range(n):
        net.node(v)
    for _ in range(rng.randint(0, 20)):
        u, v = rng.sample(range(n), 2)
        c = rng.randint(1, 9)
        net.add_arc(u, v, c)
        if g.has_edge(u, v):
            g[u][v]["capacity"] += c
        else:
            g.add_edge(u, v, capacity=c)
    assert net.max_flow(0, n - 1) == nx.maximum_flow_value(g, 0, n - 1)
    side = net.reachable_from(0)
    cut = sum(c for u, v, c in net.arcs() if u in side and v not in side)
    assert cut == nx.maximum_flow_value(g, 0, n - 1)


def test_fraction_capacities():
    net = FlowNetwork()
    net.add_arc("a", "b", Fraction(1, 3))
    net.add_arc("a", "b", Fraction(1, 6))
    assert net.max_flow("a", "b") == Fraction(1, 2)


def test_single_rotation_cuts():
    P = build_poset(fixture("A"))
    value, A = max_flow(closure_network(P, [-4]))
    assert value == 0 and A == {SOURCE}  # the ideal {0} weighs -4 = value + (-4)
    value, A = max_flow(closure_network(P, [4]))
    assert value == 0 and A == {SOURCE, 0}
    assert SINK not in A


def test_inst_a_costs_pick_xmax():
    inst = fixture("A")
    costs = load_costs(inst, '[{"edge": ["w1", "f2"], "cost": "5"}, {"edge": ["w2", "f1"], "cost": "-10"}]')
    X, total = min_cost_stable(inst, costs)
    assert X == inst.matching([("w1", "f2"), ("w2", "f1")])
    assert total == -5


def test_chain_weights():
    P = build_poset(fixture("F"))
    sol = min_weight_ideal(P, [3, -5])
    assert sol.ideal == {0, 1} and sol.weight == -2
    sol = min_weight_ideal(P, [3, -2])
    assert sol.ideal == frozenset() and sol.weight == 0


def test_zero_costs_return_xmin():
    for name in ("A", "E", "F"):
        inst = fixture(name)
        X, total = min_cost_stable(inst, [0] * inst.n_edges)
        assert X == build_poset(inst).xmin and total == 0


def test_cost_parsing():
    assert as_rational("2.5") == Fraction(5, 2)
    assert as_rational(-3) == -3
    with pytest.raises(ValueError):
        as_rational(True)
    with pytest.raises(ValueError):
        as_rational(1.5)
    with pytest.raises(KeyError):
        cost_vector(3, {0: 1, 1: 2})
    with pytest.raises(KeyError):
        cost_vector(3, [1, 2])
    inst = fixture("A")
    assert load_costs(inst, []) == [0] * 4
    for bad in ('{"a": 1}', '[{"edge": ["w1", "f1"]}]', '[{"edge": "w1", "cost": 1}]',
                '[{"edge": ["w1", "f1"], "cost": "x"}]',
                '[{"edge": ["w1", "f1"], "cost": 1}, {"edge": ["w1", "f1"], "cost": 2}]'):
        with pytest.raises(InstanceError):
            load_costs(inst, bad)


@given(instances(), st.integers(0, 2**32))
def test_min_cost_against_brute_force(inst, seed):
    rng = random.Random(seed)
    costs = [Fraction(rng.randint(-20, 20), rng.randint(1, 4)) for _ in range(inst.n_edges)]
    rep = brute_stable(inst)
    best = min(matching_cost(costs, X) for X in rep.stable)
    X, total = min_cost_stable(inst, costs)
    assert total == best and X in rep.stable
    # the minimal optimal ideal: no cheaper-or-equal stable matching sits below X for firms
    ties = [Y for Y in rep.stable if matching_cost(costs, Y) == best]
    i = rep.index(X)
    assert all((i, rep.index(Y)) in rep.leq for Y in ties)
