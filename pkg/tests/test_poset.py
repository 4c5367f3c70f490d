import random

import pytest
from hypothesis import given, settings, strategies as st

from stablerot.bruteforce import brute_precedence, brute_stable
from stablerot.fixtures import fixture
from stablerot.poset import (
    EnumerationLimitError,
    NotAnIdealError,
    build_poset,
    enumerate_ideals,
    enumerate_stable,
    full_route,
    matching_of,
    meet_join,
    omega,
    poset_to_dot,
    random_route,
)
from stablerot.stability import join_at

from tests.helpers import pair_key
from tests.strategies import instances


def test_inst_a_poset():
    inst = fixture("A")
    inst.reset_calls()
    P = build_poset(inst)
    assert len(P) == 1 and P.hasse == frozenset()
    assert P.xmin == inst.matching([("w1", "f1"), ("w2", "f2")])
    assert P.xmax == inst.matching([("w1", "f2"), ("w2", "f1")])
    assert P.oracle_calls == 6
    assert P.minimal() == P.maximal() == [0]


def test_inst_f_chain():
    inst = fixture("F")
    P = build_poset(inst)
    assert P.hasse == {(0, 1)} and P.closure() == {(0, 1)}
    R0, R1 = P.rotations
    assert R0.plus == inst.matching([("w1", "f3"), ("w2", "f2"), ("w3", "f1")])
    assert R1.minus == R0.plus
    assert enumerate_ideals(P) == [frozenset(), frozenset({0}), frozenset({0, 1})]
    assert not P.is_ideal({1})
    with pytest.raises(NotAnIdealError):
        matching_of(P, {1})


def test_inst_e_route_orders():
    inst = fixture("E")
    first = full_route(inst)
    last = full_route(inst, choose=lambda exposed: exposed[-1])
    assert first.rotations != last.rotations
    assert first.rotation_set == last.rotation_set
    assert first.matchings[-1] == last.matchings[-1]
    P = build_poset(inst)
    assert len(P) == 2 and not P.hasse and len(enumerate_stable(P)) == 4


def test_unique_matching_poset():
    for name in ("B", "C"):
        P = build_poset(fixture(name))
        assert len(P) == 0 and P.xmin == P.xmax
        assert enumerate_stable(P) == [P.xmin]


def test_enumeration_limit():
    P = build_poset(fixture("E"))
    with pytest.raises(EnumerationLimitError):
        enumerate_ideals(P, limit=3)
    assert len(enumerate_ideals(P, limit=4)) == 4


def test_omega_rejects_unstable():
    inst = fixture("A")
    P = build_poset(inst)
    with pytest.raises(ValueError):
        omega(P, inst.matching([("w1", "f1")]))


def test_dot_output():
    text = poset_to_dot(build_poset(fixture("F")))
    assert text.startswith("digraph rotations {") and "r0 -> r1;" in text


@given(instances(), st.integers(0, 2**32))
def test_random_routes_give_one_rotation_set(inst, seed):
    P = build_poset(inst)
    rng = random.Random(seed)
    for _ in range(5):
        route = random_route(inst, rng)
        assert route.rotation_set == set(P.rotations)
        assert route.matchings[-1] == P.xmax


@given(instances())
def test_poset_matches_brute_force(inst):
    rep = brute_stable(inst)
    P = build_poset(inst)
    assert not P.violations
    assert sorted(enumerate_stable(P), key=sorted) == sorted(rep.stable, key=sorted)
    assert {pair_key(R) for R in P.rotations} == rep.rotation_set()
    assert 2 * len(P) <= inst.n_edges
    _, before = brute_precedence(inst, rep)
    mine = {(pair_key(P.rotations[i]), pair_key(P.rotations[j])) for i, j in P.closure()}
    assert mine == before


@given(instances())
def test_hasse_is_a_reduction(inst):
    P = build_poset(inst)
    closure = P.closure()
    for i, j in P.hasse:
        assert i < j
        # no path i -> k -> j through a third rotation
        assert not any((i, k) in closure and (k, j) in closure for k in range(len(P)))


@given(instances())
def test_omega_and_matching_of_are_inverse(inst):
    P = build_poset(inst)
    for I in enumerate_ideals(P):
        assert omega(P, matching_of(P, I)) == I


@settings(max_examples=30)
@given(instances())
def test_meet_join_against_lattice(inst):
    rep = brute_stable(inst)
    P = build_poset(inst)
    for i, X in enumerate(rep.stable):
        for j, Y in enumerate(rep.stable):
            meet, join = meet_join(P, X, Y)
            assert meet == rep.stable[rep.meet[i, j]]
            assert join == rep.stable[rep.join[i, j]]
            # the firm-optimal side of the join is the firms' own choice
            for f in range(len(inst.firms)):
                fe = inst.firm_edges[f]
                assert join & fe == join_at(inst, inst.firms[f].id, X & fe, Y & fe)
