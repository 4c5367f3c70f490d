from itertools import combinations

import pytest
from hypothesis import given, settings

from stablerot.bruteforce import BruteForceCapError, brute_precedence, brute_stable
from stablerot.fixtures import fixture
from stablerot.stability import is_stable

from tests.strategies import instances


def test_inst_a_lattice():
    inst = fixture("A")
    rep = brute_stable(inst)
    assert rep.stable == [inst.matching([("w1", "f1"), ("w2", "f2")]),
                          inst.matching([("w1", "f2"), ("w2", "f1")])]
    assert rep.lattice_min == rep.stable[0] and rep.lattice_max == rep.stable[1]
    assert rep.tested == 16
    assert rep.covers() == [(0, 1)]
    assert rep.leq[0, 1] and not rep.leq[1, 0]
    assert rep.meet[0, 1] == 0 and rep.join[0, 1] == 1
    assert rep.distributive and rep.polarity and rep.unicardinal
    assert rep.cardinalities == {"w1": 1, "w2": 1, "f1": 1, "f2": 1}


def test_product_lattice_precedence():
    rep = brute_stable(fixture("E"))
    assert len(rep.stable) == 4 and len(rep.covers()) == 4
    rots, before = brute_precedence(fixture("E"), rep)
    assert len(rots) == 2 and before == frozenset()


def test_chain_precedence():
    inst = fixture("F")
    rots, before = brute_precedence(inst)
    assert len(rots) == 2 and len(before) == 1
    (a, b), = before
    assert a[0] == b[1]  # the second rotation removes what the first added


def test_cap():
    with pytest.raises(BruteForceCapError):
        brute_stable(fixture("A"), cap=3)


def _naive(inst):
    out = []
    for k in range(inst.n_edges + 1):
        for c in combinations(range(inst.n_edges), k):
            if is_stable(inst, frozenset(c)):
                out.append(frozenset(c))
    return sorted(out, key=sorted)


@settings(max_examples=30)
@given(instances())
def test_agrees_with_naive_enumeration(inst):
    assert brute_stable(inst).stable == _naive(inst)


@given(instances())
def test_lattice_laws(inst):
    rep = brute_stable(inst)
    assert rep.stable and rep.distributive and rep.polarity and rep.unicardinal
