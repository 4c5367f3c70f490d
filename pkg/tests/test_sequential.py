from hypothesis import given, settings

from stablerot.bruteforce import brute_precedence, brute_stable
from stablerot.choice import verify_axioms
from stablerot.fixtures import fixture, smodel_fixture
from stablerot.generators import make_smodel_document
from stablerot.instance import dumps_instance, instance_to_dict, load_instance, load_smodel
from stablerot.poset import build_poset, enumerate_stable
from stablerot.sequential import (
    project_matching,
    project_poset,
    replicate,
    smodel_stable_set,
)

from tests.strategies import smodels


def test_unit_rank_is_identity():
    # every worker with a single order, firms linear: the reduction is a relabeling
    doc = make_smodel_document(
        {"w1": [["f1", "f2"]], "w2": [["f2", "f1"]]},
        {"f1": ("linear", 1, ["w2", "w1"]), "f2": ("linear", 1, ["w1", "w2"])},
    )
    s = load_smodel(doc)
    inst, rmap = replicate(s)
    assert inst.n_edges == s.n_edges
    assert rmap.forward == tuple(range(s.n_edges))
    assert [w.id for w in inst.workers] == ["w1#1", "w2#1"]
    assert smodel_stable_set(s) == sorted(brute_stable(s).stable, key=sorted)
    a = brute_stable(fixture("A")).stable
    assert len(smodel_stable_set(s)) == len(a) == 2


def test_replicated_structure():
    s = smodel_fixture("G")
    inst, rmap = replicate(s)
    assert [w.id for w in inst.workers] == ["w1#1", "w1#2", "w2#1", "w3#1"]
    assert all(w.quota == 1 for w in inst.workers)
    assert inst.n_edges == sum(w.quota * len(s.worker_edges[k]) for k, w in enumerate(s.workers))
    for e, fiber in enumerate(rmap.fibers):
        assert [rmap.copy_index[c] for c in fiber] == list(range(1, len(fiber) + 1))
        assert all(rmap.forward[c] == e for c in fiber)
    # copy i ranks edges by the i-th order of the worker
    w1 = s.workers[0]
    for i in (1, 2):
        pref = inst.workers[i - 1].pref
        assert [rmap.forward[c] for c in pref] == list(w1.orders[i - 1])


def test_firm_keeps_lowest_copy():
    s = smodel_fixture("G")
    inst, rmap = replicate(s)
    e = s.edge_of("w1", "f2")
    c1, c2 = rmap.fibers[e]
    f2 = inst.firms[1].cf
    assert f2.choose({c1, c2}) == {c1}
    assert f2.choose({c2}) == {c2}


def test_fixture_g_overlap():
    s = smodel_fixture("G")
    inst, rmap = replicate(s)
    P = build_poset(inst)
    proj = project_poset(s, rmap, P)
    (r,) = proj.rotations
    assert s.labels(r.delta) == [["w1", "f3"]]
    assert s.labels(r.plus) == [["w1", "f1"], ["w3", "f2"]]
    assert s.labels(r.minus) == [["w1", "f2"], ["w3", "f1"]]
    assert proj.anomalies() == {"delta_nonempty": [0], "repeated_workers": []}
    # the cycle of the copy rotation is edge-simple
    assert len(set(P.rotations[0].cycle)) == len(P.rotations[0].cycle)
    stable = smodel_stable_set(s)
    assert stable == sorted(brute_stable(s).stable, key=sorted) and len(stable) == 2
    rots, _ = brute_precedence(s)
    assert set(rots) == {r.pair}


def test_reduction_roundtrip():
    s = smodel_fixture("G")
    inst, _ = replicate(s)
    again = load_instance(dumps_instance(inst))
    assert instance_to_dict(again) == instance_to_dict(inst)
    assert build_poset(again).rotations == build_poset(inst).rotations


@settings(max_examples=40)
@given(smodels())
def test_replicated_firms_satisfy_axioms(s):
    inst, _ = replicate(s)
    for f in inst.firms:
        r = verify_axioms(f.cf)
        assert r.a1 and r.a2 and r.a3


@given(smodels())
def test_smodel_against_brute_force(s):
    inst, rmap = replicate(s)
    P = build_poset(inst)
    rep = brute_stable(s)
    found = sorted((project_matching(rmap, X) for X in enumerate_stable(P)), key=sorted)
    assert found == sorted(rep.stable, key=sorted)
    proj = project_poset(s, rmap, P)
    rots, before = brute_precedence(s, rep)
    assert {r.pair for r in proj.rotations} == set(rots)
    mine = {(proj.rotations[i].pair, proj.rotations[j].pair) for i, j in P.closure()}
    assert mine == before
