import json

import pytest

from stablerot.fixtures import DOCS, SMODEL_DOCS, fixture
from stablerot.instance import (
    InstanceError,
    dumps_instance,
    instance_to_dict,
    load_instance,
    load_smodel,
)


def doc_a():
    return json.loads(json.dumps(DOCS["A"]))


def test_edges_numbered_in_file_order():
    inst = fixture("A")
    assert [inst.label(e) for e in range(4)] == [
        ("w1", "f1"), ("w1", "f2"), ("w2", "f2"), ("w2", "f1"),
    ]
    assert inst.edge_of("w2", "f1") == 3
    assert inst.worker_edges[0] == {0, 1}
    assert inst.firm_edges[1] == {1, 2}
    assert inst.n_vertices == 4


def test_roundtrip_is_stable():
    for name in DOCS:
        inst = fixture(name)
        again = load_instance(dumps_instance(inst))
        assert instance_to_dict(again) == instance_to_dict(inst)
    s = load_smodel(SMODEL_DOCS["G"])
    assert instance_to_dict(load_smodel(dumps_instance(s))) == instance_to_dict(s)


def test_accepts_text_bytes_and_dict():
    text = json.dumps(DOCS["B"])
    for src in (text, text.encode(), DOCS["B"]):
        assert load_instance(src).n_edges == 1


@pytest.mark.parametrize(
    "mutate, message",
    [
        (lambda d: d["edges"].append(["w1", "f1"]), "duplicate edge"),
        (lambda d: d["edges"].append(["w9", "f1"]), "unknown vertex"),
        (lambda d: d["workers"][0].update(pref=[["w1", "f1"]]), "permutation"),
        (lambda d: d["workers"][0].update(quota=0), "quota"),
        (lambda d: d["firms"][0]["cf"].update(quota=-1), "quota"),
        (lambda d: d["firms"][0]["cf"].update(type="magic"), "unknown choice function"),
        (lambda d: d["firms"].append({"id": "w1", "cf": {}}), "duplicate vertex"),
        (lambda d: d.pop("edges"), "parse error"),
    ],
)
def test_validation_errors(mutate, message):
    d = doc_a()
    mutate(d)
    with pytest.raises(InstanceError, match=message):
        load_instance(d)


def test_parse_error_on_bad_json():
    with pytest.raises(InstanceError, match="parse error"):
        load_instance("{not json")


def _table_doc(out_of_pair):
    return {
        "workers": [{"id": "w1", "quota": 1, "pref": [["w1", "f"]]},
                    {"id": "w2", "quota": 1, "pref": [["w2", "f"]]}],
        "firms": [{"id": "f", "cf": {"type": "table", "entries": [
            {"in": [], "out": []},
            {"in": [["w1", "f"]], "out": [["w1", "f"]]},
            {"in": [["w2", "f"]], "out": [["w2", "f"]]},
            {"in": [["w1", "f"], ["w2", "f"]], "out": out_of_pair},
        ]}}],
        "edges": [["w1", "f"], ["w2", "f"]],
    }


def test_table_cf_axioms_enforced():
    load_instance(_table_doc([["w1", "f"]]))  # a legal choice
    bad = _table_doc([])  # rejecting both breaks monotonicity
    with pytest.raises(InstanceError, match="violates the axioms"):
        load_instance(bad)
    inst = load_instance(bad, check_axioms=False)
    assert inst.firms[0].cf.choose({0, 1}) == frozenset()


def test_table_cf_must_be_complete():
    d = _table_doc([["w1", "f"]])
    d["firms"][0]["cf"]["entries"].pop()
    with pytest.raises(InstanceError, match="entries"):
        load_instance(d)


def test_smodel_orders_define_quota():
    s = load_smodel(SMODEL_DOCS["G"])
    assert [w.quota for w in s.workers] == [2, 1, 1]
    assert s.worker_choose(0, {0, 1, 2}) == {0, 1}  # f2 by order 1, then f3 by order 2


def test_call_counter_reset():
    inst = fixture("A")
    inst.firms[0].cf.choose({0})
    assert inst.oracle_calls() == 1
    inst.reset_calls()
    assert inst.oracle_calls() == 0
