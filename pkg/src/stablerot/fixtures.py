"""Small named instances used by the tests, the examples and the CLI docs.

A: 2x2 cyclic marriage, one rotation.
B: a single edge.
C: a cascade where cleaning deletes every admissible edge.
D: one rotation passing a quota-2 firm twice.
E: two disjoint copies of A, two independent rotations.
F: two chained rotations sharing an edge.
G: an S-model instance with a rank-2 sequential worker.
"""

from __future__ import annotations

from .generators import make_document, make_smodel_document
from .instance import Instance, SModelInstance, load_instance, load_smodel


def _lin(*order, quota=1):
    return ("linear", quota, list(order))


DOCS = {
    "A": make_document(
        {"w1": (1, ["f1", "f2"]), "w2": (1, ["f2", "f1"])},
        {"f1": _lin("w2", "w1"), "f2": _lin("w1", "w2")},
    ),
    "B": make_document({"w": (1, ["f"])}, {"f": _lin("w")}),
    "C": make_document(
        {"w1": (1, ["f1"]), "w2": (1, ["f2", "f1"]), "w3": (1, ["f3", "f2"])},
        {"f1": _lin("w2", "w1"), "f2": _lin("w3", "w2"), "f3": _lin("w3")},
    ),
    "D": make_document(
        {
            "w1": (1, ["h", "f"]),
            "w2": (1, ["f", "g"]),
            "w3": (1, ["g", "f"]),
            "w4": (1, ["f", "h"]),
        },
        {
            "f": ("seq", [["w1", "w2", "w3", "w4"], ["w3", "w4", "w2", "w1"]]),
            "g": _lin("w2", "w3"),
            "h": _lin("w4", "w1"),
        },
    ),
    "E": make_document(
        {
            "w1": (1, ["f1", "f2"]),
            "w2": (1, ["f2", "f1"]),
            "w3": (1, ["f3", "f4"]),
            "w4": (1, ["f4", "f3"]),
        },
        {
            "f1": _lin("w2", "w1"),
            "f2": _lin("w1", "w2"),
            "f3": _lin("w4", "w3"),
            "f4": _lin("w3", "w4"),
        },
    ),
    "F": make_document(
        {"w1": (1, ["f1", "f3", "f2"]), "w2": (1, ["f3", "f2", "f1"]), "w3": (1, ["f2", "f1", "f3"])},
        {"f1": _lin("w2", "w3", "w1"), "f2": _lin("w1", "w2", "w3"), "f3": _lin("w3", "w1", "w2")},
    ),
}

SMODEL_DOCS = {
    # the only rotation of the replicated instance adds and removes a copy
    # of w1-f3, so its projection drops that edge
    "G": make_smodel_document(
        {"w1": [["f2", "f3", "f1"], ["f3", "f2", "f1"]], "w2": [["f1", "f2"]], "w3": [["f1", "f2", "f3"]]},
        {
            "f1": ("seq", [["w1", "w3", "w2"]]),
            "f2": ("seq", [["w3", "w1", "w2"], ["w3", "w2", "w1"]]),
            "f3": ("seq", [["w3", "w1"]]),
        },
    ),
}


def fixture(name: str) -> Instance:
    return load_instance(DOCS[name])


def smodel_fixture(name: str = "G") -> SModelInstance:
    return load_smodel(SMODEL_DOCS[name])

