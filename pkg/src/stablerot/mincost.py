"""Minimum-cost stable matching as a minimum-weight ideal, solved by a min cut.

Rotation ``R`` weighs ``c(R+) - c(R-)``; the cost of the matching of an
ideal ``I`` is ``c(Xmin)`` plus the weight of ``I``.  The weight is
minimized over ideals with the classical source/sink network: positive
nodes hang off the source, negative nodes feed the sink, and each Hasse
pair ``R -> R'`` gets an uncuttable arc.  The sink side of a minimum cut is
then a minimum-weight ideal.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Mapping, Optional, Sequence, Union

from .affine import AffineRep, build_affine
from .instance import Instance, InstanceError
from .maxflow import FlowNetwork
from .poset import RotationPoset, build_poset, matching_of

SOURCE, SINK = "s", "t"

CostInput = Union[Sequence, Mapping[int, object]]


class CutError(RuntimeError):
    pass


def as_rational(value) -> Fraction:
    if isinstance(value, bool):
        raise ValueError("cost must be a number, not a boolean")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise ValueError(f"cost {value!r} must be an integer or a decimal string")


def cost_vector(n_edges: int, costs: CostInput) -> List[Fraction]:
    """Full per-edge cost list; every edge must be priced."""
    if isinstance(costs, Mapping):
        missing = [e for e in range(n_edges) if e not in costs]
        if missing:
            raise KeyError(f"no cost for edges {missing}")
        return [as_rational(costs[e]) for e in range(n_edges)]
    if len(costs) != n_edges:
        raise KeyError(f"expected {n_edges} costs, got {len(costs)}")
    return [as_rational(c) for c in costs]


def load_costs(inst: Instance, source) -> List[Fraction]:
    """Parse ``[{"edge": [w, f], "cost": "5"}, ...]``; unlisted edges cost 0."""
    doc = json.loads(source) if isinstance(source, (str, bytes)) else source
    if not isinstance(doc, list):
        raise InstanceError("cost file must be a list of {edge, cost} objects")
    out = [Fraction(0)] * inst.n_edges
    seen = set()
    for item in doc:
        if not isinstance(item, dict) or "edge" not in item or "cost" not in item:
            raise InstanceError("cost entries need 'edge' and 'cost'")
        pair = item["edge"]
        if not isinstance(pair, list) or len(pair) != 2:
            raise InstanceError("cost edge must be [workerId, firmId]")
        e = inst.edge_of(*pair)
        if e in seen:
            raise InstanceError(f"edge {pair} priced twice")
        seen.add(e)
        try:
            out[e] = as_rational(item["cost"])
        except (ValueError, ZeroDivisionError) as exc:
            raise InstanceError(f"bad cost for {pair}: {exc}") from None
    return out


def rotation_weights(rep: AffineRep, costs: CostInput) -> List[Fraction]:
    c = cost_vector(len(rep.base), costs)
    return [sum((c[e] * v for e, v in enumerate(col) if v), Fraction(0)) for col in rep.columns]


@dataclass
class ClosureNetwork:
    network: FlowNetwork
    weights: list
    infinity: Fraction


def closure_network(poset: RotationPoset, weights: Sequence) -> ClosureNetwork:
    weights = [Fraction(w) for w in weights]
    infinity = sum((abs(w) for w in weights), Fraction(0)) + 1
    net = FlowNetwork()
    net.node(SOURCE)
    net.node(SINK)
    for i, w in enumerate(weights):
        net.node(i)
        if w > 0:
            net.add_arc(SOURCE, i, w)
        elif w < 0:
            net.add_arc(i, SINK, -w)
    for i, j in sorted(poset.hasse):
        net.add_arc(i, j, infinity)
    return ClosureNetwork(net, weights, infinity)


def max_flow(cn: ClosureNetwork):
    """``(value, A)`` with ``A`` the source side of a minimum cut.

    ``A`` is everything that cannot reach the sink in the residual network,
    the largest source side, so the sink side is the smallest optimal set.
    """
    value = cn.network.max_flow(SOURCE, SINK)
    A = set(cn.network.nodes) - cn.network.reaches(SINK)
    crossing = [(u, v, c) for u, v, c in cn.network.arcs() if u in A and v not in A]
    if any(c == cn.infinity for _, _, c in crossing):
        raise CutError("an uncuttable arc crosses the minimum cut")
    if sum(c for _, _, c in crossing) != value:
        raise CutError("cut capacity differs from the flow value")
    return value, A


@dataclass
class ClosureSolution:
    ideal: frozenset
    weight: Fraction
    flow: Fraction


def min_weight_ideal(poset: RotationPoset, weights: Sequence) -> ClosureSolution:
    cn = closure_network(poset, weights)
    value, A = max_flow(cn)
    ideal = frozenset(v for v in range(len(poset)) if v not in A)
    if not poset.is_ideal(ideal):
        raise CutError("sink side of the cut is not an ideal")
    weight = sum((cn.weights[i] for i in ideal), Fraction(0))
    negative = sum((w for w in cn.weights if w < 0), Fraction(0))
    if value != weight - negative:
        raise CutError("cut value does not match the ideal weight")
    return ClosureSolution(ideal, weight, value)


def matching_cost(costs: Sequence[Fraction], X: Iterable[int]) -> Fraction:
    return sum((costs[e] for e in X), Fraction(0))


def min_cost_stable(inst: Instance, costs: CostInput, poset: Optional[RotationPoset] = None):
    """``(matching, cost)`` of a cheapest stable matching."""
    poset = poset or build_poset(inst)
    c = cost_vector(inst.n_edges, costs)
    rep = build_affine(poset)
    sol = min_weight_ideal(poset, rotation_weights(rep, c))
    X = matching_of(poset, sol.ideal)
    total = matching_cost(c, X)
    if total != matching_cost(c, poset.xmin) + sol.weight:
        raise CutError("cost decomposition failed")
    return X, total
