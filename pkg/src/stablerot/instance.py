"""Bipartite instances, edge indexing and the JSON instance format.

Edges are dense integers ``0..|E|-1`` assigned in file order.  A matching
is any ``frozenset`` of edge indices; acceptability and stability are
predicates (see :mod:`stablerot.stability`), not invariants of the type.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .choice import (
    ChoiceError,
    ChoiceOracle,
    LinearQuotaCF,
    SequentialCF,
    TableCF,
    verify_axioms,
    worker_choice,
)

Matching = frozenset
Source = Union[str, bytes, dict]


class InstanceError(ValueError):
    """Malformed or inconsistent instance data."""


@dataclass(frozen=True)
class WorkerSpec:
    id: str
    quota: int
    pref: tuple  # edge indices, most preferred first


@dataclass(frozen=True)
class SequentialWorkerSpec:
    """S-model worker: ``rank`` linear orders over its edges."""

    id: str
    orders: tuple

    @property
    def quota(self) -> int:
        return len(self.orders)


@dataclass(frozen=True, eq=False)
class FirmSpec:
    id: str
    cf: ChoiceOracle


class Market:
    """Graph, vertex lookup and firm oracles shared by both worker models."""

    def __init__(self, workers: Sequence, firms: Sequence[FirmSpec], edges: Sequence[tuple]):
        self.workers = tuple(workers)
        self.firms = tuple(firms)
        self.edges = tuple((int(w), int(f)) for w, f in edges)
        self._vertex = {}
        for i, w in enumerate(self.workers):
            self._vertex[w.id] = ("w", i)
        for j, f in enumerate(self.firms):
            if f.id in self._vertex:
                raise InstanceError(f"vertex id {f.id!r} used twice")
            self._vertex[f.id] = ("f", j)
        if len(self._vertex) != len(self.workers) + len(self.firms):
            raise InstanceError("duplicate worker id")
        wedges = [[] for _ in self.workers]
        fedges = [[] for _ in self.firms]
        for e, (w, f) in enumerate(self.edges):
            wedges[w].append(e)
            fedges[f].append(e)
        self.worker_edges = tuple(frozenset(x) for x in wedges)
        self.firm_edges = tuple(frozenset(x) for x in fedges)
        self._pair = {(w, f): e for e, (w, f) in enumerate(self.edges)}

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def n_vertices(self) -> int:
        return len(self.workers) + len(self.firms)

    def edge_worker(self, e: int) -> int:
        return self.edges[e][0]

    def edge_firm(self, e: int) -> int:
        return self.edges[e][1]

    def vertex(self, v: str) -> tuple:
        """Resolve a vertex id to ``("w", index)`` or ``("f", index)``."""
        try:
            return self._vertex[v]
        except KeyError:
            raise InstanceError(f"unknown vertex {v!r}") from None

    def vertex_ids(self, side: str) -> list:
        group = self.workers if side == "w" else self.firms
        return [x.id for x in group]

    def edges_at(self, v: str) -> frozenset:
        side, i = self.vertex(v)
        return self.worker_edges[i] if side == "w" else self.firm_edges[i]

    def restriction(self, X: Iterable[int], v: str) -> frozenset:
        """``X`` intersected with the edges incident to ``v``."""
        return frozenset(X) & self.edges_at(v)

    def choose_at(self, v: str, Z: Iterable[int]) -> frozenset:
        side, i = self.vertex(v)
        if side == "w":
            return self.worker_choose(i, Z)
        return self.firms[i].cf.choose(Z)

    def worker_choose(self, w: int, Z: Iterable[int]) -> frozenset:
        raise NotImplementedError

    def label(self, e: int) -> tuple:
        w, f = self.edges[e]
        return (self.workers[w].id, self.firms[f].id)

    def labels(self, X: Iterable[int]) -> list:
        return [list(self.label(e)) for e in sorted(X)]

    def edge_of(self, worker_id: str, firm_id: str) -> int:
        sw, w = self.vertex(worker_id)
        sf, f = self.vertex(firm_id)
        if sw != "w" or sf != "f" or (w, f) not in self._pair:
            raise InstanceError(f"no edge ({worker_id!r}, {firm_id!r})")
        return self._pair[w, f]

    def matching(self, pairs: Iterable) -> frozenset:
        """Build a matching from ``(workerId, firmId)`` pairs."""
        return frozenset(self.edge_of(w, f) for w, f in pairs)

    def oracle_calls(self) -> int:
        return sum(f.cf.calls for f in self.firms)

    def reset_calls(self) -> None:
        for f in self.firms:
            f.cf.calls = 0


class Instance(Market):
    """Choice-function firms and linear-order quota workers."""

    def __init__(self, workers: Sequence[WorkerSpec], firms, edges):
        super().__init__(workers, firms, edges)
        self.rank = [0] * self.n_edges
        for w in self.workers:
            for pos, e in enumerate(w.pref):
                self.rank[e] = pos

    def worker_choose(self, w, Z):
        return worker_choice(self.workers[w], Z)


class SModelInstance(Market):
    """Choice-function firms and sequential-choice workers."""

    def __init__(self, workers: Sequence[SequentialWorkerSpec], firms, edges):
        super().__init__(workers, firms, edges)
        self.worker_cfs = tuple(SequentialCF(w.orders) for w in self.workers)

    def worker_choose(self, w, Z):
        return self.worker_cfs[w].choose(Z)


# --- reading -----------------------------------------------------------------


def _as_document(source: Source) -> dict:
    if isinstance(source, dict):
        return source
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    try:
        doc = json.loads(source)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"parse error: {exc}") from None
    if not isinstance(doc, dict):
        raise InstanceError("parse error: top level must be an object")
    return doc


def _require_list(doc, key):
    value = doc.get(key)
    if not isinstance(value, list):
        raise InstanceError(f"parse error: {key!r} must be a list")
    return value


def _pair(item, where):
    if (
        not isinstance(item, (list, tuple))
        or len(item) != 2
        or not all(isinstance(x, str) for x in item)
    ):
        raise InstanceError(f"parse error: {where} entries must be [workerId, firmId]")
    return tuple(item)


def _graph(doc):
    raw_workers = _require_list(doc, "workers")
    raw_firms = _require_list(doc, "firms")
    raw_edges = _require_list(doc, "edges")
    wid, fid = {}, {}
    for k, w in enumerate(raw_workers):
        if not isinstance(w, dict) or not isinstance(w.get("id"), str):
            raise InstanceError("parse error: worker entries need a string id")
        if w["id"] in wid:
            raise InstanceError(f"duplicate worker id {w['id']!r}")
        wid[w["id"]] = k
    for k, f in enumerate(raw_firms):
        if not isinstance(f, dict) or not isinstance(f.get("id"), str):
            raise InstanceError("parse error: firm entries need a string id")
        if f["id"] in fid or f["id"] in wid:
            raise InstanceError(f"duplicate vertex id {f['id']!r}")
        fid[f["id"]] = k
    edges, index = [], {}
    for item in raw_edges:
        w, f = _pair(item, "edges")
        if w not in wid:
            raise InstanceError(f"unknown vertex {w!r}")
        if f not in fid:
            raise InstanceError(f"unknown vertex {f!r}")
        if (w, f) in index:
            raise InstanceError(f"duplicate edge ({w!r}, {f!r})")
        index[w, f] = len(edges)
        edges.append((wid[w], fid[f]))
    return raw_workers, raw_firms, edges, index


def _resolve(items, index, where):
    out = []
    for item in items if isinstance(items, list) else [None]:
        pair = _pair(item, where)
        if pair not in index:
            raise InstanceError(f"{where} references unknown edge {list(pair)}")
        out.append(index[pair])
    return out


def _permutation(seq, domain, where):
    if len(seq) != len(domain) or frozenset(seq) != domain:
        raise InstanceError(f"{where} is not a permutation of the incident edges")
    return tuple(seq)


def parse_cf(spec: dict, domain: frozenset, index: dict, where: str, check_axioms=True):
    """Build a firm oracle from its JSON description."""
    if not isinstance(spec, dict):
        raise InstanceError(f"parse error: {where} cf must be an object")
    kind = spec.get("type")
    try:
        if kind == "linear_quota":
            quota = spec.get("quota")
            if not isinstance(quota, int) or isinstance(quota, bool) or quota < 1:
                raise InstanceError(f"{where}: quota must be an integer >= 1")
            order = _permutation(_resolve(spec.get("order"), index, where), domain, f"{where} order")
            return LinearQuotaCF(order, quota)
        if kind == "sequential":
            orders = spec.get("orders")
            if not isinstance(orders, list) or not orders:
                raise InstanceError(f"{where}: sequential needs a non-empty 'orders' list")
            resolved = [
                _permutation(_resolve(o, index, where), domain, f"{where} order") for o in orders
            ]
            return SequentialCF(resolved)
        if kind == "table":
            entries = {}
            for ent in spec.get("entries") or []:
                if not isinstance(ent, dict):
                    raise InstanceError(f"parse error: {where} table entries must be objects")
                key = frozenset(_resolve(ent.get("in", []), index, where))
                if key in entries:
                    raise InstanceError(f"{where}: table lists a subset twice")
                entries[key] = frozenset(_resolve(ent.get("out", []), index, where))
            cf = TableCF(domain, entries)
            if check_axioms:
                report = verify_axioms(cf)
                if not (report.a1 and report.a2 and report.a3):
                    raise InstanceError(
                        f"{where}: table choice function violates the axioms "
                        f"(a1={report.a1}, a2={report.a2}, a3={report.a3}); "
                        "pass --unchecked to load it anyway"
                    )
            return cf
    except ChoiceError as exc:
        raise InstanceError(f"{where}: {exc}") from None
    raise InstanceError(f"{where}: unknown choice function type {kind!r}")


def _firms(raw_firms, edges, index, check_axioms):
    firm_domain = [set() for _ in raw_firms]
    for e, (_, f) in enumerate(edges):
        firm_domain[f].add(e)
    firms = []
    for k, f in enumerate(raw_firms):
        cf = parse_cf(f.get("cf"), frozenset(firm_domain[k]), index, f"firm {f['id']}", check_axioms)
        firms.append(FirmSpec(f["id"], cf))
    return firms


def _worker_domains(raw_workers, edges):
    dom = [set() for _ in raw_workers]
    for e, (w, _) in enumerate(edges):
        dom[w].add(e)
    return [frozenset(d) for d in dom]


def load_instance(source: Source, *, check_axioms: bool = True) -> Instance:
    """Parse and validate an instance document (JSON text, bytes or dict).

    Table choice functions that break (A1)-(A3) are rejected unless
    ``check_axioms`` is false.
    """
    doc = _as_document(source)
    raw_workers, raw_firms, edges, index = _graph(doc)
    domains = _worker_domains(raw_workers, edges)
    workers = []
    for k, w in enumerate(raw_workers):
        quota = w.get("quota")
        if not isinstance(quota, int) or isinstance(quota, bool) or quota < 1:
            raise InstanceError(f"worker {w['id']}: quota must be an integer >= 1")
        pref = _resolve(w.get("pref"), index, f"worker {w['id']} pref")
        pref = _permutation(pref, domains[k], f"worker {w['id']} pref")
        workers.append(WorkerSpec(w["id"], quota, pref))
    return Instance(workers, _firms(raw_firms, edges, index, check_axioms), edges)


def load_smodel(source: Source, *, check_axioms: bool = True) -> SModelInstance:
    """Parse an S-model document: workers carry ``orders`` instead of pref/quota."""
    doc = _as_document(source)
    raw_workers, raw_firms, edges, index = _graph(doc)
    domains = _worker_domains(raw_workers, edges)
    workers = []
    for k, w in enumerate(raw_workers):
        orders = w.get("orders")
        if not isinstance(orders, list) or not orders:
            raise InstanceError(f"worker {w['id']}: 'orders' must be a non-empty list")
        resolved = tuple(
            _permutation(_resolve(o, index, f"worker {w['id']} orders"), domains[k],
                         f"worker {w['id']} order")
            for o in orders
        )
        workers.append(SequentialWorkerSpec(w["id"], resolved))
    return SModelInstance(workers, _firms(raw_firms, edges, index, check_axioms), edges)


# --- writing -----------------------------------------------------------------


def _cf_document(market: Market, cf: ChoiceOracle) -> dict:
    spec = cf.spec()
    lab = lambda e: list(market.label(e))  # noqa: E731
    if spec["type"] == "linear_quota":
        return {"type": "linear_quota", "quota": spec["quota"], "order": [lab(e) for e in spec["order"]]}
    if spec["type"] == "sequential":
        return {"type": "sequential", "orders": [[lab(e) for e in o] for o in spec["orders"]]}
    if spec["type"] == "table":
        return {
            "type": "table",
            "entries": [
                {"in": [lab(e) for e in ent["in"]], "out": [lab(e) for e in ent["out"]]}
                for ent in spec["entries"]
            ],
        }
    raise InstanceError(f"cannot serialize choice function of type {spec['type']!r}")


def instance_to_dict(market: Market) -> dict:
    lab = lambda e: list(market.label(e))  # noqa: E731
    workers = []
    for w in market.workers:
        if isinstance(w, SequentialWorkerSpec):
            workers.append({"id": w.id, "orders": [[lab(e) for e in o] for o in w.orders]})
        else:
            workers.append({"id": w.id, "quota": w.quota, "pref": [lab(e) for e in w.pref]})
    return {
        "workers": workers,
        "firms": [{"id": f.id, "cf": _cf_document(market, f.cf)} for f in market.firms],
        "edges": [lab(e) for e in range(market.n_edges)],
    }


def dumps_instance(market: Market) -> str:
    return json.dumps(instance_to_dict(market), sort_keys=True, indent=1)
