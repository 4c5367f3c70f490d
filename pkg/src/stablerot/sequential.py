"""Reduction of the sequential-worker model to CBM by worker replication.

A worker ``w`` of rank ``q`` becomes unit-quota copies ``w#1 .. w#q``; copy
``i`` ranks its edges by the ``i``-th order of ``w``.  Every edge ``wf`` gets
one copy per worker copy.  A firm evaluates a replicated set by projecting
it back, asking its own choice function, and keeping, for each chosen
original edge, the present copy with the smallest index.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, List, Optional, Tuple

from .choice import ChoiceError, ChoiceOracle
from .instance import FirmSpec, Instance, InstanceError, SModelInstance, WorkerSpec
from .poset import DEFAULT_ENUM_LIMIT, RotationPoset, build_poset, enumerate_stable
from .rotations import Rotation

log = logging.getLogger(__name__)

MAX_TABLE_DEGREE = 16


class ReductionError(RuntimeError):
    """A structural property of the reduction failed (should not happen)."""


@dataclass(frozen=True)
class ReplicationMap:
    forward: tuple  # replicated edge -> original edge
    copy_index: tuple  # replicated edge -> i (1-based)
    fibers: tuple  # original edge -> replicated edges, by increasing i
    worker_origin: tuple  # replicated worker -> original worker

    def project(self, Z: Iterable[int]) -> frozenset:
        return frozenset(self.forward[e] for e in Z)


class ReplicatedChoice(ChoiceOracle):
    """Firm choice on replicated edges induced by the original firm oracle."""

    kind = "replicated"

    def __init__(self, domain: Iterable[int], base: ChoiceOracle, rmap: ReplicationMap):
        super().__init__(domain)
        self.base = base
        self.rmap = rmap

    @property
    def quota(self):
        return self.base.quota

    def _lift(self, Z: frozenset, chosen: frozenset) -> frozenset:
        out = []
        for e in chosen:
            present = [c for c in self.rmap.fibers[e] if c in Z]
            out.append(min(present, key=self.rmap.copy_index.__getitem__))
        return frozenset(out)

    def _choose(self, Z):
        return self._lift(Z, self.base.choose(self.rmap.project(Z)))

    def spec(self):
        # exported as an explicit table; the base oracle is not re-counted
        elems = sorted(self.domain)
        if len(elems) > MAX_TABLE_DEGREE:
            raise ChoiceError(f"replicated firm of degree {len(elems)} is too large to tabulate")
        entries = []
        for mask in range(1 << len(elems)):
            Z = frozenset(e for i, e in enumerate(elems) if mask >> i & 1)
            out = self._lift(Z, self.base._choose(self.rmap.project(Z)))
            entries.append((Z, out))
        entries.sort(key=lambda kv: (len(kv[0]), sorted(kv[0])))
        return {
            "type": "table",
            "entries": [{"in": sorted(k), "out": sorted(v)} for k, v in entries],
        }


def replicate(s: SModelInstance) -> Tuple[Instance, ReplicationMap]:
    copies = []  # (original worker, i)
    first_copy = []
    for w, spec in enumerate(s.workers):
        first_copy.append(len(copies))
        copies += [(w, i) for i in range(1, spec.quota + 1)]
    ids = {f.id for f in s.firms} | {w.id for w in s.workers}
    names = [f"{s.workers[w].id}#{i}" for w, i in copies]
    if len(set(names)) != len(names) or ids & set(names):
        raise InstanceError("replicated worker names collide with existing vertex ids")

    edges, forward, copy_index = [], [], []
    fibers: List[list] = [[] for _ in range(s.n_edges)]
    for e, (w, f) in enumerate(s.edges):
        for i in range(1, s.workers[w].quota + 1):
            fibers[e].append(len(edges))
            edges.append((first_copy[w] + i - 1, f))
            forward.append(e)
            copy_index.append(i)
    rmap = ReplicationMap(
        forward=tuple(forward),
        copy_index=tuple(copy_index),
        fibers=tuple(tuple(x) for x in fibers),
        worker_origin=tuple(w for w, _ in copies),
    )

    workers = []
    for (w, i), name in zip(copies, names):
        order = s.workers[w].orders[i - 1]
        workers.append(WorkerSpec(name, 1, tuple(fibers[e][i - 1] for e in order)))
    firm_domains = [[] for _ in s.firms]
    for e, (_, f) in enumerate(edges):
        firm_domains[f].append(e)
    firms = [
        FirmSpec(f.id, ReplicatedChoice(firm_domains[k], f.cf, rmap)) for k, f in enumerate(s.firms)
    ]
    return Instance(workers, firms, edges), rmap


def project_matching(rmap: ReplicationMap, X: Iterable[int]) -> frozenset:
    X = list(X)
    image = rmap.project(X)
    if len(image) != len(X):
        raise ReductionError("projection is not injective on the matching")
    return image


@dataclass(frozen=True)
class ProjectedRotation:
    plus: frozenset
    minus: frozenset
    delta: frozenset  # original edges both added and removed by the copy rotation
    repeated_workers: tuple  # original workers the cycle passes more than once

    @property
    def pair(self) -> tuple:
        return (self.plus, self.minus)


def project_rotation(s: SModelInstance, rmap: ReplicationMap, R: Rotation) -> ProjectedRotation:
    plus, minus = rmap.project(R.plus), rmap.project(R.minus)
    delta = plus & minus
    plus, minus = plus - delta, minus - delta
    if not plus or not minus or len(plus) != len(minus):
        raise ReductionError(f"projected rotation has |plus|={len(plus)}, |minus|={len(minus)}")
    visits = {}
    for e in plus:
        w = s.edge_worker(e)
        visits[w] = visits.get(w, 0) + 1
    repeated = tuple(sorted(s.workers[w].id for w, k in visits.items() if k > 1))
    if delta:
        log.warning("projected rotation with nonempty overlap %s", s.labels(delta))
    if repeated:
        log.warning("projected rotation passes workers %s more than once", list(repeated))
    return ProjectedRotation(plus, minus, delta, repeated)


@dataclass
class ProjectedPoset:
    rotations: list  # ProjectedRotation, same ids as the replicated poset
    hasse: frozenset
    replicated: RotationPoset

    def anomalies(self) -> dict:
        return {
            "delta_nonempty": [i for i, r in enumerate(self.rotations) if r.delta],
            "repeated_workers": [i for i, r in enumerate(self.rotations) if r.repeated_workers],
        }


def project_poset(s: SModelInstance, rmap: ReplicationMap, poset: RotationPoset) -> ProjectedPoset:
    rots = [project_rotation(s, rmap, R) for R in poset.rotations]
    if len({r.pair for r in rots}) != len(rots):
        raise ReductionError("two replicated rotations project to the same rotation")
    return ProjectedPoset(rots, poset.hasse, poset)


def smodel_stable_set(s: SModelInstance, limit: Optional[int] = DEFAULT_ENUM_LIMIT) -> list:
    """All stable matchings of ``s``: replicate, enumerate, project."""
    inst, rmap = replicate(s)
    poset = build_poset(inst)
    out = [project_matching(rmap, X) for X in enumerate_stable(poset, limit)]
    if len(set(out)) != len(out):
        raise ReductionError("two replicated stable matchings project to the same set")
    return sorted(out, key=sorted)
