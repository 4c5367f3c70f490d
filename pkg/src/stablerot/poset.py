"""Routes, the rotation poset, and the ideal <-> stable matching maps."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Iterable, List, Optional

from .instance import Instance
from .optimal import compute_xmin
from .rotations import Rotation, RouteWalker
from .stability import is_stable

log = logging.getLogger(__name__)

DEFAULT_ENUM_LIMIT = 100_000


class PosetError(RuntimeError):
    """Internal inconsistency while building or querying the poset."""


class NotAnIdealError(ValueError):
    pass


class EnumerationLimitError(RuntimeError):
    pass


@dataclass
class Route:
    matchings: list
    rotations: list

    def __len__(self):
        return len(self.rotations)

    @property
    def rotation_set(self) -> frozenset:
        return frozenset(self.rotations)


def full_route(
    inst: Instance,
    choose: Optional[Callable[[List[Rotation]], Rotation]] = None,
    start: Optional[frozenset] = None,
) -> Route:
    """Route from ``start`` (default Xmin) until no rotation is exposed.

    ``choose`` picks among the exposed rotations; by default the first one
    extracted, which is the rotation through the lowest-indexed worker.
    """
    X = compute_xmin(inst)[0] if start is None else frozenset(start)
    walker = RouteWalker(inst, X)
    matchings, rotations = [X], []
    while True:
        exposed = walker.rotations()
        if not exposed:
            return Route(matchings, rotations)
        L = exposed[0] if choose is None else choose(exposed)
        matchings.append(walker.apply(L))
        rotations.append(L)


def random_route(inst: Instance, rng) -> Route:
    return full_route(inst, choose=lambda exposed: exposed[rng.randrange(len(exposed))])


@dataclass
class RotationPoset:
    rotations: list
    hasse: frozenset  # pairs (i, j): rotation i immediately precedes rotation j
    xmin: frozenset
    xmax: frozenset
    instance: Instance = field(repr=False, compare=False)
    oracle_calls: int = 0
    violations: list = field(default_factory=list)

    def __post_init__(self):
        self.index = {R: i for i, R in enumerate(self.rotations)}
        n = len(self.rotations)
        self.preds = [set() for _ in range(n)]
        self.succs = [set() for _ in range(n)]
        for i, j in self.hasse:
            self.preds[j].add(i)
            self.succs[i].add(j)

    def __len__(self):
        return len(self.rotations)

    def minimal(self) -> list:
        return [i for i in range(len(self)) if not self.preds[i]]

    def maximal(self) -> list:
        return [i for i in range(len(self)) if not self.succs[i]]

    def closure(self) -> frozenset:
        """Strict precedence: all ``(i, j)`` with ``i`` before ``j``."""
        below = [set() for _ in range(len(self))]
        for j in range(len(self)):  # ids are a topological order
            for i in self.preds[j]:
                below[j] |= below[i] | {i}
        return frozenset((i, j) for j in range(len(self)) for i in below[j])

    def is_ideal(self, members: Iterable[int]) -> bool:
        members = set(members)
        if not members <= set(range(len(self))):
            return False
        return all(self.preds[j] <= members for j in members)


def build_poset(inst: Instance) -> RotationPoset:
    """Rotation set from one full route, then immediate successors per rotation.

    For each ``R`` the walk from Xmin applies every exposed rotation except
    ``R`` (lowest id first) until ``R`` is the only one left, applies ``R``,
    and reads the immediate successors of ``R`` off the new exposed set.
    Each walk keeps its own per-worker scan positions.
    """
    start_calls = inst.oracle_calls()
    xmin = compute_xmin(inst)[0]
    route = full_route(inst, start=xmin)
    rotations = route.rotations
    index = {R: i for i, R in enumerate(rotations)}
    if len(index) != len(rotations):
        raise PosetError("a rotation was applied twice on one route")

    def rid(L):
        try:
            return index[L]
        except KeyError:
            raise PosetError(f"rotation {L.key} missing from the full route") from None

    hasse, violations = set(), []
    for i, R in enumerate(rotations):
        walker = RouteWalker(inst, xmin)
        while True:
            exposed = walker.rotations()
            others = [L for L in exposed if L != R]
            if not others:
                break
            walker.apply(min(others, key=rid))
        if exposed != [R]:
            msg = f"stage 1 for rotation {i} ended with exposed set {[rid(L) for L in exposed]}"
            log.warning(msg)
            violations.append(msg)
            if R not in exposed:
                raise PosetError(msg)
        walker.apply(R)
        for L in walker.rotations():
            hasse.add((i, rid(L)))

    return RotationPoset(
        rotations=list(rotations),
        hasse=frozenset(hasse),
        xmin=xmin,
        xmax=route.matchings[-1],
        instance=inst,
        oracle_calls=inst.oracle_calls() - start_calls,
        violations=violations,
    )


def omega(poset: RotationPoset, X: Iterable[int]) -> frozenset:
    """Ideal of rotations on any route from Xmin to the stable matching ``X``."""
    inst = poset.instance
    X = frozenset(X)
    if not is_stable(inst, X):
        raise ValueError("omega is defined on stable matchings only")
    target = [X & inst.worker_edges[w] for w in range(len(inst.workers))]
    walker = RouteWalker(inst, poset.xmin)
    members = set()
    while walker.X != X:
        step = None
        for L in sorted(walker.rotations(), key=lambda L: poset.index.get(L, len(poset))):
            nxt = L.apply_to(walker.X)
            ok = True
            for w in {inst.edge_worker(e) for e in L.plus}:
                mine = nxt & inst.worker_edges[w]
                if inst.worker_choose(w, mine | target[w]) != mine:
                    ok = False
                    break
            if ok:
                step = L
                break
        if step is None or step not in poset.index:
            raise PosetError("guided route toward X got stuck")
        walker.apply(step)
        members.add(poset.index[step])
    return frozenset(members)


def matching_of(poset: RotationPoset, ideal: Iterable[int]) -> frozenset:
    ideal = frozenset(ideal)
    if not poset.is_ideal(ideal):
        raise NotAnIdealError(f"{sorted(ideal)} is not downward closed")
    chi = [0] * poset.instance.n_edges
    for e in poset.xmin:
        chi[e] = 1
    for i in ideal:
        R = poset.rotations[i]
        for e in R.plus:
            chi[e] += 1
        for e in R.minus:
            chi[e] -= 1
    if any(v not in (0, 1) for v in chi):
        raise PosetError("ideal image left the 0/1 cube")
    return frozenset(e for e, v in enumerate(chi) if v)


def enumerate_ideals(poset: RotationPoset, limit: Optional[int] = DEFAULT_ENUM_LIMIT) -> list:
    """All downsets, by deciding rotations in id order (a topological order)."""
    n = len(poset)
    out = []
    members = set()

    def rec(i):
        if i == n:
            if limit is not None and len(out) >= limit:
                raise EnumerationLimitError(f"more than {limit} ideals")
            out.append(frozenset(members))
            return
        rec(i + 1)
        if poset.preds[i] <= members:
            members.add(i)
            rec(i + 1)
            members.discard(i)

    rec(0)
    return out


def enumerate_stable(poset: RotationPoset, limit: Optional[int] = DEFAULT_ENUM_LIMIT) -> list:
    return [matching_of(poset, I) for I in enumerate_ideals(poset, limit)]


def meet_join(poset: RotationPoset, X: Iterable[int], Y: Iterable[int]):
    """Lattice meet and join with respect to the firms' order."""
    a, b = omega(poset, X), omega(poset, Y)
    return matching_of(poset, a & b), matching_of(poset, a | b)


def poset_to_dot(poset: RotationPoset) -> str:
    inst = poset.instance
    lines = ["digraph rotations {"]
    for i, R in enumerate(poset.rotations):
        plus = " ".join(f"{w}-{f}" for w, f in inst.labels(R.plus))
        minus = " ".join(f"{w}-{f}" for w, f in inst.labels(R.minus))
        lines.append(f'  r{i} [label="R{i}\\n+ {plus}\\n- {minus}"];')
    for i, j in sorted(poset.hasse):
        lines.append(f"  r{i} -> r{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
