"""Admissible graph, cleaning, rotation extraction and rotation application.

For a stable matching ``X`` every fully filled worker ``w`` looks below its
worst matched edge ``x_w`` for the best edge its firm would take
(the W-admissible edge ``a_w``).  If the firm then drops an edge ``b``,
``(a_w, b)`` is a tandem.  Cleaning prunes branches that cannot close into
cycles; what is left splits into edge-disjoint alternating cycles, the
rotations of ``X``.

Works for arbitrary worker quotas: ``x_w`` is always the least preferred
edge of ``X_w``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional

from .instance import Instance
from .stability import is_stable


class BalanceError(RuntimeError):
    """The cleaned graph violates the in/out balance the theory guarantees."""


class NotARotationError(ValueError):
    pass


class NotStableError(ValueError):
    pass


@dataclass(frozen=True)
class Tandem:
    a: int
    b: int
    firm: int


@dataclass(frozen=True)
class Rotation:
    """Alternating cycle; identity is the ``(plus, minus)`` pair."""

    plus: frozenset
    minus: frozenset
    cycle: tuple = field(default=(), compare=False, hash=False)

    @property
    def key(self) -> tuple:
        return (tuple(sorted(self.plus)), tuple(sorted(self.minus)))

    def apply_to(self, X: Iterable[int]) -> frozenset:
        return (frozenset(X) - self.minus) | self.plus

    def describe(self, inst) -> dict:
        return {"plus": inst.labels(self.plus), "minus": inst.labels(self.minus)}


@dataclass
class AdmissibleGraph:
    """``D(X)``: W-admissible edges and the F-admissible edges they displace."""

    matching: frozenset
    admissible: Dict[int, int]  # worker -> a_w
    displaced: Dict[int, Optional[int]]  # a_w -> b, or None when nothing is dropped

    def tandems(self, inst) -> List[Tandem]:
        return [
            Tandem(a, b, inst.edge_firm(a))
            for a, b in sorted(self.displaced.items())
            if b is not None
        ]

    def n_edges(self) -> int:
        bs = {b for b in self.displaced.values() if b is not None}
        return len(self.admissible) + len(bs)


@dataclass
class ActiveGraph:
    """``Gamma(X)``: the admissible graph after cleaning."""

    matching: frozenset
    admissible: Dict[int, int]
    tandems: tuple
    partner: Dict[int, int] = field(repr=False, default_factory=dict)  # a -> b

    @property
    def w_active(self) -> frozenset:
        return frozenset(self.admissible.values())

    @property
    def f_active(self) -> frozenset:
        return frozenset(t.b for t in self.tandems)

    def is_empty(self) -> bool:
        return not self.admissible


def _least_preferred(inst: Instance, Xw: frozenset) -> int:
    return max(Xw, key=inst.rank.__getitem__)


def _is_full(inst: Instance, X: frozenset, w: int) -> bool:
    return len(X & inst.worker_edges[w]) == inst.workers[w].quota


def _displaced_edge(Xf: frozenset, a: int, chosen: frozenset) -> Optional[int]:
    grown = Xf | {a}
    if chosen == grown:
        return None
    dropped = grown - chosen
    if a in chosen and len(dropped) == 1 and len(chosen) == len(Xf):
        return next(iter(dropped))
    raise BalanceError(
        f"firm choice on X_f + a is neither X_f + a nor X_f + a - b (dropped {sorted(dropped)});"
        " the cardinal monotonicity axiom must fail"
    )


def _scan(inst: Instance, X: frozenset, w: int, start: int):
    pref = inst.workers[w].pref
    for p in range(start, len(pref)):
        e = pref[p]
        f = inst.edge_firm(e)
        Xf = X & inst.firm_edges[f]
        chosen = inst.firms[f].cf.choose(Xf | {e})
        if e in chosen:
            return p, chosen
    return len(pref), None


def w_admissible_edge(inst: Instance, X: Iterable[int], w: int) -> Optional[int]:
    """Best edge below ``x_w`` that is interesting for its firm, or None.

    Deficit workers have no admissible edge.
    """
    X = frozenset(X)
    if not _is_full(inst, X, w):
        return None
    start = inst.rank[_least_preferred(inst, X & inst.worker_edges[w])] + 1
    p, chosen = _scan(inst, X, w, start)
    return None if chosen is None else inst.workers[w].pref[p]


def build_admissible_graph(inst: Instance, X: Iterable[int], check: bool = True) -> AdmissibleGraph:
    X = frozenset(X)
    if check and not is_stable(inst, X):
        raise NotStableError("the admissible graph is defined for stable matchings only")
    admissible, displaced = {}, {}
    for w in range(len(inst.workers)):
        if not _is_full(inst, X, w):
            continue
        start = inst.rank[_least_preferred(inst, X & inst.worker_edges[w])] + 1
        p, chosen = _scan(inst, X, w, start)
        if chosen is None:
            continue
        a = inst.workers[w].pref[p]
        Xf = X & inst.firm_edges[inst.edge_firm(a)]
        admissible[w] = a
        displaced[a] = _displaced_edge(Xf, a, chosen)
    return AdmissibleGraph(X, admissible, displaced)


def clean(inst: Instance, D: AdmissibleGraph, reverse: bool = False) -> ActiveGraph:
    """Delete W-admissible edges of workers that nothing enters, to a fixpoint.

    Deleting ``a_w`` also deletes its displaced edge ``b`` once no surviving
    tandem uses ``b``.  Deletions only cascade, so the fixpoint does not
    depend on the scan order; ``reverse`` exists to test exactly that.
    """
    alive = dict(D.admissible)
    support: Dict[int, int] = {}
    for a in alive.values():
        b = D.displaced[a]
        if b is not None:
            support[b] = support.get(b, 0) + 1
    entering = [0] * len(inst.workers)
    for b in support:
        entering[inst.edge_worker(b)] += 1

    order = sorted(alive, reverse=reverse)
    changed = True
    while changed:
        changed = False
        for w in order:
            if w in alive and entering[w] == 0:
                a = alive.pop(w)
                b = D.displaced[a]
                if b is not None:
                    support[b] -= 1
                    if support[b] == 0:
                        del support[b]
                        entering[inst.edge_worker(b)] -= 1
                changed = True

    partner = {a: D.displaced[a] for a in alive.values()}
    tandems = tuple(
        Tandem(a, b, inst.edge_firm(a)) for a, b in sorted(partner.items()) if b is not None
    )
    gamma = ActiveGraph(D.matching, alive, tandems, partner)
    check_balance(inst, gamma, entering)
    return gamma


def check_balance(inst: Instance, gamma: ActiveGraph, entering=None) -> None:
    """Every surviving worker has one edge in and one out; tandems partition firms."""
    if entering is None:
        entering = [0] * len(inst.workers)
        for b in {t.b for t in gamma.tandems}:
            entering[inst.edge_worker(b)] += 1
    for w in range(len(inst.workers)):
        out = 1 if w in gamma.admissible else 0
        if entering[w] != out:
            raise BalanceError(
                f"worker {inst.workers[w].id!r} has {entering[w]} entering and {out} leaving"
                f" active edges at X={inst.labels(gamma.matching)}"
            )
    if any(b is None for b in gamma.partner.values()):
        raise BalanceError("an active W-edge without a tandem survived cleaning")
    bs = [t.b for t in gamma.tandems]
    if len(bs) != len(set(bs)):
        raise BalanceError("tandems at a firm share an F-active edge after cleaning")


def extract_rotations(inst: Instance, gamma: ActiveGraph) -> List[Rotation]:
    """Split ``Gamma`` into its cycles, starting from the lowest-indexed worker."""
    seen = set()
    rotations = []
    for w0 in sorted(gamma.admissible):
        if w0 in seen:
            continue
        cycle, plus, minus = [], [], []
        w = w0
        while True:
            if w in seen:
                raise BalanceError("active graph traversal revisited a worker")
            seen.add(w)
            a = gamma.admissible[w]
            b = gamma.partner[a]
            cycle += [a, b]
            plus.append(a)
            minus.append(b)
            w = inst.edge_worker(b)
            if w == w0:
                break
            if w not in gamma.admissible:
                raise BalanceError("active graph traversal left the graph")
        rotations.append(Rotation(frozenset(plus), frozenset(minus), tuple(cycle)))
    return rotations


def rotations_at(inst: Instance, X: Iterable[int], check: bool = True) -> List[Rotation]:
    """The set of rotations exposed by the stable matching ``X``."""
    D = build_admissible_graph(inst, X, check=check)
    return extract_rotations(inst, clean(inst, D))


def apply_rotation(inst: Instance, X: Iterable[int], L: Rotation) -> frozenset:
    X = frozenset(X)
    if L not in rotations_at(inst, X):
        raise NotARotationError("not a rotation of the given matching")
    return L.apply_to(X)


class RouteWalker:
    """Walks a route from a stable matching, scanning each worker's list once.

    Per worker it keeps the position of the current admissible candidate;
    edges passed over were uninteresting for their firm and stay so while
    firms only improve along the route.  A cached candidate is re-asked only
    after its firm's matched set changed.
    """

    def __init__(self, inst: Instance, X: Iterable[int]):
        self.inst = inst
        self.X = frozenset(X)
        self.steps = 0
        self._xf = [self.X & fe for fe in inst.firm_edges]
        self._version = [0] * len(inst.firms)
        self._pos: List[Optional[int]] = []
        for w in range(len(inst.workers)):
            if _is_full(inst, self.X, w):
                x = _least_preferred(inst, self.X & inst.worker_edges[w])
                self._pos.append(inst.rank[x] + 1)
            else:
                self._pos.append(None)
        self._cand: List[Optional[tuple]] = [None] * len(inst.workers)
        self._rotations: Optional[List[Rotation]] = None

    def _candidate(self, w: int):
        pos = self._pos[w]
        if pos is None:
            return None
        cached = self._cand[w]
        if cached is not None:
            a, chosen, version = cached
            if version == self._version[self.inst.edge_firm(a)]:
                return cached
        inst = self.inst
        pref = inst.workers[w].pref
        while pos < len(pref):
            e = pref[pos]
            f = inst.edge_firm(e)
            chosen = inst.firms[f].cf.choose(self._xf[f] | {e})
            if e in chosen:
                self._pos[w] = pos
                self._cand[w] = (e, chosen, self._version[f])
                return self._cand[w]
            pos += 1
        self._pos[w] = pos
        self._cand[w] = None
        return None

    def admissible_graph(self) -> AdmissibleGraph:
        admissible, displaced = {}, {}
        for w in range(len(self.inst.workers)):
            cand = self._candidate(w)
            if cand is None:
                continue
            a, chosen, _ = cand
            admissible[w] = a
            displaced[a] = _displaced_edge(self._xf[self.inst.edge_firm(a)], a, chosen)
        return AdmissibleGraph(self.X, admissible, displaced)

    def rotations(self) -> List[Rotation]:
        if self._rotations is None:
            gamma = clean(self.inst, self.admissible_graph())
            self._rotations = extract_rotations(self.inst, gamma)
        return self._rotations

    def apply(self, L: Rotation) -> frozenset:
        if L not in self.rotations():
            raise NotARotationError("rotation is not exposed at the current matching")
        inst = self.inst
        self.X = L.apply_to(self.X)
        for f in {inst.edge_firm(e) for e in L.plus}:
            self._xf[f] = self.X & inst.firm_edges[f]
            self._version[f] += 1
        for a in L.plus:
            w = inst.edge_worker(a)
            self._pos[w] = inst.rank[a] + 1
            self._cand[w] = None
        self._rotations = None
        self.steps += 1
        return self.X
