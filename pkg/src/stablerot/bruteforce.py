"""Exhaustive ground truth for small markets.

Deliberately naive: stability is re-derived from the choice functions here
rather than through :mod:`stablerot.stability`, and rotations are read off
covering pairs of the brute-force lattice instead of the admissible graph.
Works for both CBM and S-model markets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .instance import Market

DEFAULT_CAP = 14
PRECEDENCE_CAP = 8


class BruteForceCapError(RuntimeError):
    pass


class _Choices:
    """Memoized per-vertex choice on bitmasks of global edge indices."""

    def __init__(self, m: Market):
        self.m = m
        self.wmask = [sum(1 << e for e in es) for es in m.worker_edges]
        self.fmask = [sum(1 << e for e in es) for es in m.firm_edges]
        self._w: List[Dict[int, int]] = [{} for _ in m.workers]
        self._f: List[Dict[int, int]] = [{} for _ in m.firms]

    @staticmethod
    def _set(mask):
        return frozenset(i for i in range(mask.bit_length()) if mask >> i & 1)

    def worker(self, w, mask):
        memo = self._w[w]
        if mask not in memo:
            memo[mask] = sum(1 << e for e in self.m.worker_choose(w, self._set(mask)))
        return memo[mask]

    def firm(self, f, mask):
        memo = self._f[f]
        if mask not in memo:
            memo[mask] = sum(1 << e for e in self.m.firms[f].cf.choose(self._set(mask)))
        return memo[mask]


def _stable(ch: _Choices, m: Market, X: int) -> bool:
    for w, wm in enumerate(ch.wmask):
        if ch.worker(w, X & wm) != X & wm:
            return False
    for f, fm in enumerate(ch.fmask):
        if ch.firm(f, X & fm) != X & fm:
            return False
    for e, (w, f) in enumerate(m.edges):
        bit = 1 << e
        if X & bit:
            continue
        if ch.worker(w, (X & ch.wmask[w]) | bit) & bit and ch.firm(f, (X & ch.fmask[f]) | bit) & bit:
            return False
    return True


@dataclass
class BruteForceReport:
    stable: list  # frozensets, sorted by edge tuple
    lattice_min: Optional[frozenset]
    lattice_max: Optional[frozenset]
    cardinalities: Dict[str, int]
    unicardinal: bool
    leq: Dict[Tuple[int, int], bool] = field(repr=False)  # X_i <=_F X_j
    meet: Dict[Tuple[int, int], Optional[int]] = field(repr=False)
    join: Dict[Tuple[int, int], Optional[int]] = field(repr=False)
    distributive: bool = False
    polarity: bool = False
    tested: int = 0

    def index(self, X) -> int:
        return self.stable.index(frozenset(X))

    def covers(self) -> List[Tuple[int, int]]:
        n = len(self.stable)
        out = []
        for i in range(n):
            for j in range(n):
                if i == j or not self.leq[i, j]:
                    continue
                if not any(k not in (i, j) and self.leq[i, k] and self.leq[k, j] for k in range(n)):
                    out.append((i, j))
        return out

    def cover_rotations(self) -> Dict[Tuple[int, int], tuple]:
        """Label each covering pair ``X < X'`` by ``(X' - X, X - X')``."""
        return {
            (i, j): (self.stable[j] - self.stable[i], self.stable[i] - self.stable[j])
            for i, j in self.covers()
        }

    def rotation_set(self) -> frozenset:
        return frozenset(self.cover_rotations().values())


def _order(ch: _Choices, sets: List[int], masks: List[int], pick) -> Dict[Tuple[int, int], bool]:
    n = len(sets)
    leq = {}
    for i in range(n):
        for j in range(n):
            leq[i, j] = all(pick(v, (sets[i] | sets[j]) & vm) == sets[j] & vm for v, vm in enumerate(masks))
    return leq


def _bound(n, leq, upper: bool):
    """Least upper (or greatest lower) bound table from the order."""
    out = {}
    for i in range(n):
        for j in range(n):
            if upper:
                cands = [k for k in range(n) if leq[i, k] and leq[j, k]]
                best = [k for k in cands if all(leq[k, c] for c in cands)]
            else:
                cands = [k for k in range(n) if leq[k, i] and leq[k, j]]
                best = [k for k in cands if all(leq[c, k] for c in cands)]
            out[i, j] = best[0] if len(best) == 1 else None
    return out


def brute_stable(m: Market, cap: int = DEFAULT_CAP) -> BruteForceReport:
    """Test every subset of E for stability, then build the lattice tables."""
    if m.n_edges > cap:
        raise BruteForceCapError(f"{m.n_edges} edges exceed the brute-force cap of {cap}")
    ch = _Choices(m)
    found = []
    total = 1 << m.n_edges
    for k in range(total):
        X = k ^ (k >> 1)  # Gray code order
        if _stable(ch, m, X):
            found.append(X)
    found.sort(key=lambda X: [e for e in range(m.n_edges) if X >> e & 1])
    stable = [ch._set(X) for X in found]
    n = len(found)

    leq = _order(ch, found, ch.fmask, ch.firm)
    wleq = _order(ch, found, ch.wmask, ch.worker)
    polarity = all(leq[i, j] == wleq[j, i] for i in range(n) for j in range(n))
    meet = _bound(n, leq, upper=False)
    join = _bound(n, leq, upper=True)

    distributive = all(v is not None for v in meet.values()) and all(
        v is not None for v in join.values()
    )
    if distributive:
        distributive = all(
            meet[x, join[y, z]] == join[meet[x, y], meet[x, z]]
            for x in range(n) for y in range(n) for z in range(n)
        )

    lo = [i for i in range(n) if all(leq[i, j] for j in range(n))]
    hi = [i for i in range(n) if all(leq[j, i] for j in range(n))]

    cards, uni = {}, True
    vertices = [(w.id, ch.wmask[k]) for k, w in enumerate(m.workers)]
    vertices += [(f.id, ch.fmask[k]) for k, f in enumerate(m.firms)]
    for vid, vm in vertices:
        sizes = {bin(X & vm).count("1") for X in found}
        if len(sizes) > 1:
            uni = False
        cards[vid] = min(sizes) if sizes else 0

    return BruteForceReport(
        stable=stable,
        lattice_min=stable[lo[0]] if lo else None,
        lattice_max=stable[hi[0]] if hi else None,
        cardinalities=cards,
        unicardinal=uni,
        leq=leq,
        meet=meet,
        join=join,
        distributive=distributive,
        polarity=polarity,
        tested=total,
    )


def brute_precedence(m: Market, report: Optional[BruteForceReport] = None, cap: int = PRECEDENCE_CAP):
    """Rotations (as ``(plus, minus)`` pairs) and the set of pairs ``(R, R')``
    such that ``R`` comes before ``R'`` on every maximal chain of the lattice.
    """
    report = report or brute_stable(m)
    labels = report.cover_rotations()
    rotations = sorted(report.rotation_set(), key=lambda r: (sorted(r[1]), sorted(r[0])))
    if len(rotations) > cap:
        raise BruteForceCapError(f"{len(rotations)} rotations exceed the route cap of {cap}")
    succ: Dict[int, list] = {}
    for (i, j), lab in labels.items():
        succ.setdefault(i, []).append((j, lab))
    top = report.index(report.lattice_max)

    # every ordered pair starts as a candidate and is struck out by a
    # maximal chain that violates it
    before = {(a, b) for a in rotations for b in rotations if a != b}
    path: list = []

    def walk(i):
        nonlocal before
        if i == top:
            pos = {lab: k for k, lab in enumerate(path)}
            if set(pos) != set(rotations):
                raise RuntimeError("a maximal chain missed some rotation")
            before = {(a, b) for a, b in before if pos[a] < pos[b]}
            return
        for j, lab in succ.get(i, []):
            path.append(lab)
            walk(j)
            path.pop()

    walk(report.index(report.lattice_min))
    return rotations, frozenset(before)
