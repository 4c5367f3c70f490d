"""Acceptability, interesting and blocking edges, stability, and comparisons.

All predicates work on any :class:`~stablerot.instance.Market`, so the same
code checks CBM instances (linear workers) and S-model instances
(sequential workers).  Vertices are addressed by their string ids.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from .instance import Market


class Preference(str, Enum):
    FIRST = "first_preferred"
    SECOND = "second_preferred"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


class NotAcceptableError(ValueError):
    pass


def is_acceptable_at(m: Market, v: str, Z: Iterable[int]) -> bool:
    Z = frozenset(Z)
    return m.choose_at(v, Z) == Z


def is_acceptable(m: Market, X: Iterable[int]) -> bool:
    """True iff every restriction ``X_v`` is a fixed point of ``C_v``."""
    X = frozenset(X)
    for w in range(len(m.workers)):
        Xw = X & m.worker_edges[w]
        if m.worker_choose(w, Xw) != Xw:
            return False
    for f, firm in enumerate(m.firms):
        Xf = X & m.firm_edges[f]
        if firm.cf.choose(Xf) != Xf:
            return False
    return True


def is_interesting(m: Market, v: str, Z: Iterable[int], e: int) -> bool:
    """``e`` is interesting for ``v`` under the acceptable set ``Z``."""
    Z = frozenset(Z)
    if e in Z:
        raise ValueError(f"edge {e} already belongs to Z")
    if e not in m.edges_at(v):
        raise ValueError(f"edge {e} is not incident to {v!r}")
    return e in m.choose_at(v, Z | {e})


def blocking_edges(m: Market, X: Iterable[int]) -> frozenset:
    """All edges outside ``X`` interesting for both endpoints."""
    X = frozenset(X)
    if not is_acceptable(m, X):
        raise NotAcceptableError("blocking edges are only defined for acceptable matchings")
    out = set()
    for e in range(m.n_edges):
        if e in X:
            continue
        w, f = m.edges[e]
        Xw = X & m.worker_edges[w]
        if e not in m.worker_choose(w, Xw | {e}):
            continue
        Xf = X & m.firm_edges[f]
        if e in m.firms[f].cf.choose(Xf | {e}):
            out.add(e)
    return frozenset(out)


def is_stable(m: Market, X: Iterable[int]) -> bool:
    """Acceptable and unblocked; an unacceptable set is simply not stable."""
    X = frozenset(X)
    if not is_acceptable(m, X):
        return False
    return not blocking_edges(m, X)


def _check_acceptable_pair(m, v, Z, Z2):
    if not (is_acceptable_at(m, v, Z) and is_acceptable_at(m, v, Z2)):
        raise NotAcceptableError(f"sets compared at {v!r} must be acceptable")


def prefer_at(m: Market, v: str, Z: Iterable[int], Z2: Iterable[int]) -> Preference:
    """Compare two acceptable sets at ``v`` via ``C_v(Z | Z2)``."""
    Z, Z2 = frozenset(Z), frozenset(Z2)
    _check_acceptable_pair(m, v, Z, Z2)
    if Z == Z2:
        return Preference.EQUAL
    joined = m.choose_at(v, Z | Z2)
    if joined == Z:
        return Preference.FIRST
    if joined == Z2:
        return Preference.SECOND
    return Preference.INCOMPARABLE


def prefer_global(m: Market, X: Iterable[int], Y: Iterable[int], side: str) -> Preference:
    """Componentwise comparison of two matchings over side ``"W"`` or ``"F"``."""
    X, Y = frozenset(X), frozenset(Y)
    if side not in ("W", "F"):
        raise ValueError("side must be 'W' or 'F'")
    ids = m.vertex_ids("w" if side == "W" else "f")
    seen = set()
    for v in ids:
        p = prefer_at(m, v, m.restriction(X, v), m.restriction(Y, v))
        if p is Preference.INCOMPARABLE:
            return p
        seen.add(p)
    if Preference.FIRST in seen and Preference.SECOND in seen:
        return Preference.INCOMPARABLE
    if Preference.FIRST in seen:
        return Preference.FIRST
    if Preference.SECOND in seen:
        return Preference.SECOND
    return Preference.EQUAL


def join_at(m: Market, v: str, Z: Iterable[int], Z2: Iterable[int]) -> frozenset:
    Z, Z2 = frozenset(Z), frozenset(Z2)
    _check_acceptable_pair(m, v, Z, Z2)
    return m.choose_at(v, Z | Z2)


@dataclass(frozen=True)
class DeficitReport:
    deficit: frozenset
    fully_filled: frozenset


def deficit_report(m: Market, X: Iterable[int]) -> DeficitReport:
    X = frozenset(X)
    deficit, full = set(), set()
    for w, spec in enumerate(m.workers):
        (full if len(X & m.worker_edges[w]) >= spec.quota else deficit).add(spec.id)
    return DeficitReport(frozenset(deficit), frozenset(full))
