"""Choice functions for firms, behind a single counted oracle interface.

Every firm preference is an operator ``C`` on subsets of the firm's incident
edges with ``C(Z) <= Z``.  Algorithms only ever talk to a firm through
:meth:`ChoiceOracle.choose`, which also counts calls so that complexity can
be measured in oracle calls.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping, Optional, Sequence

EdgeSet = frozenset


class ChoiceError(ValueError):
    """Raised on a malformed choice function or an out-of-domain query."""


class ChoiceOracle:
    """Base class: a choice function on a fixed edge domain with a call counter.

    The counter is a plain integer and is not guarded by a lock; share an
    oracle between threads only if call counts do not matter.
    """

    kind = "abstract"

    def __init__(self, domain: Iterable[int]):
        self.domain = frozenset(domain)
        self.calls = 0

    def choose(self, Z: Iterable[int]) -> frozenset:
        Z = frozenset(Z)
        if not Z <= self.domain:
            raise ChoiceError(f"query {sorted(Z - self.domain)} outside the domain")
        self.calls += 1
        return self._choose(Z)

    def _choose(self, Z: frozenset) -> frozenset:
        raise NotImplementedError

    @property
    def quota(self) -> Optional[int]:
        """Declared quota for (A4), or None when the family has none."""
        return None

    def spec(self) -> dict:
        """JSON-ready description using raw edge indices."""
        raise NotImplementedError

    def __repr__(self):
        return f"{type(self).__name__}({self.spec()})"


class LinearQuotaCF(ChoiceOracle):
    """Take the ``min(|Z|, quota)`` best elements of ``Z`` by a linear order."""

    kind = "linear_quota"

    def __init__(self, order: Sequence[int], quota: int):
        super().__init__(order)
        if len(self.domain) != len(order):
            raise ChoiceError("linear_quota order repeats an edge")
        if quota < 1:
            raise ChoiceError("linear_quota quota must be >= 1")
        self.order = tuple(order)
        self._quota = int(quota)
        self._rank = {e: i for i, e in enumerate(self.order)}

    @property
    def quota(self) -> int:
        return self._quota

    def _choose(self, Z):
        if len(Z) <= self._quota:
            return Z
        return frozenset(sorted(Z, key=self._rank.__getitem__)[: self._quota])

    def spec(self):
        return {"type": self.kind, "quota": self._quota, "order": list(self.order)}


class SequentialCF(ChoiceOracle):
    """Sequential choice ``C^1 * ... * C^q``.

    Pass ``i`` picks the maximum of what is left under the ``i``-th order;
    the function stops early once ``Z`` is exhausted.
    """

    kind = "sequential"

    def __init__(self, orders: Sequence[Sequence[int]]):
        if not orders:
            raise ChoiceError("sequential choice needs at least one order")
        super().__init__(orders[0])
        for order in orders:
            if frozenset(order) != self.domain or len(order) != len(self.domain):
                raise ChoiceError("every sequential order must permute the domain")
        self.orders = tuple(tuple(o) for o in orders)

    @property
    def quota(self) -> int:
        return len(self.orders)

    def _choose(self, Z):
        left = set(Z)
        picked = []
        for order in self.orders:
            if not left:
                break
            for e in order:
                if e in left:
                    picked.append(e)
                    left.discard(e)
                    break
        return frozenset(picked)

    def spec(self):
        return {"type": self.kind, "orders": [list(o) for o in self.orders]}


class TableCF(ChoiceOracle):
    """Explicit lookup table; used to build axiom-violating functions for tests."""

    kind = "table"

    def __init__(self, domain: Iterable[int], entries: Mapping[Iterable[int], Iterable[int]]):
        super().__init__(domain)
        table = {}
        for key, value in entries.items():
            key, value = frozenset(key), frozenset(value)
            if not key <= self.domain:
                raise ChoiceError("table key outside the domain")
            if not value <= key:
                raise ChoiceError(f"table value {sorted(value)} is not a subset of its key")
            table[key] = value
        if len(table) != 2 ** len(self.domain):
            raise ChoiceError(
                f"table has {len(table)} entries; a domain of size {len(self.domain)}"
                f" needs {2 ** len(self.domain)}"
            )
        self.table = table

    def _choose(self, Z):
        try:
            return self.table[Z]
        except KeyError:
            raise ChoiceError(f"table miss for {sorted(Z)}") from None

    def spec(self):
        keys = sorted(self.table, key=lambda k: (len(k), sorted(k)))
        return {
            "type": self.kind,
            "entries": [{"in": sorted(k), "out": sorted(self.table[k])} for k in keys],
        }


def worker_choice(worker, Z: Iterable[int]) -> frozenset:
    """Top ``min(quota, |Z|)`` edges of ``Z`` under the worker's linear order.

    ``worker`` needs ``pref`` and ``quota`` attributes.  Workers are not
    oracles: these evaluations are never counted.
    """
    Z = frozenset(Z)
    if len(Z) <= worker.quota:
        if not Z <= frozenset(worker.pref):
            raise ChoiceError("worker query outside the worker's edges")
        return Z
    order = [e for e in worker.pref if e in Z]
    if len(order) != len(Z):
        raise ChoiceError("worker query outside the worker's edges")
    return frozenset(order[: worker.quota])


@dataclass(frozen=True)
class AxiomReport:
    a1: bool
    a2: bool
    a3: bool
    a4: Optional[bool]
    plottian: bool
    method: str

    @property
    def plottian_consistent(self) -> bool:
        """Path independence must coincide with (A1) and (A2) together."""
        return self.plottian == (self.a1 and self.a2)

    def as_dict(self):
        return {
            "a1": self.a1,
            "a2": self.a2,
            "a3": self.a3,
            "a4": self.a4,
            "plottian": self.plottian,
            "plottian_equals_a1_and_a2": self.plottian_consistent,
        }


MAX_AXIOM_DOMAIN = 20
PAIRWISE_LIMIT = 10


def _choice_table(oracle: ChoiceOracle):
    elems = sorted(oracle.domain)
    bit = {e: 1 << i for i, e in enumerate(elems)}
    n = len(elems)
    table = [0] * (1 << n)
    for mask in range(1 << n):
        Z = frozenset(e for e in elems if mask & bit[e])
        out = 0
        for e in oracle.choose(Z):
            out |= bit[e]
        table[mask] = out
    return n, table


def _pairwise(n, C, quota):
    full = 1 << n
    a1 = a2 = a3 = True
    a4 = None if quota is None else True
    plott = True
    pop = [bin(m).count("1") for m in range(full)]
    for Z in range(full):
        CZ = C[Z]
        if quota is not None and pop[CZ] != min(pop[Z], quota):
            a4 = False
        # Z' ranges over the submasks of Z
        sub = Z
        while True:
            if (sub & CZ) == CZ and C[sub] != CZ:
                a1 = False
            if CZ & sub & ~C[sub]:
                a2 = False
            if pop[CZ] < pop[C[sub]]:
                a3 = False
            if sub == 0:
                break
            sub = (sub - 1) & Z
        for Zp in range(full):
            if C[Z | Zp] != C[CZ | Zp]:
                plott = False
                break
    return a1, a2, a3, a4, plott


def _local(n, C, quota):
    # Single-element forms.  (A1)-(A3) are each equivalent to their
    # one-element versions by chaining removals.  One-element path
    # independence alone is weaker; together with (A1) it is equivalent.
    full = 1 << n
    a1 = a2 = a3 = plott = True
    a4 = None if quota is None else True
    for Z in range(full):
        CZ = C[Z]
        if quota is not None and bin(CZ).count("1") != min(bin(Z).count("1"), quota):
            a4 = False
        for i in range(n):
            b = 1 << i
            if Z & b:
                Zm = Z & ~b
                if not CZ & b and C[Zm] != CZ:
                    a1 = False
                if CZ & Zm & ~C[Zm]:
                    a2 = False
                if bin(CZ).count("1") < bin(C[Zm]).count("1"):
                    a3 = False
            elif C[Z | b] != C[CZ | b]:
                plott = False
    return a1, a2, a3, a4, plott and a1


def verify_axioms(oracle: ChoiceOracle, method: str = "auto") -> AxiomReport:
    """Exhaustively decide (A1)-(A4) and path independence for ``oracle``.

    ``method="pairwise"`` checks the axioms literally over all pairs
    ``Z' <= Z`` (and all pairs for path independence); ``"local"`` uses the
    equivalent one-element forms, which is what makes domains up to 20
    feasible.  ``"auto"`` picks pairwise up to domain size 10.
    """
    n = len(oracle.domain)
    if n > MAX_AXIOM_DOMAIN:
        raise ChoiceError(f"domain of size {n} is too large for an exhaustive check")
    if method == "auto":
        method = "pairwise" if n <= PAIRWISE_LIMIT else "local"
    n, C = _choice_table(oracle)
    if method == "pairwise":
        flags = _pairwise(n, C, oracle.quota)
    elif method == "local":
        flags = _local(n, C, oracle.quota)
    else:
        raise ValueError(f"unknown method {method!r}")
    return AxiomReport(*flags, method=method)


def subsets(items: Iterable[int]):
    items = sorted(items)
    for k in range(len(items) + 1):
        for combo in combinations(items, k):
            yield frozenset(combo)
