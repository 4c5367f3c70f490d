"""The worker-optimal stable matching Xmin, and Xmax by route exhaustion."""

from __future__ import annotations

from dataclasses import dataclass, field

from .instance import Instance


@dataclass(frozen=True)
class Round:
    B: frozenset
    X: frozenset
    Y: frozenset

    @property
    def removed(self) -> frozenset:
        """Edges proposed by workers and rejected by firms this round."""
        return self.X - self.Y


@dataclass
class IterationTrace:
    rounds: list = field(default_factory=list)
    result: frozenset = frozenset()


def compute_xmin(inst: Instance):
    """Return ``(Xmin, trace)``.

    Each round every worker takes its best ``q(w)`` edges of ``B``, every
    firm filters what it received, and the rejected proposals leave ``B``.
    The loop stops once no firm rejects anything.
    """
    B = frozenset(range(inst.n_edges))
    trace = IterationTrace()
    while True:
        X = set()
        for w in range(len(inst.workers)):
            X |= inst.worker_choose(w, B & inst.worker_edges[w])
        X = frozenset(X)
        Y = set()
        for f, firm in enumerate(inst.firms):
            Xf = X & inst.firm_edges[f]
            if Xf:
                Y |= firm.cf.choose(Xf)
        Y = frozenset(Y)
        trace.rounds.append(Round(B, X, Y))
        if X == Y:
            trace.result = X
            return X, trace
        B = B - (X - Y)


def compute_xmax(inst: Instance) -> frozenset:
    """Final matching of the canonical full route out of Xmin."""
    from .poset import full_route

    return full_route(inst).matchings[-1]
