"""Signed rotation vectors, the affine map onto matchings, and order-polytope facets.

Everything is exact: vectors hold small integers and ranks are computed
over ``Fraction``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence

from .poset import DEFAULT_ENUM_LIMIT, RotationPoset, enumerate_ideals
from .stability import is_stable


class TriangularityError(RuntimeError):
    pass


class OutsideCubeError(ValueError):
    pass


@dataclass(frozen=True)
class AffineRep:
    columns: tuple  # one tuple of {-1, 0, 1} per rotation, in id order
    base: tuple  # indicator of Xmin
    pivots: tuple  # one minus-edge per rotation

    @property
    def n_rotations(self) -> int:
        return len(self.columns)

    def pivot_block(self) -> list:
        """The square submatrix on the pivot rows, row j = pivot of rotation j."""
        return [[col[p] for col in self.columns] for p in self.pivots]


def signed_vector(n_edges: int, plus: Iterable[int], minus: Iterable[int]) -> tuple:
    v = [0] * n_edges
    for e in plus:
        v[e] = 1
    for e in minus:
        v[e] = -1
    return tuple(v)


def check_triangular(rep: AffineRep) -> None:
    block = rep.pivot_block()
    for j, row in enumerate(block):
        if row[j] != -1:
            raise TriangularityError(f"diagonal entry {j} is {row[j]}, expected -1")
        if any(row[i] for i in range(j + 1, len(row))):
            raise TriangularityError(f"pivot row {j} has a nonzero entry right of the diagonal")


def build_affine(poset: RotationPoset) -> AffineRep:
    """Columns in id order (a topological order); pivot = smallest unused minus-edge."""
    n = poset.instance.n_edges
    columns, pivots, used = [], [], set()
    for R in poset.rotations:
        columns.append(signed_vector(n, R.plus, R.minus))
        free = sorted(R.minus - used)
        if not free:
            raise TriangularityError("rotation has no unused minus-edge for a pivot")
        pivots.append(free[0])
        used.add(free[0])
    rep = AffineRep(tuple(columns), signed_vector(n, poset.xmin, ()), tuple(pivots))
    check_triangular(rep)
    return rep


def gamma(rep: AffineRep, lam: Sequence[int]) -> tuple:
    """``chi(Xmin) + A lam``; rejects results outside the 0/1 cube."""
    if len(lam) != rep.n_rotations:
        raise ValueError("lambda has the wrong length")
    x = list(rep.base)
    for coef, col in zip(lam, rep.columns):
        if coef:
            for e, v in enumerate(col):
                x[e] += coef * v
    if any(v not in (0, 1) for v in x):
        raise OutsideCubeError("image is not a 0/1 vector")
    return tuple(x)


def indicator(n: int, members: Iterable[int]) -> tuple:
    s = set(members)
    return tuple(1 if i in s else 0 for i in range(n))


def facets(poset: RotationPoset) -> list:
    out = [{"kind": "at_most_one", "rotations": [i]} for i in poset.minimal()]
    out += [{"kind": "at_least_zero", "rotations": [i]} for i in poset.maximal()]
    out += [{"kind": "precedence", "rotations": [i, j]} for i, j in sorted(poset.hasse)]
    return out


def verify_vertices(poset: RotationPoset, rep: AffineRep, limit: Optional[int] = DEFAULT_ENUM_LIMIT) -> bool:
    """Ideal indicators map to pairwise distinct stable matchings."""
    ideals = enumerate_ideals(poset, limit)
    images = set()
    for I in ideals:
        try:
            x = gamma(rep, indicator(len(poset), I))
        except OutsideCubeError:
            return False
        X = frozenset(e for e, v in enumerate(x) if v)
        if not is_stable(poset.instance, X):
            return False
        images.add(x)
    return len(images) == len(ideals)


def rank(rows: List[Sequence]) -> int:
    """Exact rank by Gaussian elimination over the rationals."""
    M = [[Fraction(v) for v in r] for r in rows]
    if not M:
        return 0
    r, ncols = 0, len(M[0])
    for c in range(ncols):
        pivot = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if pivot is None:
            continue
        M[r], M[pivot] = M[pivot], M[r]
        for i in range(r + 1, len(M)):
            if M[i][c] != 0:
                f = M[i][c] / M[r][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        r += 1
        if r == len(M):
            break
    return r


def affine_dimension(points: Iterable[Sequence[int]]) -> int:
    points = [tuple(p) for p in points]
    if not points:
        return -1
    p0 = points[0]
    return rank([[a - b for a, b in zip(p, p0)] for p in points[1:]])
