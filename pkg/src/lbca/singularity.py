"""Jacobian smoothness checks on V(K_Q) and the singular locus of path quivers."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .polynomial import Polynomial
from .presentation import generators
from .quiver import IceQuiver, Seed


class NotOnVariety(ValueError):
    pass


@dataclass(frozen=True)
class RationalPoint:
    x: tuple[Fraction, ...]
    y: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(Fraction(v) for v in self.x))
        object.__setattr__(self, "y", tuple(Fraction(v) for v in self.y))
        if len(self.x) != len(self.y):
            raise ValueError("x and y coordinates must have equal length")

    @property
    def n(self) -> int:
        return len(self.x)

    def to_dict(self) -> dict:
        return {"x": [str(v) for v in self.x], "y": [str(v) for v in self.y]}

    @classmethod
    def from_dict(cls, data: dict) -> "RationalPoint":
        return cls(tuple(Fraction(v) for v in data["x"]), tuple(Fraction(v) for v in data["y"]))


@dataclass
class JacobianEval:
    matrix: list[list[Fraction]]
    rank: int


def exact_rank(matrix: Sequence[Sequence]) -> int:
    """Rank by fraction-free (Bareiss) elimination on an integer rescaling."""
    rows = []
    for row in matrix:
        row = [Fraction(v) for v in row]
        scale = lcm(*(v.denominator for v in row)) if row else 1
        rows.append([int(v * scale) for v in row])
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        p = rows[rank][col]
        for r in range(rank + 1, len(rows)):
            a = rows[r][col]
            rows[r] = [(p * rows[r][c] - a * rows[rank][c]) // prev for c in range(ncols)]
        prev = p
        rank += 1
        if rank == len(rows):
            break
    return rank


def _generator_list(q: Seed) -> list[Polynomial]:
    return generators(q).polynomials()


def on_variety(q: Seed, p: RationalPoint) -> bool:
    if p.n != q.n:
        return False
    return all(g.evaluate(p.x, p.y) == 0 for g in _generator_list(q))


def jacobian_rank(q: Seed, p: RationalPoint) -> JacobianEval:
    """Jacobian of all generators in columns ``x_1..x_n, y_1..y_n``, evaluated at ``p``."""
    if not on_variety(q, p):
        raise NotOnVariety(f"point {p.to_dict()} is not on the variety")
    n = q.n
    matrix = []
    for g in _generator_list(q):
        row = [Fraction(g.diff("x", i).evaluate(p.x, p.y)) for i in range(1, n + 1)]
        row += [Fraction(g.diff("y", i).evaluate(p.x, p.y)) for i in range(1, n + 1)]
        matrix.append(row)
    return JacobianEval(matrix, exact_rank(matrix))


def path_quiver(n: int) -> IceQuiver:
    """``1 -> 2 -> ... -> n`` with nothing frozen."""
    if n < 1:
        raise ValueError("path quiver needs n >= 1")
    return IceQuiver(n, {(i, i + 1): 1 for i in range(1, n)})


def path_singular_locus(n: int) -> list[RationalPoint]:
    """Singular points of V(K_{Q_n}) from the row-relation case analysis.

    The Jacobian has rank < n iff its rows admit a nontrivial relation.  Row
    ``i`` has ``x_i`` in its ``y_i`` column, so a relation uses only rows with
    ``x_i = 0``; adjacent x's never vanish together, so the rows used are
    pairwise non-adjacent.  Column ``x_j`` for an unused row ``j`` forces
    ``c_{j-1} + c_{j+1} = 0`` (with ``c_0 = c_{n+1} = 0``), so the support is
    closed under stepping by two and must reach both ends: it is every odd
    row, with ``n`` odd, and column ``x_i`` for odd ``i`` then forces
    ``y_i = 0``.
    """
    if n < 1:
        raise ValueError("path quiver needs n >= 1")
    if n % 2 == 0:
        return []
    x = [Fraction(0)] * (n + 2)  # x[0] and x[n+1] stand for the constant 1
    x[0] = x[n + 1] = Fraction(1)
    # For odd i the defining relation reads x_{i-1} + x_{i+1} = 0.
    for i in range(1, n + 1, 2):
        if i + 1 <= n:
            x[i + 1] = -x[i - 1]
        elif x[i - 1] + x[i + 1] != 0:
            return []
    y = [Fraction(0)] * (n + 2)
    for i in range(2, n + 1, 2):
        y[i] = (x[i - 1] + x[i + 1]) / x[i]
    point = RationalPoint(tuple(x[1 : n + 1]), tuple(y[1 : n + 1]))
    q = path_quiver(n)
    if not on_variety(q, point) or jacobian_rank(q, point).rank >= n:
        raise AssertionError(f"candidate singular point for n={n} failed re-verification")
    return [point]


def _nonzero_rational(rng: random.Random, bound: int = 9) -> Fraction:
    while True:
        v = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        if v:
            return v


def sample_generic_point(q: Seed, rng: random.Random) -> RationalPoint:
    """A point with every ``x_i`` nonzero and ``y`` solved from the defining relations.

    For a quiver with cycles the cycle relations must also hold; they do
    automatically because ``y_i = x_i'`` evaluated at ``x``.
    """
    n = q.n
    x = [_nonzero_rational(rng) for _ in range(n)]
    y = []
    for i in range(1, n + 1):
        if q.is_frozen(i):
            y.append(1 / x[i - 1])
            continue
        plus, minus = q.exponents(i)
        total = Fraction(0)
        for m in (plus, minus):
            t = Fraction(1)
            for v, e in zip(x, m):
                t *= v**e
            total += t
        y.append(total / x[i - 1])
    return RationalPoint(tuple(x), tuple(y))


def sample_path_point(n: int, rng: random.Random, zero_prob: float = 0.35) -> RationalPoint:
    """A point of V(K_{Q_n}) that may have zero x-coordinates.

    Zeros are placed on non-adjacent positions; for a zero at ``i`` the
    relation forces ``x_{i+1} = -x_{i-1}`` and leaves ``y_i`` free.
    """
    while True:
        x = [Fraction(1)] + [Fraction(0)] * n + [Fraction(1)]
        zero = [False] * (n + 2)
        for i in range(1, n + 1):
            if zero[i - 1]:
                x[i] = -x[i - 2]
            elif rng.random() < zero_prob:
                zero[i] = True
            else:
                x[i] = _nonzero_rational(rng)
        if zero[n] and x[n - 1] + 1 != 0:
            continue
        y = [Fraction(0)] * (n + 2)
        for i in range(1, n + 1):
            y[i] = _nonzero_rational(rng) if zero[i] else (x[i - 1] + x[i + 1]) / x[i]
        return RationalPoint(tuple(x[1 : n + 1]), tuple(y[1 : n + 1]))
