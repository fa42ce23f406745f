"""Named example seeds and a reproducible random corpus."""

from __future__ import annotations

import random
from typing import Callable

from .quiver import ExchangeMatrix, IceQuiver, Seed, random_exchange_matrix, random_quiver


def double_arrow() -> IceQuiver:
    """Acyclic: a double arrow ``1 => 2``, then ``2 -> 3`` and ``2 -> 4`` with 4 frozen."""
    return IceQuiver.from_arrows(4, [(1, 2, 2), (2, 3), (2, 4)], frozen=[4])


def oriented_cycle(k: int) -> IceQuiver:
    """``1 -> 2 -> ... -> k -> 1``."""
    return IceQuiver.from_arrows(k, [(i, i % k + 1) for i in range(1, k + 1)])


def triangle() -> IceQuiver:
    return oriented_cycle(3)


def bowtie() -> IceQuiver:
    """Two triangles ``1,2,5`` and ``2,3,4`` sharing vertex 2."""
    return IceQuiver.from_arrows(5, [(1, 2), (2, 3), (3, 4), (4, 2), (2, 5), (5, 1)])


def chorded_square() -> IceQuiver:
    """A 4-cycle with chord ``2 -> 4``; the triangle ``2,4,1`` makes the 4-cycle non-minimal."""
    return IceQuiver.from_arrows(4, [(1, 2), (2, 3), (3, 4), (4, 1), (2, 4)])


def skew_example() -> ExchangeMatrix:
    """A 3x2 skew-symmetrizable matrix with skew-symmetrizer ``diag(3, 2)``."""
    return ExchangeMatrix(((0, 3), (-2, 0), (1, 2)), (3, 2))


NAMED: dict[str, Callable[[], Seed]] = {
    "double_arrow": double_arrow,
    "triangle": triangle,
    "square": lambda: oriented_cycle(4),
    "pentagon": lambda: oriented_cycle(5),
    "bowtie": bowtie,
    "chorded_square": chorded_square,
    "skew_example": skew_example,
}


def named_seeds() -> dict[str, Seed]:
    return {name: make() for name, make in NAMED.items()}


def plant_cycle(q: IceQuiver, rng: random.Random, max_mult: int = 2) -> IceQuiver:
    """Overwrite arrows so that a random set of at least three vertices carries an oriented cycle."""
    if q.n < 3:
        return q
    k = rng.randint(3, q.n)
    vs = rng.sample(range(1, q.n + 1), k)
    arrows = dict(q.arrows)
    for a, b in zip(vs, vs[1:] + vs[:1]):
        arrows.pop((b, a), None)
        arrows[(a, b)] = rng.randint(1, max_mult)
    return IceQuiver(q.n, arrows, q.frozen)


def random_corpus(count: int, seed: int, max_n: int = 5, max_mult: int = 2) -> list[IceQuiver]:
    """``count`` random quivers; every other one gets a planted oriented cycle."""
    rng = random.Random(seed)
    out = []
    for idx in range(count):
        q = random_quiver(rng, max_n=max_n, max_mult=max_mult)
        out.append(plant_cycle(q, rng, max_mult) if idx % 2 else q)
    return out


def random_matrix_corpus(count: int, seed: int) -> list[ExchangeMatrix]:
    rng = random.Random(seed)
    return [random_exchange_matrix(rng) for _ in range(count)]
