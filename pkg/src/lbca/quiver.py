"""Ice quivers, skew-symmetrizable exchange matrices and their directed cycles.

Vertices are labelled ``1..n`` throughout.  Both :class:`IceQuiver` and
:class:`ExchangeMatrix` act as *seeds*: they expose ``n``, ``is_frozen(i)``,
``exponents(i)`` (the exponent vectors of ``p_i^+`` and ``p_i^-``) and
``quiver`` (the arrow graph used for cycle enumeration).
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from math import lcm
from typing import Iterable, Mapping, Union

from .polynomial import LaurentPolynomial


class QuiverError(ValueError):
    pass


class LoopArrow(QuiverError):
    def __init__(self, i: int):
        super().__init__(f"loop at vertex {i}")
        self.i = i


class TwoCycle(QuiverError):
    def __init__(self, i: int, j: int):
        super().__init__(f"directed 2-cycle between {i} and {j}")
        self.i, self.j = i, j


class NonPositiveMultiplicity(QuiverError):
    def __init__(self, i: int, j: int, mult: int):
        super().__init__(f"arrow {i}->{j} has multiplicity {mult}")
        self.i, self.j = i, j


class FrozenOutOfRange(QuiverError):
    pass


class IndexOutOfRange(QuiverError, IndexError):
    pass


class FrozenVertex(QuiverError):
    def __init__(self, i: int):
        super().__init__(f"vertex {i} is frozen")
        self.i = i


class NotSkewSymmetrizable(QuiverError):
    pass


@dataclass(frozen=True)
class IceQuiver:
    """A quiver on ``1..n`` without loops or 2-cycles, with a frozen subset.

    ``arrows`` maps ``(source, target)`` to a positive multiplicity.
    """

    n: int
    arrows: Mapping[tuple[int, int], int] = field(default_factory=dict)
    frozen: frozenset[int] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "arrows", dict(sorted(dict(self.arrows).items())))
        object.__setattr__(self, "frozen", frozenset(self.frozen))
        validate(self)

    def __hash__(self):
        return hash((self.n, tuple(self.arrows.items()), self.frozen))

    @classmethod
    def from_arrows(cls, n: int, arrows: Iterable, frozen: Iterable[int] = ()) -> "IceQuiver":
        """Build from ``(src, dst)`` or ``(src, dst, mult)`` items; repeats add up."""
        acc: dict = {}
        for a in arrows:
            src, dst, *rest = a
            mult = rest[0] if rest else 1
            acc[(src, dst)] = acc.get((src, dst), 0) + mult
        return cls(n, acc, frozenset(frozen))

    @property
    def quiver(self) -> "IceQuiver":
        return self

    @property
    def unfrozen(self) -> list[int]:
        return [i for i in range(1, self.n + 1) if i not in self.frozen]

    def is_frozen(self, i: int) -> bool:
        return i in self.frozen

    def exponents(self, i: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
        plus = [0] * self.n
        minus = [0] * self.n
        for (s, t), mult in self.arrows.items():
            if s == i:
                plus[t - 1] += mult
            elif t == i:
                minus[s - 1] += mult
        return tuple(plus), tuple(minus)

    def successors(self, i: int) -> list[int]:
        return [t for (s, t) in self.arrows if s == i]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "arrows": [[s, t, m] for (s, t), m in self.arrows.items()],
            "frozen": sorted(self.frozen),
        }


def validate(q: IceQuiver) -> None:
    """Raise a :class:`QuiverError` unless ``q`` is a valid ice quiver."""
    if q.n < 0:
        raise IndexOutOfRange(f"negative vertex count {q.n}")
    for (i, j), mult in q.arrows.items():
        if not (1 <= i <= q.n and 1 <= j <= q.n):
            raise IndexOutOfRange(f"arrow {i}->{j} leaves 1..{q.n}")
        if i == j:
            raise LoopArrow(i)
        if (j, i) in q.arrows:
            raise TwoCycle(min(i, j), max(i, j))
        if mult <= 0:
            raise NonPositiveMultiplicity(i, j, mult)
    bad = [v for v in q.frozen if not 1 <= v <= q.n]
    if bad:
        raise FrozenOutOfRange(f"frozen vertices {sorted(bad)} outside 1..{q.n}")


@dataclass(frozen=True)
class ExchangeMatrix:
    """An ``n x m`` integer matrix ``B`` with skew-symmetrizer ``D = diag(d_1..d_m)``.

    Columns ``1..m`` are the mutable indices; rows ``m+1..n`` are frozen.
    """

    B: tuple[tuple[int, ...], ...]
    D: tuple[int, ...]

    def __post_init__(self):
        B = tuple(tuple(int(v) for v in row) for row in self.B)
        D = tuple(int(d) for d in self.D)
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "D", D)
        m = len(D)
        if any(len(row) != m for row in B) or len(B) < m:
            raise NotSkewSymmetrizable(f"B must be n x {m} with n >= {m}")
        if any(d < 1 for d in D):
            raise NotSkewSymmetrizable("skew-symmetrizer entries must be positive")
        for i in range(m):
            for j in range(m):
                if B[i][j] * D[j] != -B[j][i] * D[i]:
                    raise NotSkewSymmetrizable(f"(BD)[{i + 1},{j + 1}] != -(BD)[{j + 1},{i + 1}]")

    @property
    def n(self) -> int:
        return len(self.B)

    @property
    def m(self) -> int:
        return len(self.D)

    @property
    def frozen(self) -> frozenset[int]:
        return frozenset(range(self.m + 1, self.n + 1))

    def is_frozen(self, i: int) -> bool:
        return i > self.m

    def exponents(self, i: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
        col = [row[i - 1] for row in self.B]
        return tuple(max(b, 0) for b in col), tuple(max(-b, 0) for b in col)

    @property
    def quiver(self) -> IceQuiver:
        return quiver_of_matrix(self)

    def to_dict(self) -> dict:
        return {"B": [list(r) for r in self.B], "D": list(self.D)}


Seed = Union[IceQuiver, ExchangeMatrix]


def quiver_of_matrix(e: ExchangeMatrix) -> IceQuiver:
    """The sign quiver Q(B): arrow ``i -> j`` iff ``B_ji > 0`` or ``B_ij < 0``.

    Both triggers describe the same arrow, so each arrow gets multiplicity 1.
    Exponent data stays with the matrix.
    """
    arrows = {}
    n, m = e.n, e.m
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                continue
            fwd = (i <= m and e.B[j - 1][i - 1] > 0) or (j <= m and e.B[i - 1][j - 1] < 0)
            if fwd:
                arrows[(i, j)] = 1
    return IceQuiver(n, arrows, e.frozen)


def exchange_monomials(src: Seed, i: int) -> tuple[LaurentPolynomial, LaurentPolynomial]:
    """``(p_i^+, p_i^-)`` as Laurent monomials with coefficient 1."""
    if not 1 <= i <= src.n:
        raise IndexOutOfRange(f"vertex {i} outside 1..{src.n}")
    if src.is_frozen(i):
        raise FrozenVertex(i)
    plus, minus = src.exponents(i)
    return (
        LaurentPolynomial.monomial(src.n, plus),
        LaurentPolynomial.monomial(src.n, minus),
    )


@dataclass(frozen=True, order=True)
class DirectedCycle:
    """A simple directed cycle, rotated so the smallest label comes first."""

    vertices: tuple[int, ...]

    def __post_init__(self):
        v = tuple(self.vertices)
        if len(v) < 3:
            raise QuiverError("a directed cycle needs at least 3 vertices")
        if len(set(v)) != len(v):
            raise QuiverError(f"repeated vertex in cycle {v}")
        k = v.index(min(v))
        object.__setattr__(self, "vertices", v[k:] + v[:k])

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def edges(self) -> list[tuple[int, int]]:
        v = self.vertices
        return [(v[i], v[(i + 1) % len(v)]) for i in range(len(v))]

    def __str__(self):
        return "->".join(map(str, self.vertices))


def _circuits_through(start: int, sub: dict[int, list[int]], found: list) -> None:
    """Johnson's circuit search from ``start`` inside the subgraph ``sub``."""
    blocked: set[int] = set()
    bmap: dict[int, set] = {v: set() for v in sub}
    path = [start]

    def unblock(u):
        stack = [u]
        while stack:
            w = stack.pop()
            if w in blocked:
                blocked.discard(w)
                stack.extend(bmap[w])
                bmap[w].clear()

    def circuit(v) -> bool:
        closed = False
        blocked.add(v)
        for w in sub[v]:
            if w == start:
                found.append(tuple(path))
                closed = True
            elif w not in blocked:
                path.append(w)
                if circuit(w):
                    closed = True
                path.pop()
        if closed:
            unblock(v)
        else:
            for w in sub[v]:
                bmap[w].add(v)
        return closed

    circuit(start)


def simple_cycles(q: IceQuiver) -> list[tuple[int, ...]]:
    """All simple directed cycles among unfrozen vertices (Johnson's algorithm).

    Each cycle is reported once, starting at its smallest vertex.
    """
    nodes = q.unfrozen
    allowed = set(nodes)
    adj = {v: sorted({t for t in q.successors(v) if t in allowed}) for v in nodes}
    found: list[tuple[int, ...]] = []
    for start in nodes:
        # Restrict to vertices >= start; cycles through start are rooted there.
        sub = {v: [w for w in adj[v] if w >= start] for v in nodes if v >= start}
        _circuits_through(start, sub, found)
    return [c for c in found if len(c) >= 3]


def vertex_minimal_cycles(q: Seed) -> list[DirectedCycle]:
    """Simple unfrozen cycles whose vertex set contains no other cycle's vertex set."""
    cycles = simple_cycles(q.quiver)
    sets = [frozenset(c) for c in cycles]
    keep = []
    for c, s in zip(cycles, sets):
        if not any(t < s for t in sets):
            keep.append(DirectedCycle(c))
    return sorted(set(keep))


def is_acyclic(q: Seed) -> bool:
    """True iff the unfrozen part has no directed cycle (iterative DFS colouring)."""
    g = q.quiver
    allowed = set(g.unfrozen)
    state = dict.fromkeys(allowed, 0)
    for root in sorted(allowed):
        if state[root]:
            continue
        stack = [(root, iter(g.successors(root)))]
        state[root] = 1
        while stack:
            v, it = stack[-1]
            for w in it:
                if w not in allowed:
                    continue
                if state[w] == 1:
                    return False
                if state[w] == 0:
                    state[w] = 1
                    stack.append((w, iter(g.successors(w))))
                    break
            else:
                state[v] = 2
                stack.pop()
    return True


def freeze(q: IceQuiver, extra: Iterable[int]) -> IceQuiver:
    extra = frozenset(extra)
    bad = [v for v in extra if not 1 <= v <= q.n]
    if bad:
        raise IndexOutOfRange(f"cannot freeze {sorted(bad)}: outside 1..{q.n}")
    return IceQuiver(q.n, q.arrows, q.frozen | extra)


# -- I/O and random instances ---------------------------------------------


def seed_from_dict(data: dict) -> Seed:
    """Parse quiver JSON (``n``, ``arrows``, ``frozen``) or matrix JSON (``B``, ``D``)."""
    if "B" in data:
        return ExchangeMatrix(tuple(map(tuple, data["B"])), tuple(data["D"]))
    try:
        n = int(data["n"])
        arrows = [tuple(a) for a in data.get("arrows", [])]
    except (KeyError, TypeError) as exc:
        raise QuiverError(f"malformed quiver description: {exc}") from exc
    return IceQuiver.from_arrows(n, arrows, data.get("frozen", ()))


def load_seed(text: str) -> Seed:
    return seed_from_dict(json.loads(text))


def random_quiver(
    rng: random.Random,
    max_n: int = 5,
    max_mult: int = 2,
    arrow_prob: float = 0.55,
    frozen_prob: float = 0.2,
    min_n: int = 1,
) -> IceQuiver:
    """A random valid ice quiver; all randomness comes from ``rng``."""
    n = rng.randint(min_n, max_n)
    arrows = {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if rng.random() < arrow_prob:
                src, dst = (i, j) if rng.random() < 0.5 else (j, i)
                arrows[(src, dst)] = rng.randint(1, max_mult)
    frozen = {v for v in range(1, n + 1) if rng.random() < frozen_prob}
    return IceQuiver(n, arrows, frozenset(frozen))


def random_exchange_matrix(
    rng: random.Random, max_m: int = 4, max_frozen: int = 2, max_entry: int = 2
) -> ExchangeMatrix:
    """A random skew-symmetrizable matrix with skew-symmetrizer entries in 1..3."""
    m = rng.randint(1, max_m)
    n = m + rng.randint(0, max_frozen)
    D = [rng.randint(1, 3) for _ in range(m)]
    B = [[0] * m for _ in range(n)]
    for i in range(m):
        for j in range(i + 1, m):
            if rng.random() < 0.6:
                L = lcm(D[i], D[j]) * rng.randint(1, max_entry) * rng.choice((1, -1))
                B[i][j] = L // D[j]
                B[j][i] = -L // D[i]
    for i in range(m, n):
        for j in range(m):
            B[i][j] = rng.randint(-max_entry, max_entry)
    return ExchangeMatrix(tuple(map(tuple, B)), tuple(D))
