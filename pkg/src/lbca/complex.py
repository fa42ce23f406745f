"""The simplicial complexes Delta(S, C, Y) and their combinatorics.

Vertices are ``x_i`` for ``i`` in ``S`` and ``y_i`` for ``i`` in ``Y`` with
``{i}`` not in ``C``.  A set of vertices is a face iff it never contains both
``x_i`` and ``y_i`` and its y-indices contain no member of ``C``.  Complexes
are kept in this parametric form; facets are enumerated on demand.
"""

from __future__ import annotations

import os
import random
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from math import comb
from typing import Iterable, NamedTuple, Union

from .quiver import Seed, vertex_minimal_cycles

DEFAULT_MAX_GROUND = 20


def max_ground_size() -> int:
    """Facet-enumeration bound; ``LBCA_MAX_N`` overrides the default."""
    return int(os.environ.get("LBCA_MAX_N", DEFAULT_MAX_GROUND))


class ComplexError(ValueError):
    pass


class InvalidVertex(ComplexError):
    pass


class NotAYVertex(ComplexError):
    pass


class GroundSetTooLarge(ComplexError):
    pass


class SphereHasNoBoundary(ComplexError):
    pass


class ShedFailure(AssertionError):
    pass


class EvidenceMismatch(AssertionError):
    pass


class Vertex(NamedTuple):
    kind: str  # "x" or "y"
    index: int

    def __str__(self):
        return f"{self.kind}{self.index}"


def X(i: int) -> Vertex:
    return Vertex("x", i)


def Y(i: int) -> Vertex:
    return Vertex("y", i)


Face = frozenset  # frozenset[Vertex]


def face_key(face: Iterable[Vertex]) -> tuple:
    return tuple(sorted((v.index, v.kind) for v in face))


def format_face(face: Iterable[Vertex]) -> str:
    return "{" + ",".join(str(Vertex(k, i)) for i, k in face_key(face)) + "}"


def _reduce_antichain(C: Iterable[Iterable[int]]) -> tuple[frozenset, ...]:
    sets = sorted({frozenset(c) for c in C}, key=lambda s: (len(s), sorted(s)))
    keep: list[frozenset] = []
    for s in sets:
        if not any(t <= s for t in keep):
            keep.append(s)
    return tuple(sorted(keep, key=lambda s: (sorted(s), len(s))))


@dataclass(frozen=True)
class ComplexSpec:
    """The triple ``(S, C, Y)``; ``C`` is stored antichain-reduced."""

    S: frozenset[int]
    C: tuple[frozenset[int], ...]
    Y: frozenset[int]

    def __post_init__(self):
        S = frozenset(self.S)
        Yset = frozenset(self.Y)
        raw = [frozenset(c) for c in self.C]
        for c in raw:
            if not c:
                raise ComplexError("members of C must be nonempty")
            if not c <= S:
                raise ComplexError(f"member {sorted(c)} of C is not inside S")
        if not Yset <= S:
            raise ComplexError("Y must be a subset of S")
        object.__setattr__(self, "S", S)
        object.__setattr__(self, "Y", Yset)
        object.__setattr__(self, "C", _reduce_antichain(raw))

    @classmethod
    def ground(cls, n: int, C: Iterable[Iterable[int]] = (), Y: Iterable[int] | None = None):
        S = frozenset(range(1, n + 1))
        return cls(S, tuple(frozenset(c) for c in C), S if Y is None else frozenset(Y))

    @property
    def size(self) -> int:
        return len(self.S)

    @property
    def y_vertices(self) -> list[int]:
        singles = {next(iter(c)) for c in self.C if len(c) == 1}
        return sorted(i for i in self.Y if i not in singles)

    @property
    def is_sphere_case(self) -> bool:
        return not self.C and self.Y == self.S

    def vertices(self) -> list[Vertex]:
        return [X(i) for i in sorted(self.S)] + [Y(i) for i in self.y_vertices]

    def to_dict(self) -> dict:
        return {
            "S": sorted(self.S),
            "C": [sorted(c) for c in self.C],
            "Y": sorted(self.Y),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ComplexSpec":
        S = data["S"]
        S = range(1, S + 1) if isinstance(S, int) else S
        S = frozenset(S)
        Yv = data.get("Y")
        return cls(S, tuple(frozenset(c) for c in data.get("C", [])), S if Yv is None else frozenset(Yv))


def complex_of_quiver(q: Seed) -> ComplexSpec:
    return ComplexSpec.ground(q.n, [c.vertices for c in vertex_minimal_cycles(q)])


def _check_bound(spec: ComplexSpec, bound: int | None) -> None:
    bound = max_ground_size() if bound is None else bound
    if spec.size > bound:
        raise GroundSetTooLarge(f"|S| = {spec.size} exceeds the enumeration bound {bound}")


def _y_set_allowed(spec: ComplexSpec, ys: frozenset) -> bool:
    return not any(c <= ys for c in spec.C)


def is_face(spec: ComplexSpec, F: Iterable[Vertex]) -> bool:
    F = frozenset(F)
    yv = set(spec.y_vertices)
    xs, ys = set(), set()
    for v in F:
        if v.kind == "x" and v.index in spec.S:
            xs.add(v.index)
        elif v.kind == "y" and v.index in yv:
            ys.add(v.index)
        else:
            raise InvalidVertex(f"{v} is not a vertex of this complex")
    return not (xs & ys) and _y_set_allowed(spec, frozenset(ys))


def _allowed_y_sets(spec: ComplexSpec):
    yv = spec.y_vertices
    for r in range(len(yv) + 1):
        for T in combinations(yv, r):
            T = frozenset(T)
            if _y_set_allowed(spec, T):
                yield T


@lru_cache(maxsize=4096)
def _facets_cached(spec: ComplexSpec) -> tuple[Face, ...]:
    out = []
    for T in _allowed_y_sets(spec):
        out.append(frozenset([Y(i) for i in T] + [X(i) for i in spec.S - T]))
    return tuple(sorted(out, key=face_key))


def facets(spec: ComplexSpec, bound: int | None = None) -> tuple[Face, ...]:
    """All facets; each picks ``x_i`` or ``y_i`` for every ``i`` in ``S``."""
    _check_bound(spec, bound)
    return _facets_cached(spec)


def f_vector(spec: ComplexSpec, bound: int | None = None) -> tuple[int, ...]:
    """``(f_0, ..., f_{n-1})`` counted without listing every face."""
    _check_bound(spec, bound)
    n = spec.size
    f = [0] * (n + 1)
    for T in _allowed_y_sets(spec):
        free = n - len(T)
        for a in range(free + 1):
            f[len(T) + a] += comb(free, a)
    return tuple(f[1:])


def euler_characteristic(fvec: Iterable[int]) -> int:
    return sum((-1) ** k * f for k, f in enumerate(fvec))


def all_faces(spec: ComplexSpec, bound: int = 10) -> set[Face]:
    """Every face, found by testing all ``3^n`` partial selections."""
    _check_bound(spec, bound)
    yv = set(spec.y_vertices)
    idx = sorted(spec.S)
    out = set()
    for choice in product((None, "x", "y"), repeat=len(idx)):
        if any(k == "y" and i not in yv for i, k in zip(idx, choice)):
            continue
        F = frozenset(Vertex(k, i) for i, k in zip(idx, choice) if k)
        if is_face(spec, F):
            out.add(F)
    return out


def _require_y_vertex(spec: ComplexSpec, i: int) -> None:
    if i not in spec.y_vertices:
        raise NotAYVertex(f"y{i} is not a vertex of this complex")


def link_y(spec: ComplexSpec, i: int) -> ComplexSpec:
    _require_y_vertex(spec, i)
    S = spec.S - {i}
    return ComplexSpec(S, tuple(c - {i} for c in spec.C), spec.Y & S)


def delete_y(spec: ComplexSpec, i: int) -> ComplexSpec:
    _require_y_vertex(spec, i)
    return ComplexSpec(spec.S, spec.C, spec.Y - {i})


def direct_link(faces: set[Face], v: Vertex) -> set[Face]:
    """``{F : v not in F, F + v a face}`` straight from a face set."""
    return {F for F in faces if v not in F and (F | {v}) in faces}


def direct_deletion(faces: set[Face], v: Vertex) -> set[Face]:
    """Downward closure of the faces that cannot be extended by ``v``."""
    closed = {F for F in faces if (F | {v}) not in faces}
    # Sweep from large faces to small: a face is in the closure iff it is a
    # seed or one more vertex puts it in the closure.
    verts = {u for F in faces for u in F}
    for F in sorted(faces, key=len, reverse=True):
        if F in closed:
            continue
        if any((F | {u}) in closed for u in verts - F):
            closed.add(F)
    return closed


def is_shedding(spec: ComplexSpec, i: int, bound: int | None = None) -> bool:
    """No face of the link of ``y_i`` is a facet of its deletion."""
    _require_y_vertex(spec, i)
    v = Y(i)
    for F in facets(delete_y(spec, i), bound):
        if is_face(spec, F | {v}):
            return False
    return True


@dataclass(frozen=True)
class Leaf:
    spec: ComplexSpec
    simplex: Face


@dataclass(frozen=True)
class Node:
    spec: ComplexSpec
    vertex: Vertex
    link: "SheddingTree"
    deletion: "SheddingTree"


SheddingTree = Union[Leaf, Node]


@lru_cache(maxsize=4096)
def _decompose(spec: ComplexSpec) -> SheddingTree:
    yv = spec.y_vertices
    if not yv:
        (simplex,) = facets(spec)
        return Leaf(spec, simplex)
    i = yv[0]
    if not is_shedding(spec, i):
        raise ShedFailure(f"y{i} is not a shedding vertex of {spec.to_dict()}")
    return Node(spec, Y(i), _decompose(link_y(spec, i)), _decompose(delete_y(spec, i)))


def vertex_decomposition(spec: ComplexSpec, bound: int | None = None) -> SheddingTree:
    """Shed the smallest y-vertex, recursing on link and deletion down to simplices."""
    _check_bound(spec, bound)
    return _decompose(spec)


def verify_shedding_tree(tree: SheddingTree) -> bool:
    """Re-check every node independently of how the tree was built."""
    if isinstance(tree, Leaf):
        fs = facets(tree.spec)
        return len(fs) == 1 and fs[0] == tree.simplex
    i = tree.vertex.index
    return (
        tree.vertex.kind == "y"
        and is_shedding(tree.spec, i)
        and tree.link.spec == link_y(tree.spec, i)
        and tree.deletion.spec == delete_y(tree.spec, i)
        and verify_shedding_tree(tree.link)
        and verify_shedding_tree(tree.deletion)
    )


def shedding_order(tree: SheddingTree) -> list[Vertex]:
    """Vertices shed along the chain of successive deletions."""
    out = []
    while isinstance(tree, Node):
        out.append(tree.vertex)
        tree = tree.deletion
    return out


def tree_depth(tree: SheddingTree) -> int:
    if isinstance(tree, Leaf):
        return 0
    return 1 + max(tree_depth(tree.link), tree_depth(tree.deletion))


def tree_size(tree: SheddingTree) -> int:
    if isinstance(tree, Leaf):
        return 1
    return 1 + tree_size(tree.link) + tree_size(tree.deletion)


def ridge_degrees(spec: ComplexSpec, bound: int | None = None) -> Counter:
    """How many facets contain each codimension-one face."""
    counts: Counter = Counter()
    for F in facets(spec, bound):
        for v in F:
            counts[F - {v}] += 1
    return counts


def boundary(spec: ComplexSpec, bound: int | None = None) -> list[Face]:
    """Ridges lying in exactly one facet: the facets of the boundary complex."""
    if spec.is_sphere_case:
        raise SphereHasNoBoundary("Delta(S, {}, S) is a sphere")
    return sorted((R for R, k in ridge_degrees(spec, bound).items() if k == 1), key=face_key)


def cross_polytope_f_vector(n: int) -> tuple[int, ...]:
    return tuple(2**k * comb(n, k) for k in range(1, n + 1))


@dataclass
class Classification:
    verdict: str  # "Sphere" or "Ball"
    dimension: int
    f_vector: tuple[int, ...]
    euler_characteristic: int
    facet_count: int
    pure: bool
    max_ridge_degree: int
    boundary_facets: int

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "dimension": self.dimension,
            "f_vector": list(self.f_vector),
            "euler_characteristic": self.euler_characteristic,
            "facet_count": self.facet_count,
            "pure": self.pure,
            "max_ridge_degree": self.max_ridge_degree,
            "boundary_facets": self.boundary_facets,
        }


def classify(spec: ComplexSpec, bound: int | None = None) -> Classification:
    """Ball/sphere verdict from ``(C, Y)``, cross-checked by combinatorial evidence."""
    n = spec.size
    fs = facets(spec, bound)
    fv = f_vector(spec, bound)
    chi = euler_characteristic(fv)
    degrees = ridge_degrees(spec, bound)
    pure = all(len(F) == n for F in fs)
    max_deg = max(degrees.values(), default=0)
    boundary_count = sum(1 for k in degrees.values() if k == 1)
    sphere = spec.is_sphere_case
    result = Classification(
        "Sphere" if sphere else "Ball", n - 1, fv, chi, len(fs), pure, max_deg, boundary_count
    )

    problems = []
    if not pure:
        problems.append("complex is not pure")
    if max_deg > 2:
        problems.append(f"a ridge lies in {max_deg} facets")
    if sphere:
        if chi != 1 + (-1) ** (n - 1):
            problems.append(f"Euler characteristic {chi} is not that of an {n - 1}-sphere")
        if boundary_count:
            problems.append("sphere has boundary ridges")
        if n and fv != cross_polytope_f_vector(n):
            problems.append("f-vector differs from the cross-polytope boundary")
    else:
        if chi != 1:
            problems.append(f"Euler characteristic {chi} is not 1")
        if not boundary_count:
            problems.append("ball has empty boundary")
    if problems:
        raise EvidenceMismatch("; ".join(problems))
    return result


def stanley_reisner_faces(n: int, generators: Iterable[tuple]) -> set[Face]:
    """Faces of the complex of a squarefree monomial ideal in ``y_1..y_n, x_1..x_n``.

    Monomials use the ``(y_1..y_n, x_1..x_n)`` exponent layout.
    """
    gens = [frozenset(k for k, e in enumerate(m) if e) for m in generators]
    names = [Y(i) for i in range(1, n + 1)] + [X(i) for i in range(1, n + 1)]
    out = set()
    for r in range(2 * n + 1):
        for support in combinations(range(2 * n), r):
            s = frozenset(support)
            if not any(g <= s for g in gens):
                out.add(frozenset(names[k] for k in s))
    return out


def random_spec(rng: random.Random, max_size: int = 8, max_cycles: int = 3) -> ComplexSpec:
    """A random ``(S, C, Y)`` with ``S = {1..n}``, ``n <= max_size``."""
    n = rng.randint(1, max_size)
    S = list(range(1, n + 1))
    C = []
    for _ in range(rng.randint(0, max_cycles)):
        C.append(frozenset(rng.sample(S, rng.randint(1, min(n, 4)))))
    Yset = frozenset(i for i in S if rng.random() < 0.8)
    C = [c for c in C if c <= Yset] if rng.random() < 0.5 else C
    return ComplexSpec(frozenset(S), tuple(C), Yset)
