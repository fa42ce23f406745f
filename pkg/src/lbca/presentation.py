"""Generators of the ideal of relations K_Q and their Groebner certification.

The presentation map sends ``x_i -> x_i`` and ``y_i -> x_i'``, the adjacent
cluster variable.  Its kernel is generated by one *defining polynomial* per
vertex and one *cycle polynomial* per vertex-minimal directed cycle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterator, Sequence

from .polynomial import (
    GroebnerCheck,
    LaurentPolynomial,
    Polynomial,
    YHeavyOrder,
    adjacent_variable,
    buchberger_is_groebner,
    normal_form,
    pi_map,
)
from .quiver import DirectedCycle, QuiverError, Seed, vertex_minimal_cycles

DEFAULT_ORACLE_BOUND = 16


class NotACycle(QuiverError):
    pass


class FrozenVertexInCycle(QuiverError):
    pass


class NonIntegralTerm(AssertionError):
    """A cycle-polynomial term kept a negative exponent; this is a bug."""


class CycleTooLong(ValueError):
    pass


class LeadingTermMismatch(AssertionError):
    pass


def adjacent_cluster_variables(seed: Seed) -> list[LaurentPolynomial]:
    return [adjacent_variable(seed, i) for i in range(1, seed.n + 1)]


def defining_polynomial(seed: Seed, i: int) -> Polynomial:
    """``y_i x_i - p_i^+ - p_i^-`` (unfrozen) or ``y_i x_i - 1`` (frozen)."""
    n = seed.n
    lead = Polynomial.y(i, n) * Polynomial.x(i, n)
    if seed.is_frozen(i):
        return lead - 1
    plus, minus = seed.exponents(i)
    zeros = (0,) * n
    return lead - Polynomial(n, {zeros + plus: 1}) - Polynomial(n, {zeros + minus: 1})


def _check_cycle(seed: Seed, cycle: DirectedCycle) -> None:
    for v in cycle:
        if not 1 <= v <= seed.n:
            raise NotACycle(f"vertex {v} outside 1..{seed.n}")
        if seed.is_frozen(v):
            raise FrozenVertexInCycle(f"vertex {v} of {cycle} is frozen")
    arrows = seed.quiver.arrows
    for a, b in cycle.edges():
        if (a, b) not in arrows:
            raise NotACycle(f"no arrow {a}->{b} for cycle {cycle}")


def cyclic_independent_sets(k: int) -> Iterator[tuple[int, ...]]:
    """Subsets ``S`` of ``0..k-1`` with ``S`` and ``S+1`` disjoint (indices mod k).

    Yields exactly Lucas(k) sets for k >= 3, without scanning all 2^k masks.
    """

    def extend(pos: int, chosen: list[int], first_taken: bool):
        if pos >= k:
            yield tuple(chosen)
            return
        yield from extend(pos + 1, chosen, first_taken)
        if pos == k - 1 and first_taken:
            return
        chosen.append(pos)
        yield from extend(pos + 2, chosen, first_taken or pos == 0)
        chosen.pop()

    yield from extend(0, [], False)


def _pair_shift(seed: Seed, vs: Sequence[int], i: int, exps) -> list[int]:
    """x-exponents of ``(p_{v_i}^+ / x_{v_{i+1}}) (p_{v_{i+1}}^- / x_{v_i})``."""
    k = len(vs)
    a, b = vs[i], vs[(i + 1) % k]
    plus_a = exps[a][0]
    minus_b = exps[b][1]
    out = [p + q for p, q in zip(plus_a, minus_b)]
    out[b - 1] -= 1
    out[a - 1] -= 1
    return out


def _boundary_products(seed: Seed, vs: Sequence[int], exps) -> tuple[list[int], list[int]]:
    """x-exponents of ``prod p_{v_i}^+ / x_{v_{i-1}}`` and ``prod p_{v_i}^- / x_{v_{i+1}}``."""
    n = seed.n
    k = len(vs)
    plus_all = [0] * n
    minus_all = [0] * n
    for i, v in enumerate(vs):
        plus, minus = exps[v]
        for t in range(n):
            plus_all[t] += plus[t]
            minus_all[t] += minus[t]
        plus_all[vs[i - 1] - 1] -= 1
        minus_all[vs[(i + 1) % k] - 1] -= 1
    return plus_all, minus_all


def _expansion_terms(seed: Seed, cycle: DirectedCycle, include_empty: bool):
    """Yield ``(sign, x_exponents, y_indices)`` for each independent set ``S``."""
    vs = cycle.vertices
    k = len(vs)
    exps = {v: seed.exponents(v) for v in vs}
    shifts = [_pair_shift(seed, vs, i, exps) for i in range(k)]
    for S in cyclic_independent_sets(k):
        if not S and not include_empty:
            continue
        covered = set(S) | {(i + 1) % k for i in S}
        x = [0] * seed.n
        for i in S:
            for t, e in enumerate(shifts[i]):
                x[t] += e
        ys = [vs[i] for i in range(k) if i not in covered]
        yield (-1) ** len(S), x, ys


def _mixed_monomial(n: int, x: Sequence[int], ys: Sequence[int]) -> tuple:
    y = [0] * n
    for v in ys:
        y[v - 1] += 1
    return tuple(y) + tuple(x)


def cycle_polynomial(seed: Seed, cycle: DirectedCycle) -> Polynomial:
    """The alternating independent-set sum minus the two boundary products."""
    _check_cycle(seed, cycle)
    n = seed.n
    terms: dict = {}

    def add(x, ys, c):
        if any(e < 0 for e in x):
            raise NonIntegralTerm(f"negative exponent {x} in cycle polynomial of {cycle}")
        m = _mixed_monomial(n, x, ys)
        terms[m] = terms.get(m, 0) + c

    for sign, x, ys in _expansion_terms(seed, cycle, include_empty=True):
        add(x, ys, sign)
    plus_all, minus_all = _boundary_products(seed, cycle.vertices, {v: seed.exponents(v) for v in cycle})
    add(plus_all, (), -1)
    add(minus_all, (), -1)
    return Polynomial(n, terms)


def expansion_rhs(seed: Seed, cycle: DirectedCycle) -> Polynomial:
    """Right-hand side of the inclusion-exclusion expansion, with ``y`` for ``x'``.

    Its image under the presentation map equals the product of the adjacent
    variables around the cycle.
    """
    _check_cycle(seed, cycle)
    n = seed.n
    terms: dict = {}
    for sign, x, ys in _expansion_terms(seed, cycle, include_empty=False):
        m = _mixed_monomial(n, x, ys)
        if any(e < 0 for e in x):
            raise NonIntegralTerm(f"negative exponent {x} in expansion of {cycle}")
        terms[m] = terms.get(m, 0) - sign
    for x in _boundary_products(seed, cycle.vertices, {v: seed.exponents(v) for v in cycle}):
        m = _mixed_monomial(n, x, ())
        terms[m] = terms.get(m, 0) + 1
    return Polynomial(n, terms)


@dataclass(frozen=True)
class ChoiceGraph:
    """One term of the expanded product: ``+1`` picks ``p^+``, ``-1`` picks ``p^-``."""

    cycle: DirectedCycle
    signs: tuple[int, ...]

    def __post_init__(self):
        if len(self.signs) != len(self.cycle):
            raise ValueError("one sign per cycle vertex is required")
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be +1 or -1")

    def two_cycles(self) -> list[int]:
        """Positions ``i`` where ``i`` points forward and ``i+1`` points back."""
        k = len(self.signs)
        return [i for i in range(k) if self.signs[i] == 1 and self.signs[(i + 1) % k] == -1]

    def monomial(self, seed: Seed) -> tuple[int, ...]:
        x = [0] * seed.n
        for v, s in zip(self.cycle, self.signs):
            plus, minus = seed.exponents(v)
            for t, e in enumerate(plus if s == 1 else minus):
                x[t] += e
            x[v - 1] -= 1
        return tuple(x)


def choice_graphs(cycle: DirectedCycle) -> Iterator[ChoiceGraph]:
    for signs in product((1, -1), repeat=len(cycle)):
        yield ChoiceGraph(cycle, signs)


def choice_expansion_oracle(
    seed: Seed, cycle: DirectedCycle, max_length: int = DEFAULT_ORACLE_BOUND
) -> LaurentPolynomial:
    """Brute-force sum of all ``2^k`` choice-graph monomials around ``cycle``."""
    _check_cycle(seed, cycle)
    if len(cycle) > max_length:
        raise CycleTooLong(f"cycle of length {len(cycle)} exceeds bound {max_length}")
    terms: dict = {}
    for g in choice_graphs(cycle):
        m = g.monomial(seed)
        terms[m] = terms.get(m, 0) + 1
    return LaurentPolynomial(seed.n, terms)


def cycle_identity_holds(seed: Seed, cycle: DirectedCycle) -> bool:
    """Check the expansion against brute force, and the cycle relation itself."""
    lhs = choice_expansion_oracle(seed, cycle)
    return lhs == pi_map(seed, expansion_rhs(seed, cycle)) and not pi_map(seed, cycle_polynomial(seed, cycle))


@dataclass
class Presentation:
    seed: Seed
    defining: list[Polynomial]
    cycles: dict[DirectedCycle, Polynomial]
    order: YHeavyOrder = YHeavyOrder.GRADED_LEX

    def polynomials(self) -> list[Polynomial]:
        return list(self.defining) + list(self.cycles.values())

    def to_dict(self) -> dict:
        return {
            "n": self.seed.n,
            "order": self.order.value,
            "defining": [p.format(self.order) for p in self.defining],
            "cycles": [
                {"cycle": list(c.vertices), "polynomial": p.format(self.order)}
                for c, p in self.cycles.items()
            ],
        }


def generators(seed: Seed, order: YHeavyOrder = YHeavyOrder.GRADED_LEX) -> Presentation:
    n = seed.n
    defining = [defining_polynomial(seed, i) for i in range(1, n + 1)]
    cycles = {c: cycle_polynomial(seed, c) for c in vertex_minimal_cycles(seed)}
    for c, p in cycles.items():
        lm, lc = p.leading_term(order)
        if lm != _mixed_monomial(n, (0,) * n, c.vertices) or lc != 1:
            raise LeadingTermMismatch(f"cycle polynomial of {c} leads with {lc}*{lm}")
    return Presentation(seed, defining, cycles, order)


def initial_ideal_generators(seed: Seed, order: YHeavyOrder = YHeavyOrder.GRADED_LEX) -> list[tuple]:
    """Leading monomials ``x_i y_i`` and ``prod_{v in c} y_v``, checked against the generators."""
    n = seed.n
    pres = generators(seed, order)
    expected = []
    for i in range(1, n + 1):
        m = [0] * (2 * n)
        m[i - 1] = m[n + i - 1] = 1
        expected.append(tuple(m))
    expected += [_mixed_monomial(n, (0,) * n, c.vertices) for c in pres.cycles]
    for g, m in zip(pres.polynomials(), expected):
        lm, lc = g.leading_term(order)
        if lm != m or lc != 1:
            raise LeadingTermMismatch(f"{g.format(order)} does not lead with the expected monomial")
    return list(dict.fromkeys(expected))


@dataclass
class Certification:
    certified: bool
    reason: str
    groebner: GroebnerCheck | None = None
    nonzero_images: list[int] = field(default_factory=list)

    def __bool__(self):
        return self.certified

    @property
    def witness(self):
        if self.nonzero_images:
            return self.nonzero_images
        if self.groebner is not None:
            return self.groebner.witness
        return None


def certify_groebner(
    seed: Seed,
    order: YHeavyOrder = YHeavyOrder.GRADED_LEX,
    polys: Sequence[Polynomial] | None = None,
) -> Certification:
    """Certify that the generators lie in ker(pi) and form a Groebner basis.

    ``polys`` replaces the computed generator list, which lets callers test
    perturbed inputs.
    """
    G = list(polys) if polys is not None else generators(seed, order).polynomials()
    bad = [idx for idx, g in enumerate(G) if pi_map(seed, g)]
    check = buchberger_is_groebner(G, order)
    if bad:
        return Certification(False, f"generators {bad} have nonzero image", check, bad)
    if not check:
        i, j, _ = check.witness
        return Certification(False, f"S-pair ({i}, {j}) has nonzero remainder", check)
    return Certification(True, "certified", check)


def verify_relation(seed: Seed, f: Polynomial, order: YHeavyOrder = YHeavyOrder.GRADED_LEX) -> bool:
    """Ideal membership of ``f`` in K_Q by reduction modulo the generators."""
    return normal_form(f, generators(seed, order).polynomials(), order).is_zero()
