from __future__ import annotations

import itertools
import json
import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lbca.catalog import chorded_square, double_arrow, random_corpus, skew_example, triangle
from lbca.quiver import (
    DirectedCycle,
    ExchangeMatrix,
    FrozenOutOfRange,
    FrozenVertex,
    IceQuiver,
    IndexOutOfRange,
    LoopArrow,
    NonPositiveMultiplicity,
    NotSkewSymmetrizable,
    QuiverError,
    TwoCycle,
    exchange_monomials,
    freeze,
    is_acyclic,
    load_seed,
    random_exchange_matrix,
    random_quiver,
    seed_from_dict,
    simple_cycles,
    vertex_minimal_cycles,
)


def brute_cycles(q: IceQuiver) -> set[tuple[int, ...]]:
    """Every vertex sequence that closes up, canonicalised by rotation."""
    verts = q.unfrozen
    out = set()
    for k in range(3, len(verts) + 1):
        for combo in itertools.permutations(verts, k):
            if combo[0] != min(combo):
                continue
            if all((combo[i], combo[(i + 1) % k]) in q.arrows for i in range(k)):
                out.add(combo)
    return out


quivers = st.randoms(use_true_random=False).map(lambda r: random_quiver(r, max_n=6))


@settings(max_examples=150)
@given(quivers)
def test_johnson_matches_permutation_oracle(q):
    assert set(simple_cycles(q)) == brute_cycles(q)
    assert len(simple_cycles(q)) == len(set(simple_cycles(q)))


@settings(max_examples=80)
@given(quivers)
def test_acyclicity_agrees_with_networkx(q):
    g = nx.DiGraph()
    g.add_nodes_from(q.unfrozen)
    g.add_edges_from((s, t) for s, t in q.arrows if s in g and t in g)
    assert is_acyclic(q) == nx.is_directed_acyclic_graph(g)


@settings(max_examples=100)
@given(quivers)
def test_minimal_cycles_are_minimal_and_chordless(q):
    cycles = vertex_minimal_cycles(q)
    sets = [frozenset(c) for c in simple_cycles(q)]
    for c in cycles:
        s = frozenset(c)
        assert not any(t < s for t in sets)
        # A vertex-minimal cycle has no chord, so it is the unique cycle on its vertex set.
        assert sum(1 for t in sets if t == s) == 1
        for a, b in itertools.permutations(s, 2):
            if (a, b) in q.arrows:
                assert (a, b) in c.edges()
    assert (not cycles) == is_acyclic(q)


def test_validation_errors():
    with pytest.raises(LoopArrow):
        IceQuiver(2, {(1, 1): 1})
    with pytest.raises(TwoCycle):
        IceQuiver(2, {(1, 2): 1, (2, 1): 1})
    with pytest.raises(NonPositiveMultiplicity):
        IceQuiver(2, {(1, 2): 0})
    with pytest.raises(IndexOutOfRange):
        IceQuiver(2, {(1, 3): 1})
    with pytest.raises(FrozenOutOfRange):
        IceQuiver(2, {}, frozenset({4}))
    with pytest.raises(NotSkewSymmetrizable):
        ExchangeMatrix(((0, 1), (1, 0)), (1, 1))
    with pytest.raises(NotSkewSymmetrizable):
        ExchangeMatrix(((0, 1), (-1, 0)), (1, 0))


def test_exchange_monomials_of_double_arrow():
    q = double_arrow()
    plus, minus = exchange_monomials(q, 2)
    assert plus.format() == "x3*x4"
    assert minus.format() == "x1^2"
    with pytest.raises(FrozenVertex):
        exchange_monomials(q, 4)
    with pytest.raises(IndexOutOfRange):
        exchange_monomials(q, 9)


def test_sign_quiver_of_skew_example():
    e = skew_example()
    assert e.quiver.arrows == {(1, 3): 1, (2, 1): 1, (2, 3): 1}
    assert e.frozen == {3}
    assert is_acyclic(e)


def test_two_by_two_matrix_orientation():
    """A positive ``B_12`` is an arrow ``2 -> 1``: ``x_2`` sits in ``p_1^-``."""
    e = ExchangeMatrix(((0, 1), (-1, 0)), (1, 1))
    assert e.quiver.arrows == {(2, 1): 1}
    assert e.exponents(1) == ((0, 0), (0, 1))


def _matrix_of(q: IceQuiver) -> ExchangeMatrix:
    """Skew-symmetric matrix of a quiver whose frozen vertices are the top labels."""
    m = q.n - len(q.frozen)
    B = [[0] * m for _ in range(q.n)]
    for (s, t), mult in q.arrows.items():
        if t <= m:
            B[s - 1][t - 1] -= mult
        if s <= m:
            B[t - 1][s - 1] += mult
    return ExchangeMatrix(tuple(map(tuple, B)), (1,) * m)


@settings(max_examples=100)
@given(st.randoms(use_true_random=False))
def test_matrix_and_quiver_agree(rnd):
    q = random_quiver(rnd, max_n=6, frozen_prob=0)
    k = rnd.randint(0, q.n)
    q = freeze(q, range(q.n - k + 1, q.n + 1))
    e = _matrix_of(q)
    for i in range(1, e.m + 1):
        assert e.exponents(i) == q.exponents(i)
    kept = {a: 1 for a in q.arrows if not (q.is_frozen(a[0]) and q.is_frozen(a[1]))}
    assert e.quiver.arrows == kept


@settings(max_examples=100)
@given(st.randoms(use_true_random=False))
def test_random_matrices_are_skew_symmetrizable(rnd):
    e = random_exchange_matrix(rnd)
    for i in range(e.m):
        for j in range(e.m):
            assert e.B[i][j] * e.D[j] == -e.B[j][i] * e.D[i]


def test_directed_cycle_canonical_rotation():
    assert DirectedCycle((3, 1, 2)).vertices == (1, 2, 3)
    assert DirectedCycle((3, 1, 2)) == DirectedCycle((2, 3, 1))
    assert str(DirectedCycle((2, 3, 1))) == "1->2->3"
    with pytest.raises(QuiverError):
        DirectedCycle((1, 2))
    with pytest.raises(QuiverError):
        DirectedCycle((1, 2, 1))


def test_chorded_square_keeps_only_the_triangle():
    q = chorded_square()
    assert sorted(simple_cycles(q)) == [(1, 2, 3, 4), (1, 2, 4)]
    assert vertex_minimal_cycles(q) == [DirectedCycle((1, 2, 4))]


def test_frozen_vertices_break_cycles():
    assert vertex_minimal_cycles(freeze(triangle(), [2])) == []


def test_json_round_trip_and_duplicates_add():
    q = seed_from_dict({"n": 2, "arrows": [[1, 2], [1, 2, 2]], "frozen": [2]})
    assert q.arrows == {(1, 2): 3}
    assert seed_from_dict(q.to_dict()) == q
    e = skew_example()
    assert load_seed(json.dumps(e.to_dict())) == e
    with pytest.raises(QuiverError):
        seed_from_dict({"arrows": []})


def test_corpus_is_reproducible():
    assert random_corpus(20, 11) == random_corpus(20, 11)
    rng_a, rng_b = random.Random(4), random.Random(4)
    assert random_quiver(rng_a) == random_quiver(rng_b)
