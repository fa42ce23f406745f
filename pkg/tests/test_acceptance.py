"""Acceptance gate: one test per criterion, summarised as PASS/FAIL lines at the end of the run."""

from __future__ import annotations

import random
import time
from functools import lru_cache
from math import comb

from lbca import complex as cx
from lbca.catalog import (
    bowtie,
    double_arrow,
    named_seeds,
    oriented_cycle,
    random_corpus,
    skew_example,
    triangle,
)
from lbca.polynomial import Polynomial, pi_map
from lbca.presentation import (
    adjacent_cluster_variables,
    certify_groebner,
    choice_expansion_oracle,
    cycle_polynomial,
    expansion_rhs,
    generators,
)
from lbca.quiver import DirectedCycle, is_acyclic, random_quiver, simple_cycles, vertex_minimal_cycles
from lbca.singularity import jacobian_rank, on_variety, path_quiver, path_singular_locus, sample_generic_point

CORPUS_SEED = 20240601
CORPUS_SIZE = 150


@lru_cache(maxsize=None)
def corpus() -> tuple:
    return tuple(named_seeds().values()) + tuple(random_corpus(CORPUS_SIZE, CORPUS_SEED))


@lru_cache(maxsize=None)
def corpus_specs() -> tuple:
    return tuple(cx.complex_of_quiver(q) for q in corpus())


class Clock:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


def test_ac01_adjacent_variables_of_double_arrow_quiver():
    with Clock() as clock:
        got = [v.format_fraction() for v in adjacent_cluster_variables(double_arrow())]
    assert got == ["(x2^2 + 1)/x1", "(x1^2 + x3*x4)/x2", "(x2 + 1)/x3", "1/x4"]
    assert clock.elapsed < 1


def test_ac02_triangle_generators():
    with Clock() as clock:
        got = generators(triangle()).polynomials()
    expected = ["y1*x1 - x2 - x3", "y2*x2 - x3 - x1", "y3*x3 - x1 - x2", "y1*y2*y3 - y1 - y2 - y3 - 2"]
    assert got == [Polynomial.parse(t, 3) for t in expected]
    assert clock.elapsed < 1


def test_ac03_cycle_polynomial_table(record_property):
    with Clock() as clock:
        rows = {
            "triangle": (oriented_cycle(3), "y1*y2*y3 - y1 - y2 - y3 - 2"),
            "square": (oriented_cycle(4), "y1*y2*y3*y4 - y1*y2 - y1*y4 - y2*y3 - y3*y4"),
        }
        for q, text in rows.values():
            c = DirectedCycle(tuple(range(1, q.n + 1)))
            assert cycle_polynomial(q, c) == Polynomial.parse(text, q.n)
        q = bowtie()
        assert cycle_polynomial(q, DirectedCycle((1, 2, 5))) == Polynomial.parse(
            "y1*y2*y5 - y1*x3 - y2 - y5*x4 - x3 - x4", 5
        )
        assert cycle_polynomial(q, DirectedCycle((2, 3, 4))) == Polynomial.parse(
            "y2*y3*y4 - y2 - y3*x1 - y4*x5 - x1 - x5", 5
        )

        pent = oriented_cycle(5)
        c5 = DirectedCycle((1, 2, 3, 4, 5))
        p5 = cycle_polynomial(pent, c5)
        assert choice_expansion_oracle(pent, c5) == pi_map(pent, expansion_rhs(pent, c5))
        assert pi_map(pent, p5).is_zero()
        printed = Polynomial.parse(
            "y1*y2*y3*y4*y5 - y1*y2*y3 - y1*y2*y5 - y2*y3*y4 - y3*y4*y5 + y1 + y2 + y3 + y4 + y5 - 2", 5
        )
    diff = p5 - printed
    record_property(
        "note",
        f"5-cycle row: computed minus printed = {diff.format()}"
        + (" (printed row matches)" if not diff else " (printed row omits this cubic term)"),
    )
    assert diff == Polynomial.parse("-y1*y4*y5", 5)
    assert clock.elapsed < 1


def test_ac04_groebner_certification():
    with Clock() as clock:
        for name, seed in named_seeds().items():
            assert certify_groebner(seed), name
        rng = random.Random(CORPUS_SEED)
        count = 0
        for _ in range(120):
            q = random_quiver(rng, max_n=5, max_mult=2)
            assert q.n <= 5 and all(m <= 2 for m in q.arrows.values())
            cert = certify_groebner(q)
            assert cert, (q, cert.reason)
            count += 1
        for q in random_corpus(CORPUS_SIZE, CORPUS_SEED):
            assert certify_groebner(q), q
    assert count >= 100
    assert clock.elapsed < 300


def test_ac05_initial_ideal():
    for q in corpus():
        n = q.n
        leading = {g.leading_term()[0] for g in generators(q).polynomials()}
        expected = set()
        for i in range(1, n + 1):
            expected.add((Polynomial.x(i, n) * Polynomial.y(i, n)).leading_term()[0])
        for c in vertex_minimal_cycles(q):
            m = Polynomial.constant(n)
            for v in c:
                m = m * Polynomial.y(v, n)
            expected.add(m.leading_term()[0])
        assert leading == expected, q
    got = {g.leading_term()[0] for g in generators(triangle()).polynomials()}
    assert got == {Polynomial.parse(t, 3).leading_term()[0] for t in ("x1*y1", "x2*y2", "x3*y3", "y1*y2*y3")}


def test_ac06_choice_graph_oracle():
    rng = random.Random(CORPUS_SEED + 6)
    extra = [oriented_cycle(k) for k in range(3, 9)]
    extra += [random_quiver(rng, max_n=8, max_mult=2, min_n=6) for _ in range(25)]
    checked = 0
    for q in list(corpus()) + extra:
        for c in simple_cycles(q.quiver):
            if len(c) > 8:
                continue
            cyc = DirectedCycle(c)
            assert choice_expansion_oracle(q, cyc) == pi_map(q, expansion_rhs(q, cyc)), (q, c)
            checked += 1
    assert checked > 0


def test_ac07_link_and_deletion_closed_forms():
    rng = random.Random(CORPUS_SEED + 7)
    for _ in range(200):
        spec = cx.random_spec(rng, max_size=8)
        faces = cx.all_faces(spec)
        for i in spec.y_vertices:
            v = cx.Y(i)
            assert cx.all_faces(cx.link_y(spec, i)) == cx.direct_link(faces, v)
            assert cx.all_faces(cx.delete_y(spec, i)) == cx.direct_deletion(faces, v)


def test_ac08_ball_or_sphere():
    for q, spec in zip(corpus(), corpus_specs()):
        c = cx.classify(spec)
        n = q.n
        if is_acyclic(q):
            assert c.verdict == "Sphere"
            assert c.f_vector == tuple(2**k * comb(n, k) for k in range(1, n + 1))
            assert c.euler_characteristic == 1 + (-1) ** (n - 1)
        else:
            assert c.verdict == "Ball"
            assert c.euler_characteristic == 1
            assert cx.boundary(spec)
            assert max(cx.ridge_degrees(spec).values()) <= 2
    assert len(cx.facets(cx.complex_of_quiver(triangle()))) == 7


def test_ac09_vertex_decomposition():
    for spec in corpus_specs():
        tree = cx.vertex_decomposition(spec)
        assert cx.verify_shedding_tree(tree)


def test_ac10_link_inside_boundary_of_deletion():
    for spec in corpus_specs():
        if spec.is_sphere_case:
            continue
        for i in spec.y_vertices:
            link = cx.link_y(spec, i)
            bd = set(cx.boundary(cx.delete_y(spec, i)))
            link_facets = set(cx.facets(link))
            assert link_facets < bd
            assert all(any(F <= R for R in bd) for F in cx.all_faces(link))


def test_ac11_path_quiver_singularities():
    with Clock() as clock:
        nonempty = []
        for n in range(1, 12):
            pts = path_singular_locus(n)
            q = path_quiver(n)
            for p in pts:
                assert on_variety(q, p)
                assert jacobian_rank(q, p).rank < n
            if pts:
                nonempty.append(n)
        assert nonempty == [3, 7, 11]
        rng = random.Random(CORPUS_SEED + 11)
        for n in range(1, 7):
            q = path_quiver(n)
            for _ in range(100):
                p = sample_generic_point(q, rng)
                assert on_variety(q, p)
                assert jacobian_rank(q, p).rank == n
    assert clock.elapsed < 60


def test_ac12_skew_symmetrizable_example():
    e = skew_example()
    got = [v.format_fraction() for v in adjacent_cluster_variables(e)]
    assert got == ["(x2^2 + x3)/x1", "(x1^3*x3^2 + 1)/x2", "1/x3"]
    assert certify_groebner(e)
