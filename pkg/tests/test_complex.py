from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lbca import complex as cx
from lbca.catalog import named_seeds, random_corpus, triangle
from lbca.presentation import initial_ideal_generators
from lbca.quiver import is_acyclic

specs = st.randoms(use_true_random=False).map(lambda r: cx.random_spec(r, max_size=6))


def maximal(faces):
    return {F for F in faces if not any(F < G for G in faces)}


@settings(max_examples=120, deadline=None)
@given(specs)
def test_facets_match_brute_force(spec):
    faces = cx.all_faces(spec)
    assert set(cx.facets(spec)) == maximal(faces)
    fv = [0] * spec.size
    for F in faces:
        if F:
            fv[len(F) - 1] += 1
    assert cx.f_vector(spec) == tuple(fv)


@settings(max_examples=120, deadline=None)
@given(specs)
def test_complex_is_pure(spec):
    assert all(len(F) == spec.size for F in cx.facets(spec))


@settings(max_examples=120, deadline=None)
@given(specs)
def test_closed_forms_for_link_and_deletion(spec):
    faces = cx.all_faces(spec)
    for i in spec.y_vertices:
        v = cx.Y(i)
        assert cx.all_faces(cx.link_y(spec, i)) == cx.direct_link(faces, v)
        assert cx.all_faces(cx.delete_y(spec, i)) == cx.direct_deletion(faces, v)


def shedding_by_faces(spec, i):
    faces = cx.all_faces(spec)
    v = cx.Y(i)
    link = cx.direct_link(faces, v)
    deletion_facets = maximal(cx.direct_deletion(faces, v))
    return not (link & deletion_facets)


@settings(max_examples=120, deadline=None)
@given(specs)
def test_every_y_vertex_sheds(spec):
    for i in spec.y_vertices:
        assert cx.is_shedding(spec, i)
        assert shedding_by_faces(spec, i)


@settings(max_examples=80, deadline=None)
@given(specs)
def test_decomposition_reverifies(spec):
    tree = cx.vertex_decomposition(spec)
    assert cx.verify_shedding_tree(tree)
    assert cx.tree_size(tree) == 2 * count_leaves(tree) - 1


def count_leaves(tree):
    if isinstance(tree, cx.Leaf):
        return 1
    return count_leaves(tree.link) + count_leaves(tree.deletion)


@settings(max_examples=120, deadline=None)
@given(specs)
def test_classification(spec):
    c = cx.classify(spec)
    n = spec.size
    if spec.is_sphere_case:
        assert c.verdict == "Sphere"
        assert c.f_vector == cx.cross_polytope_f_vector(n)
        assert c.euler_characteristic == 1 + (-1) ** (n - 1)
        with pytest.raises(cx.SphereHasNoBoundary):
            cx.boundary(spec)
    else:
        assert c.verdict == "Ball"
        assert c.euler_characteristic == 1
        assert cx.boundary(spec)
    assert c.max_ridge_degree <= 2


@settings(max_examples=120, deadline=None)
@given(specs)
def test_link_sits_in_boundary_of_deletion(spec):
    if spec.is_sphere_case:
        return
    for i in spec.y_vertices:
        link_faces = cx.all_faces(cx.link_y(spec, i))
        deletion = cx.delete_y(spec, i)
        assert not deletion.is_sphere_case
        bd = set(cx.boundary(deletion))
        bd_faces = {G for R in bd for G in subsets(R)}
        assert link_faces <= bd_faces
        # Each facet of the link is a boundary ridge, and some ridge is missed.
        assert set(cx.facets(cx.link_y(spec, i))) < bd


def subsets(F):
    items = sorted(F)
    out = set()
    for mask in range(1 << len(items)):
        out.add(frozenset(v for k, v in enumerate(items) if mask >> k & 1))
    return out


def test_triangle_complex():
    spec = cx.complex_of_quiver(triangle())
    c = cx.classify(spec)
    assert (c.verdict, c.dimension, c.facet_count, c.euler_characteristic) == ("Ball", 2, 7, 1)
    assert c.f_vector == (6, 12, 7)
    assert [cx.format_face(R) for R in cx.boundary(spec)] == ["{y1,y2}", "{y1,y3}", "{y2,y3}"]
    tree = cx.vertex_decomposition(spec)
    assert [str(v) for v in cx.shedding_order(tree)] == ["y1", "y2", "y3"]


def test_triangle_boundary_by_hand():
    """The 12 edges split into 9 interior ones and the 3 all-y edges."""
    spec = cx.complex_of_quiver(triangle())
    degrees = cx.ridge_degrees(spec)
    assert len(degrees) == 12
    assert sorted(degrees.values()) == [1] * 3 + [2] * 9


def test_four_vertex_sphere():
    spec = cx.ComplexSpec.ground(4)
    c = cx.classify(spec)
    assert c.verdict == "Sphere" and c.f_vector == (8, 24, 32, 16)
    assert c.euler_characteristic == 0


@pytest.mark.parametrize("name, seed", list(named_seeds().items()))
def test_stanley_reisner_complex_of_initial_ideal(name, seed):
    spec = cx.complex_of_quiver(seed)
    sr = cx.stanley_reisner_faces(seed.n, initial_ideal_generators(seed))
    assert sr == cx.all_faces(spec)


def test_quiver_verdicts_follow_acyclicity():
    for q in random_corpus(80, 5):
        c = cx.classify(cx.complex_of_quiver(q))
        assert (c.verdict == "Sphere") == is_acyclic(q)


def test_invalid_inputs():
    with pytest.raises(cx.ComplexError):
        cx.ComplexSpec(frozenset({1}), (frozenset({2}),), frozenset({1}))
    with pytest.raises(cx.ComplexError):
        cx.ComplexSpec(frozenset({1}), (frozenset(),), frozenset({1}))
    spec = cx.ComplexSpec.ground(2, C=[{1}])
    assert spec.y_vertices == [2]
    with pytest.raises(cx.NotAYVertex):
        cx.link_y(spec, 1)
    with pytest.raises(cx.InvalidVertex):
        cx.is_face(spec, {cx.Y(1)})


def test_ground_set_bound(monkeypatch):
    spec = cx.ComplexSpec.ground(6)
    monkeypatch.setenv("LBCA_MAX_N", "5")
    with pytest.raises(cx.GroundSetTooLarge, match="5"):
        cx.facets(spec)
    monkeypatch.setenv("LBCA_MAX_N", "6")
    assert len(cx.facets(spec)) == 64


def test_antichain_reduction_and_round_trip():
    spec = cx.ComplexSpec.ground(4, C=[{1, 2}, {1, 2, 3}])
    assert spec.C == (frozenset({1, 2}),)
    assert cx.ComplexSpec.from_dict(spec.to_dict()) == spec
    assert cx.ComplexSpec.from_dict({"S": 4, "C": [[1, 2]]}) == spec


def test_random_specs_are_reproducible():
    a = [cx.random_spec(random.Random(3)) for _ in range(3)]
    b = [cx.random_spec(random.Random(3)) for _ in range(3)]
    assert a == b
