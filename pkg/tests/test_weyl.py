import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import rd, W

from affhecke import lattice
from affhecke.parameters import ParamFunction
from affhecke.weyl import (
    Affine,
    ExtendedAffineWeyl,
    GroupTooLarge,
    diagram_automorphisms,
    extended_group,
    weyl_group,
)

DATA = [("A1", "adjoint"), ("A1", "sc"), ("A2", "adjoint"), ("A2", "sc"), ("B2", "adjoint"),
        ("B2", "sc"), ("G2", "adjoint"), ("A1xA1", "adjoint")]


def E(spec, lat="adjoint"):
    return ExtendedAffineWeyl(rd(spec, lat))


def test_group_orders():
    assert len(W("A1")) == 2
    assert len(W("A2")) == 6
    assert len(W("B2")) == 8
    assert len(W("G2")) == 12
    assert len(W("A3")) == 24
    assert len(W("B3")) == 48


def test_size_guard():
    with pytest.raises(GroupTooLarge):
        weyl_group(rd("B3"), max_size=10)


@pytest.mark.parametrize("spec,lat", DATA)
def test_finite_length_is_inversion_count(spec, lat):
    G = W(spec, lat)
    r = rd(spec, lat)
    for g in range(len(G)):
        inv = sum(1 for a in r.positive_roots if not r.is_positive(G.act(g, a)))
        assert G.length(g) == inv
        word = G.reduced_word(g)
        assert len(word) == inv


def test_simple_affine_reflections():
    assert len(E("A1").S) == 2
    assert len(E("A2").S) == 3
    assert len(E("A1xA1").S) == 4
    assert len(E("G2").S) == 3


@pytest.mark.parametrize("spec,lat", DATA)
def test_length_agrees_with_word_search(spec, lat):
    e = E(spec, lat)
    dist = e.word_search_lengths(4)
    checked = 0
    for a, d in dist.items():
        if d <= 3:
            assert e.length(a) == d, a
            checked += 1
    assert checked > 5


@pytest.mark.parametrize("spec,lat", DATA)
def test_length_properties_and_reduced_words(spec, lat):
    e = E(spec, lat)
    rng = random.Random(0)
    elems = e.elements_up_to_length(5)
    for a in rng.sample(elems, min(60, len(elems))):
        assert e.length(a) == e.length(e.inv(a))
        for s in e.S:
            assert abs(e.length(e.mul(s, a)) - e.length(a)) == 1
        omega, word = e.reduced_word(a)
        assert len(word) == e.length(a)
        assert e.length(omega) == 0
        assert e.product([omega] + [e.S[i] for i in word]) == a


def test_a1_translation_by_root():
    e = E("A1")
    t = e.translation((1,))
    assert e.length(t) == 2
    assert e.word_search_lengths(3)[t] == 2
    omega, word = e.reduced_word(t)
    assert omega == e.identity and len(word) == 2
    assert e.product([e.S[i] for i in word]) == t
    assert e.length(e.identity) == 0
    assert all(e.length(s) == 1 for s in e.S)


@pytest.mark.parametrize("spec,lat,order", [("A1", "adjoint", 1), ("A1", "sc", 2), ("A2", "sc", 3),
                                            ("B2", "sc", 2), ("G2", "adjoint", 1), ("A2", "adjoint", 1)])
def test_omega(spec, lat, order):
    e = E(spec, lat)
    om = e.omega_elements()
    assert len(om) == order == e.omega_order()
    assert all(e.length(w) == 0 for w in om)
    assert all(e.mul(a, b) in om for a in om for b in om)
    omega, word = e.reduced_word(om[-1])
    assert omega == om[-1] and word == ()


def test_omega_infinite_for_gl2():
    assert E("A1xT1").omega_order() is None


def test_diagram_automorphisms():
    a2 = diagram_automorphisms(rd("A2"))
    assert (1, 0) in [g.perm for g in a2]
    assert [g.perm for g in diagram_automorphisms(rd("A1"))] == [(0,)]
    assert (1, 0) in [g.perm for g in diagram_automorphisms(rd("A1xA1"))]
    assert [g.perm for g in diagram_automorphisms(rd("B2"))] == [(0, 1)]
    for spec in ("A2", "A1xA1", "A3", "D4"):
        r = rd(spec)
        for g in diagram_automorphisms(r):
            ginvT = lattice.transpose(lattice.int_inverse(g.matrix))
            for a in r.simple_roots:
                for b in r.simple_roots:
                    ga, gb = lattice.mat_vec(g.matrix, a), lattice.mat_vec(g.matrix, b)
                    assert r.pair(ga, r.coroot[gb]) == r.pair(a, r.coroot[b])
            assert all(lattice.mat_vec(ginvT, r.coroot[a]) == r.coroot[lattice.mat_vec(g.matrix, a)]
                       for a in r.roots)
    assert len(diagram_automorphisms(rd("D4"))) == 6


def test_conjugacy_classes():
    assert len(W("A1").conjugacy_classes()) == 2
    assert sorted(c.size for c in W("A2").conjugacy_classes()) == [1, 2, 3]
    assert len(W("B2").conjugacy_classes()) == 5
    assert len(W("G2").conjugacy_classes()) == 6
    gam = tuple(g for g in diagram_automorphisms(rd("A2")) if g.perm != (0, 1))
    assert len(extended_group(rd("A2"), gam).conjugacy_classes()) == 6


@pytest.mark.parametrize("spec", ["A1", "A2", "B2", "G2", "A1xA1", "A3", "B3"])
def test_class_partition(spec):
    G = W(spec)
    classes = G.conjugacy_classes()
    assert sum(c.size for c in classes) == len(G)
    seen = set()
    for c in classes:
        assert not seen & set(c.elements)
        seen |= set(c.elements)
        assert c.size * len(c.centralizer) == len(G)
        assert c.rep == min(c.elements, key=lambda i: G.matrices[i])
        assert all(G.mul(c.rep, z) == G.mul(z, c.rep) for z in c.centralizer)


@given(st.integers(0, 47), st.integers(0, 47), st.integers(0, 47))
def test_group_law(a, b, c):
    G = W("B3")
    assert G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c))
    assert G.mul(a, G.inv(a)) == G.identity


@pytest.mark.parametrize("spec,lat", DATA)
def test_parameters_constant_on_conjugate_reflections(spec, lat):
    e = E(spec, lat)
    q = ParamFunction.from_spec(e)
    for cls in e.S_classes():
        for i in cls:
            for j in cls:
                assert e.find_conjugator(e.S[i], e.S[j]) is not None
                assert q.sqrt_q(i) == q.sqrt_q(j)
    classes = e.S_classes()
    for a in range(len(classes)):
        for b in range(a + 1, len(classes)):
            i, j = classes[a][0], classes[b][0]
            assert e.find_conjugator(e.S[i], e.S[j], max_len=5) is None


def test_s_classes_examples():
    assert len(E("A1").S_classes()) == 2
    assert len(E("A1", "sc").S_classes()) == 1
    assert len(E("A2").S_classes()) == 1
    assert len(E("B2").S_classes()) == 3
    assert len(E("B2", "sc").S_classes()) == 2
    assert len(E("G2").S_classes()) == 2


def test_affine_composition_law():
    e = E("A2")
    rng = random.Random(3)
    for _ in range(50):
        a = Affine(tuple(rng.randint(-2, 2) for _ in range(2)), rng.randrange(6))
        b = Affine(tuple(rng.randint(-2, 2) for _ in range(2)), rng.randrange(6))
        ab = e.mul(a, b)
        assert ab.x == tuple(p + q for p, q in zip(a.x, e.W.act(a.w, b.x)))
        assert ab.w == e.W.mul(a.w, b.w)
