from fractions import Fraction

import pytest

from conftest import cfg, swap_group

from affhecke.reps import (
    InducedRep,
    artin_basis_check,
    check_representation,
    clifford_count,
    fiber_count,
    frobenius_character,
    induced_family_rep,
    irreducible_count,
    isotropy_group,
    orbit_representatives,
    point_order,
    torsion_points_up_to,
    trace_matrix,
)
from affhecke.weyl import FiniteGroup, extended_group

half = Fraction(1, 2)


def group(spec):
    return extended_group(cfg(spec).rd)


def nontrivial(G):
    return next(g for g in G if g != G.identity)


def test_torsion_points():
    pts = torsion_points_up_to(1, 6)
    assert len(pts) == len({p for p in pts}) == 12   # φ(1)+...+φ(6)
    assert all(point_order(p) <= 6 for p in torsion_points_up_to(2, 6))


def test_isotropy_examples():
    a1 = group("A1")
    assert len(isotropy_group(a1, (0,))) == 2
    assert len(isotropy_group(a1, (half,))) == 2
    a2 = group("A2")
    assert len(isotropy_group(a2, (0, 0))) == 6
    assert len(isotropy_group(a2, (Fraction(1, 5), Fraction(2, 5)))) == 1


def test_family_examples():
    G = group("A1")
    s = nontrivial(G)
    r = induced_family_rep(G, G.identity, (0,))
    assert r.dim == 2 and r.trace(G.identity) == 2 and r.trace(s) == 0
    r = induced_family_rep(G, s, (0,))
    assert r.dim == 1 and r.trace(s) == -1
    for w in G:
        r = induced_family_rep(G, w, (half,))
        assert r.trace(G.identity) == r.dim == len(G) // len(r.C)
    with pytest.raises(ValueError):
        InducedRep(G, s, (Fraction(1, 3),))


@pytest.mark.parametrize("spec", ["A1", "A2", "B2", "G2"])
def test_representation_property(spec):
    G = group(spec)
    for tau in torsion_points_up_to(G.dim, 4)[:6]:
        for w in isotropy_group(G, tau):
            r = InducedRep(G, w, tau)
            assert check_representation(r, samples=8, seed=1) == []
            for h in list(G)[:4]:
                for g in list(G)[:4]:
                    assert r.trace(h) == r.trace(G.conj(g, h))


def test_a1_trace_matrix():
    G = group("A1")
    tm = trace_matrix(G, (0,))
    assert tm.size == 2 and tm.is_invertible()
    rows = tm.rational()
    target = sorted([[2, 0], [1, -1]])
    assert sorted(rows) == target or sorted(r[::-1] for r in rows) == target


def test_trace_matrix_examples():
    triv = FiniteGroup.generate([], 1)
    tm = trace_matrix(triv, (0,))
    assert tm.rational() == [[1]]
    tm = trace_matrix(group("A2"), (0, 0))
    assert tm.size == 3 and tm.is_invertible()


def test_artin_examples():
    assert artin_basis_check(group("A2"), (0, 0)).rank == 3
    assert artin_basis_check(group("A2"), (Fraction(1, 5), Fraction(2, 5))).rank == 1
    c = artin_basis_check(group("A1"), (half,))
    assert c.ok and c.rank == 2
    gam, G = swap_group("A2")
    c = artin_basis_check(G, (0, 0))
    assert c.ok and c.rank == c.n_classes == 6


def test_clifford_examples():
    assert clifford_count(group("A2"), (0, 0)) == (3, 3)
    assert clifford_count(group("A2"), (Fraction(1, 5), Fraction(2, 5))) == (1, 1)
    assert clifford_count(group("A1"), (half,)) == (2, 2)


@pytest.mark.parametrize("spec", ["B2", "G2", "A1xA1", "A3"])
def test_clifford_and_fiber_counts(spec):
    G = group(spec)
    for tau in orbit_representatives(G, torsion_points_up_to(G.dim, 4)):
        a, b = clifford_count(G, tau)
        assert a == b
        a, b = fiber_count(G, tau)
        assert a == b


def test_irreducible_counts():
    assert irreducible_count(group("B2"), tuple(group("B2"))) == 5
    assert irreducible_count(group("G2"), tuple(group("G2"))) == 6
    assert irreducible_count(group("A3"), tuple(group("A3"))) == 5


def test_frobenius_formula_matches_induced_traces():
    G = group("A2")
    for w in G:
        r = InducedRep(G, w, (0, 0))
        for h in G:
            assert frobenius_character(G, tuple(G), w, h) == r.trace(h)


def test_b2_dihedral_isotropy_is_rank_deficient():
    # W(B2) is dihedral of order 8; the family characters Ind_{C_w}(ρ_w), one per
    # class, span only a rank-4 subspace of its 5-dimensional class-function space
    G = group("B2")
    for tau in [(0, 0), (0, half)]:
        c = artin_basis_check(G, tau)
        assert (c.ok, c.rank, c.n_classes) == (False, 4, 5)
        assert trace_matrix(G, tau).rank() == 4
        assert clifford_count(G, tau) == (5, 5)
        assert fiber_count(G, tau) == (5, 5)
    for tau in [(half, 0), (half, half)]:
        assert artin_basis_check(G, tau).ok


def test_cyclic_group_of_order_four_is_rank_deficient():
    Z4 = FiniteGroup.generate([((0, -1), (1, 0))], 2)
    c = artin_basis_check(Z4, (0, 0))
    assert (c.ok, c.rank, c.n_classes) == (False, 3, 4)
    assert clifford_count(Z4, (0, 0)) == (4, 4)


def test_json():
    G = group("A1")
    js = trace_matrix(G, (0,)).to_json(G)
    assert js["invertible"] and js["rank"] == 2 and js["isotropy_order"] == 2
    # entries are root-of-unity sums: (order N, exponent list)
    assert js["entries"][0][0] == {"order": 2, "exponents": [1]}
    assert js["entries"][1][1] == {"order": 1, "exponents": [0, 0]}
    r = induced_family_rep(G, G.identity, (half,))
    assert r.to_json()["dim"] == 2
