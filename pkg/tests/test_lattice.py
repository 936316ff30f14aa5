from fractions import Fraction

import sympy
from hypothesis import given
from hypothesis import strategies as st
from sympy.matrices.normalforms import smith_normal_form

from affhecke import lattice

small = st.integers(-6, 6)


def matrices(rows=st.integers(1, 3), cols=st.integers(1, 3)):
    return st.tuples(rows, cols).flatmap(
        lambda rc: st.lists(st.lists(small, min_size=rc[1], max_size=rc[1]), min_size=rc[0], max_size=rc[0]))


@given(matrices())
def test_smith_is_a_unimodular_diagonalisation(a):
    diag, U, V = lattice.smith(a)
    D = lattice.mat_mul(lattice.mat_mul(U, a), V)
    for i, row in enumerate(D):
        for j, x in enumerate(row):
            assert x == (diag[i] if i == j else 0)
    assert abs(lattice.det(U)) == 1 and abs(lattice.det(V)) == 1
    nz = [x for x in diag if x]
    assert all(x > 0 for x in diag if x)
    assert all(nz[i + 1] % nz[i] == 0 for i in range(len(nz) - 1))
    assert diag[: len(nz)] == nz


@given(matrices())
def test_invariant_factors_match_sympy(a):
    M = sympy.Matrix(a)
    snf = smith_normal_form(M, domain=sympy.ZZ)
    theirs = sorted(abs(int(snf[i, i])) for i in range(min(M.shape)) if snf[i, i] != 0)
    assert sorted(lattice.invariant_factors(a)) == theirs


@given(matrices())
def test_integer_kernel_is_kernel_of_full_rank(a):
    n = len(a[0])
    ker = lattice.integer_kernel(a, n)
    assert len(ker) == n - lattice.rank(a)
    for v in ker:
        assert all(x == 0 for x in lattice.mat_vec(a, v))


@given(matrices(st.just(3), st.just(3)))
def test_rank_and_determinant_agree_with_sympy(a):
    assert lattice.rank(a) == sympy.Matrix(a).rank()
    assert lattice.det(a) == Fraction(int(sympy.Matrix(a).det()))


def test_inverse_of_unimodular():
    a = ((2, 1), (1, 1))
    assert lattice.int_inverse(a) == ((1, -1), (-1, 2))
    assert lattice.mat_mul(a, lattice.inverse(a)) == lattice.identity(2)


def test_a1_reflection_minus_one():
    # (s - 1) on X = Zα is multiplication by -2: one Z/2 factor
    assert lattice.invariant_factors(((-2,),)) == [2]
