"""
Exact integer and rational matrix helpers.

Matrices are tuples/lists of rows.  Vectors are tuples.  Smith normal form is
delegated to sympy's ``smith_normal_decomp``; everything else is small
Gaussian elimination over :class:`fractions.Fraction`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from sympy import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import smith_normal_decomp

Matrix = Sequence[Sequence]


def identity(n: int) -> tuple:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(a: Matrix, b: Matrix) -> tuple:
    if not a:
        return ()
    cols = len(b[0]) if b else 0
    return tuple(
        tuple(sum(row[k] * b[k][j] for k in range(len(b))) for j in range(cols))
        for row in a
    )


def mat_vec(a: Matrix, v: Sequence) -> tuple:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def vec_mat(v: Sequence, a: Matrix) -> tuple:
    if not a:
        return ()
    return tuple(sum(v[i] * a[i][j] for i in range(len(a))) for j in range(len(a[0])))


def transpose(a: Matrix) -> tuple:
    if not a:
        return ()
    return tuple(tuple(row[j] for row in a) for j in range(len(a[0])))


def mat_sub(a: Matrix, b: Matrix) -> tuple:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def dot(u: Sequence, v: Sequence):
    return sum(x * y for x, y in zip(u, v))


def _as_int(x):
    x = Fraction(x)
    if x.denominator != 1:
        raise ValueError(f"{x} is not an integer")
    return x.numerator


def to_int_matrix(a: Matrix) -> tuple:
    return tuple(tuple(_as_int(x) for x in row) for row in a)


# -- rational Gaussian elimination -------------------------------------------

def row_reduce(a: Matrix):
    """Reduced row echelon form over Q. Returns (rref rows, pivot columns)."""
    rows = [[Fraction(x) for x in row] for row in a]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(a: Matrix) -> int:
    return len(row_reduce(a)[1])


def kernel(a: Matrix, ncols: int | None = None) -> list[tuple]:
    """Basis of the right kernel {v : a v = 0} over Q."""
    if ncols is None:
        ncols = len(a[0]) if a else 0
    rref, pivots = row_reduce(a) if a else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(rref, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


def inverse(a: Matrix) -> tuple:
    n = len(a)
    aug = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    rref, pivots = row_reduce(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return tuple(tuple(row[n:]) for row in rref)


def int_inverse(a: Matrix) -> tuple:
    """Inverse of a unimodular integer matrix."""
    return to_int_matrix(inverse(a))


def det(a: Matrix) -> Fraction:
    n = len(a)
    m = [list(map(Fraction, row)) for row in a]
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            d = -d
        d *= m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] / m[c][c]
            if f:
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return d


def solve_left(basis: Matrix, target: Matrix) -> tuple:
    """Return B with ``basis_cols @ B == target_cols`` for column-basis matrices.

    ``basis`` is n×d with independent columns; ``target`` is n×k whose columns
    lie in their span.  Raises ValueError otherwise.
    """
    n = len(basis)
    d = len(basis[0]) if n else 0
    k = len(target[0]) if n else 0
    aug = [list(map(Fraction, basis[i])) + list(map(Fraction, target[i])) for i in range(n)]
    rref, pivots = row_reduce(aug)
    if any(p >= d for p in pivots):
        raise ValueError("target not in the span of the basis")
    if pivots != list(range(d)):
        raise ValueError("basis columns are dependent")
    return tuple(tuple(rref[i][d + j] for j in range(k)) for i in range(d))


def charpoly_coeffs(a: Matrix) -> list[Fraction]:
    """Coefficients c_0..c_n of det(1 + u·a) = Σ c_k u^k (Faddeev–LeVerrier).

    c_k is the k-th elementary symmetric function of the eigenvalues.
    """
    n = len(a)
    a = [[Fraction(x) for x in row] for row in a]
    # Faddeev–LeVerrier gives det(x - a) = x^n + p_1 x^{n-1} + ... + p_n;
    # then e_k = (-1)^k p_k.
    coeffs = [Fraction(1)]
    m = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + p_{k-1} I
        prev = coeffs[-1]
        am = [[sum(a[i][l] * m[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
        m = [[am[i][j] + (prev if i == j else 0) for j in range(n)] for i in range(n)]
        am = [[sum(a[i][l] * m[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
        p = -sum(am[i][i] for i in range(n)) / k
        coeffs.append(p)
    return [(-1) ** k * c for k, c in enumerate(coeffs)]


# -- integer lattices ----------------------------------------------------------

def smith(a: Matrix):
    """Smith normal form ``U a V = D``.

    Returns ``(diag, U, V)`` with ``diag`` the list of nonnegative diagonal
    entries (length min(rows, cols)), nonzero ones first and each dividing
    the next, and ``U``, ``V`` unimodular integer matrices.
    """
    a = to_int_matrix(a)
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    if nrows == 0 or ncols == 0:
        return [], identity(nrows), identity(ncols)
    dm = DomainMatrix([[ZZ(x) for x in row] for row in a], (nrows, ncols), ZZ)
    d, u, v = smith_normal_decomp(dm)
    d = [[int(x) for x in row] for row in d.to_list()]
    u = tuple(tuple(int(x) for x in row) for row in u.to_list())
    v = tuple(tuple(int(x) for x in row) for row in v.to_list())
    diag = [d[i][i] for i in range(min(nrows, ncols))]
    # normalise signs so that invariant factors are nonnegative
    for i, x in enumerate(diag):
        if x < 0:
            diag[i] = -x
            u = tuple(tuple(-y for y in row) if r == i else row for r, row in enumerate(u))
    return diag, u, v


def invariant_factors(a: Matrix) -> list[int]:
    return [x for x in smith(a)[0] if x]


def integer_kernel(a: Matrix, ncols: int) -> list[tuple]:
    """Z-basis of {v ∈ Z^ncols : a v = 0} (a saturated sublattice)."""
    if not a:
        return [tuple(row) for row in identity(ncols)]
    diag, _, v = smith(a)
    r = sum(1 for x in diag if x)
    return [tuple(v[i][j] for i in range(ncols)) for j in range(r, ncols)]


def saturate_span(vectors: Sequence[Sequence[int]], n: int) -> list[tuple]:
    """Z-basis of (Q-span of vectors) ∩ Z^n."""
    vectors = [tuple(v) for v in vectors if any(v)]
    if not vectors:
        return []
    # The saturated span is the kernel of the integer annihilator.
    ann = integer_kernel(vectors, n)
    if not ann:
        return [tuple(row) for row in identity(n)]
    return integer_kernel(ann, n)


def image_basis(a: Matrix) -> list[tuple]:
    """Z-basis of the column span of an integer matrix."""
    nrows = len(a)
    if not nrows:
        return []
    diag, u, _ = smith(a)
    uinv = int_inverse(u)
    basis = []
    for i, d in enumerate(diag):
        if d:
            basis.append(tuple(uinv[r][i] * d for r in range(nrows)))
    return basis
