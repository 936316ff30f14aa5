"""
Exact arithmetic in the cyclotomic field Q(ζ_N).

Elements are coefficient vectors in the power basis 1, ζ, ..., ζ^{φ(N)−1},
reduced modulo the cyclotomic polynomial Φ_N.  Matrix rank over Q(ζ_N) is
obtained from the rational regular representation: a K-matrix of rank r
becomes a Q-matrix of rank r·φ(N).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import sympy

from affhecke import lattice

__all__ = ["Cyclotomic", "root_of_unity", "cyclotomic_rank", "common_order"]


@lru_cache(maxsize=None)
def _phi(N: int) -> tuple:
    """Coefficients of Φ_N, lowest degree first (monic)."""
    x = sympy.Symbol("x")
    p = sympy.Poly(sympy.cyclotomic_poly(N, x), x)
    return tuple(int(c) for c in reversed(p.all_coeffs()))


def _reduce(coeffs: list, N: int) -> tuple:
    phi = _phi(N)
    d = len(phi) - 1
    c = list(coeffs)
    for k in range(len(c) - 1, d - 1, -1):
        a = c[k]
        if a:
            c[k] = 0
            for j in range(d):
                c[k - d + j] -= a * phi[j]
    c = c[:d] + [Fraction(0)] * (d - len(c))
    return tuple(Fraction(v) for v in c)


class Cyclotomic:
    """An element of Q(ζ_N), ζ_N = exp(2πi/N)."""

    __slots__ = ("N", "coeffs")

    def __init__(self, N: int, coeffs: Sequence):
        self.N = N
        self.coeffs = _reduce(list(coeffs), N)

    @classmethod
    def zero(cls, N: int) -> "Cyclotomic":
        return cls(N, [])

    @classmethod
    def from_exponents(cls, N: int, exps: Sequence[int]) -> "Cyclotomic":
        """Σ_e ζ_N^e."""
        c = [Fraction(0)] * N
        for e in exps:
            c[e % N] += 1
        return cls(N, c)

    def degree(self) -> int:
        return len(self.coeffs)

    def lift(self, M: int) -> "Cyclotomic":
        """The same number viewed in Q(ζ_M), N | M."""
        if M % self.N:
            raise ValueError(f"Q(ζ_{self.N}) is not contained in Q(ζ_{M})")
        k = M // self.N
        c = [Fraction(0)] * (k * len(self.coeffs) + 1)
        for i, a in enumerate(self.coeffs):
            c[k * i] = a
        return Cyclotomic(M, c)

    def _coerce(self, other):
        if isinstance(other, Cyclotomic):
            if other.N == self.N:
                return self, other
            M = self.N * other.N // _gcd(self.N, other.N)
            return self.lift(M), other.lift(M)
        return self, Cyclotomic(self.N, [Fraction(other)])

    def __add__(self, other):
        a, b = self._coerce(other)
        return Cyclotomic(a.N, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.N, [-x for x in self.coeffs])

    def __sub__(self, other):
        a, b = self._coerce(other)
        return Cyclotomic(a.N, [x - y for x, y in zip(a.coeffs, b.coeffs)])

    def __mul__(self, other):
        a, b = self._coerce(other)
        c = [Fraction(0)] * (len(a.coeffs) + len(b.coeffs))
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    c[i + j] += x * y
        return Cyclotomic(a.N, c)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyclotomic(self.N, [Fraction(other)])
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        a, b = self._coerce(other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        r = self.rational()
        return hash(r) if r is not None else hash((self.N, self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def rational(self) -> Fraction | None:
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def regular_matrix(self) -> list:
        """Matrix of multiplication by self on the power basis (columns = images)."""
        d = len(self.coeffs)
        cols = []
        for i in range(d):
            basis = [Fraction(0)] * d
            basis[i] = Fraction(1)
            cols.append((self * Cyclotomic(self.N, basis)).coeffs)
        return lattice.transpose(cols)

    def __repr__(self):
        r = self.rational()
        if r is not None:
            return str(r)
        terms = [f"{a}*z^{i}" if i else str(a) for i, a in enumerate(self.coeffs) if a]
        return f"({' + '.join(terms)})_[{self.N}]"

    def to_json(self) -> dict:
        return {"order": self.N, "coefficients": [str(a) for a in self.coeffs]}


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def common_order(values) -> int:
    N = 1
    for v in values:
        if isinstance(v, Cyclotomic):
            N = N * v.N // _gcd(N, v.N)
    return N


def root_of_unity(N: int, e: int = 1) -> Cyclotomic:
    return Cyclotomic.from_exponents(N, [e])


def cyclotomic_rank(matrix: Sequence[Sequence]) -> int:
    """Rank over Q(ζ_N) of a matrix of Cyclotomic (or rational) entries."""
    if not matrix or not matrix[0]:
        return 0
    N = common_order(v for row in matrix for v in row)
    entries = [[v.lift(N) if isinstance(v, Cyclotomic) else Cyclotomic(N, [Fraction(v)]) for v in row]
               for row in matrix]
    d = entries[0][0].degree()
    big = []
    for row in entries:
        blocks = [e.regular_matrix() for e in row]
        for r in range(d):
            big.append([blocks[c][r][k] for c in range(len(row)) for k in range(d)])
    rk = lattice.rank(big)
    if rk % d:
        raise ArithmeticError("rational rank is not a multiple of the field degree")
    return rk // d
