"""
Extended quotients of T = Hom(X, C^×) and of 𝔱 = Y ⊗ C by a finite group W′
acting on X through integer matrices.

For w ∈ W′ the fixed subtorus is T^w = Hom(X/(w−1)X, C^×).  A Smith normal
form U (w−1) V = D splits X/(w−1)X into free coordinates (zero invariant
factors) and torsion coordinates.  The components of T^w are the translates
of the identity component; restricting a fixed point to the torsion subgroup
labels its component by a character of that subgroup, written as a vector
c with c_j ∈ Z/d_j.

Torus points of finite order are stored additively as row vectors τ ∈ (Q/Z)^n
with t(x) = exp(2πi τ·x); w acts by τ ↦ τ w^{-1}.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

from affhecke import lattice
from affhecke.root_datum import RootDatum
from affhecke.weyl import ConjClass, DiagramAutomorphism, FiniteGroup, extended_group

__all__ = [
    "FixedData",
    "fixed_data",
    "QuotientStratum",
    "ExtendedQuotient",
    "extended_quotient",
    "InfinitesimalStratum",
    "infinitesimal_quotient",
    "component_label",
    "torsion_points",
    "brute_force_components",
]


def _lcm(values) -> int:
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out


@dataclass(frozen=True)
class FixedData:
    """X/(w−1)X ≅ Z^{d_w} ⊕ ⊕_j Z/d_j, with the Smith change of basis."""

    matrix: tuple
    diag: tuple            # invariant factors, one per coordinate (0 = free)
    U: tuple               # coordinates of X/(w−1)X are U·x (mod diag)
    U_inv: tuple

    @property
    def free(self) -> tuple:
        return tuple(j for j, d in enumerate(self.diag) if d == 0)

    @property
    def torsion_coords(self) -> tuple:
        return tuple(j for j, d in enumerate(self.diag) if d > 1)

    @property
    def d_w(self) -> int:
        return len(self.free)

    @property
    def torsion(self) -> tuple:
        return tuple(self.diag[j] for j in self.torsion_coords)

    @property
    def n_components(self) -> int:
        out = 1
        for d in self.torsion:
            out *= d
        return out

    @property
    def L_basis(self) -> tuple:
        """Elements of X whose images span L_w = (X/(w−1)X)/torsion."""
        return tuple(tuple(self.U_inv[r][j] for r in range(len(self.U_inv))) for j in self.free)

    def labels(self) -> list[tuple]:
        return list(itertools.product(*(range(d) for d in self.torsion)))

    def coord_action(self, z: Sequence) -> tuple:
        """A = U z U^{-1}: the action of z on the coordinates of X/(w−1)X."""
        return lattice.mat_mul(lattice.mat_mul(self.U, z), self.U_inv)

    def act_on_label(self, z: Sequence, c: Sequence[int]) -> tuple:
        """z·χ = χ ∘ z^{-1} on characters of the torsion subgroup."""
        A_inv = lattice.int_inverse(self.coord_action(z))
        tc = self.torsion_coords
        out = []
        for j in tc:
            v = sum(Fraction(ci * A_inv[i][j], self.diag[i]) for ci, i in zip(c, tc)) * self.diag[j]
            if v.denominator != 1:
                raise ArithmeticError("centraliser action on components is not well defined")
            out.append(int(v) % self.diag[j])
        return tuple(out)

    def linear_action(self, z: Sequence) -> tuple:
        """Matrix of z on L_w in the free coordinates."""
        A = self.coord_action(z)
        fr, tc = self.free, self.torsion_coords
        for i in fr:
            for j in tc:
                if A[i][j] % 1:
                    raise ArithmeticError("torsion not preserved")
        for i in fr:
            for j in tc:
                if A[i][j] != 0:
                    raise ArithmeticError("torsion not preserved")
        return tuple(tuple(A[i][j] for j in fr) for i in fr)


def fixed_data(w: Sequence) -> FixedData:
    """Smith normal form of (w − 1) acting on X."""
    n = len(w)
    m = lattice.mat_sub(w, lattice.identity(n))
    if n == 0:
        return FixedData((), (), (), ())
    diag, U, _ = lattice.smith(m)
    return FixedData(tuple(tuple(r) for r in w), tuple(diag), U, lattice.int_inverse(U))


def component_label(fd: FixedData, tau: Sequence[Fraction]) -> tuple:
    """Component of T^w containing the fixed point τ."""
    out = []
    n = len(tau)
    for j in fd.torsion_coords:
        col = [fd.U_inv[r][j] for r in range(n)]
        v = sum(Fraction(t) * c for t, c in zip(tau, col)) * fd.diag[j]
        if v.denominator != 1:
            raise ValueError("τ is not fixed by w")
        out.append(int(v) % fd.diag[j])
    return tuple(out)


def is_fixed(w: Sequence, tau: Sequence[Fraction]) -> bool:
    n = len(tau)
    for j in range(n):
        v = sum(Fraction(tau[i]) * (w[i][j] - (i == j)) for i in range(n))
        if v.denominator != 1:
            return False
    return True


def act_on_point(w: Sequence, tau: Sequence[Fraction]) -> tuple:
    """w·t = t ∘ w^{-1}: τ ↦ τ w^{-1} mod 1."""
    winv = lattice.int_inverse(w)
    n = len(tau)
    return tuple((sum(Fraction(tau[i]) * winv[i][j] for i in range(n))) % 1 for j in range(n))


def torsion_points(n: int, N: int):
    """All τ ∈ ((1/N)Z/Z)^n."""
    for v in itertools.product(range(N), repeat=n):
        yield tuple(Fraction(a, N) for a in v)


@dataclass
class QuotientStratum:
    cls: ConjClass
    matrix: tuple
    fixed: FixedData
    components: list
    orbits: list                       # lists of labels
    stabilizers: list                  # tuples of group indices, one per orbit
    linear_action: dict = field(repr=False)   # centraliser index -> matrix on L_w

    @property
    def rep(self) -> int:
        return self.cls.rep

    @property
    def d_w(self) -> int:
        return self.fixed.d_w

    @property
    def c_w(self) -> int:
        return len(self.orbits)

    @property
    def torsion(self) -> tuple:
        return self.fixed.torsion

    def to_json(self) -> dict:
        return {
            "class_rep": [list(r) for r in self.matrix],
            "class_size": self.cls.size,
            "centralizer_order": len(self.cls.centralizer),
            "d_w": self.d_w,
            "invariant_factors": list(self.fixed.diag),
            "torsion": list(self.torsion),
            "n_components": len(self.components),
            "c_w": self.c_w,
            "orbits": [[list(c) for c in orb] for orb in self.orbits],
            "stabilizer_orders": [len(s) for s in self.stabilizers],
        }


@dataclass
class ExtendedQuotient:
    group: FiniteGroup
    strata: list

    @property
    def total_components(self) -> int:
        return sum(s.c_w for s in self.strata)

    def dimension_profile(self) -> dict:
        out: dict = {}
        for s in self.strata:
            out[s.d_w] = out.get(s.d_w, 0) + s.c_w
        return dict(sorted(out.items()))

    def to_json(self) -> dict:
        return {
            "group_order": len(self.group),
            "n_strata": len(self.strata),
            "total_components": self.total_components,
            "dimension_profile": {str(k): v for k, v in self.dimension_profile().items()},
            "strata": [s.to_json() for s in self.strata],
        }


def _stratum(G: FiniteGroup, cls: ConjClass) -> QuotientStratum:
    w = G.matrices[cls.rep]
    fd = fixed_data(w)
    labels = fd.labels()
    Z = cls.centralizer
    for z in Z:
        zm = G.matrices[z]
        m = lattice.mat_sub(w, lattice.identity(G.dim))
        if lattice.mat_mul(zm, m) != lattice.mat_mul(m, zm):
            raise AssertionError("centraliser element does not commute with w − 1")
    seen = set()
    orbits, stabs = [], []
    for c in labels:
        if c in seen:
            continue
        orb = sorted({fd.act_on_label(G.matrices[z], c) for z in Z})
        seen.update(orb)
        orbits.append(orb)
        stabs.append(tuple(z for z in Z if fd.act_on_label(G.matrices[z], c) == c))
    lin = {z: fd.linear_action(G.matrices[z]) for z in Z}
    return QuotientStratum(cls, w, fd, labels, orbits, stabs, lin)


def extended_quotient(rd: RootDatum | None = None, gammas: Sequence[DiagramAutomorphism] = (),
                      group: FiniteGroup | None = None) -> ExtendedQuotient:
    """T̃/W′ as one stratum per conjugacy class of W′ = W ⋊ Γ."""
    G = group if group is not None else extended_group(rd, gammas)
    strata = [_stratum(G, cls) for cls in G.conjugacy_classes()]
    return ExtendedQuotient(G, strata)


@dataclass
class InfinitesimalStratum:
    cls: ConjClass
    matrix: tuple
    basis: tuple                 # rational basis of 𝔱^w = ker(w − 1) ⊂ X ⊗ Q
    action: dict = field(repr=False)   # centraliser index -> matrix on 𝔱^w

    @property
    def dim(self) -> int:
        return len(self.basis)


def restrict_to_kernel(basis: Sequence, z: Sequence) -> tuple:
    """Matrix of z on the span of ``basis`` (z must preserve it)."""
    if not basis:
        return ()
    B = lattice.transpose(basis)
    images = lattice.transpose([lattice.mat_vec(z, b) for b in basis])
    return lattice.solve_left(B, images)


def infinitesimal_quotient(rd: RootDatum | None = None, gammas: Sequence[DiagramAutomorphism] = (),
                           group: FiniteGroup | None = None) -> list[InfinitesimalStratum]:
    """𝔱̃/W′: fixed subspaces 𝔱^w with their centraliser actions."""
    G = group if group is not None else extended_group(rd, gammas)
    out = []
    for cls in G.conjugacy_classes():
        w = G.matrices[cls.rep]
        basis = tuple(lattice.kernel(lattice.mat_sub(w, lattice.identity(G.dim)), G.dim))
        action = {z: restrict_to_kernel(basis, G.matrices[z]) for z in cls.centralizer}
        out.append(InfinitesimalStratum(cls, w, basis, action))
    return out


def brute_force_components(G: FiniteGroup, cls: ConjClass, N: int | None = None) -> tuple[int, int]:
    """(components of T^w, orbits under Z(w)) by enumerating fixed points of order N.

    Two fixed points lie in the same component iff their ratio is trivial on
    the saturation X ∩ Q(w−1)X.  N defaults to the exponent of the torsion of
    X/(w−1)X.
    """
    w = G.matrices[cls.rep]
    n = G.dim
    if N is None:
        N = _lcm(fixed_data(w).torsion) if n else 1
    m = lattice.mat_sub(w, lattice.identity(n))
    sat = lattice.saturate_span(lattice.transpose(m), n) if n else []
    fixed = [tau for tau in torsion_points(n, N) if is_fixed(w, tau)]

    def key(tau):
        return tuple(sum(t * b for t, b in zip(tau, vec)) % 1 for vec in sat)

    comps = {}
    for tau in fixed:
        comps.setdefault(key(tau), tau)
    # orbits of Z(w) on components
    reps = list(comps)
    seen, orbits = set(), 0
    for k in reps:
        if k in seen:
            continue
        orbits += 1
        for z in cls.centralizer:
            seen.add(key(act_on_point(G.matrices[z], comps[k])))
    return len(comps), orbits
