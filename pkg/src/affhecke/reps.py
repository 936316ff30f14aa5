"""
Representations of X ⋊ W′ at torsion points of T (the q = 1 specialisation).

A torsion point t ∈ T = Hom(X, C^×) is a row vector τ ∈ (Q/Z)^n with
t(x) = exp(2πi τ·x).  For w ∈ W′ fixing t, with C_w = ⟨w⟩ and
ρ_w(w^n) = exp(2πi n/|C_w|), the family representation

    π_w(t) = Ind_{X⋊C_w}^{X⋊W′}(C_t ⊗ ρ_w)

is realised on the cosets g_i C_w (g_i of minimal length).  Every matrix is
monomial: a permutation of the basis together with a root of unity on each
basis vector.  Phases are kept as exact fractions mod 1.

On the t-weight space (the span of v_i with g_i ∈ W′_t) the isotropy group
W′_t acts by Ind_{C_w}^{W′_t}(ρ_w); the trace matrix at t collects these
characters over one w per conjugacy class of W′_t.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from affhecke import lattice
from affhecke.cyclotomic import Cyclotomic, cyclotomic_rank
from affhecke.quotient import act_on_point, torsion_points
from affhecke.weyl import FiniteGroup, _flat

__all__ = [
    "torus_point",
    "point_order",
    "isotropy_group",
    "Monomial",
    "InducedRep",
    "induced_family_rep",
    "TraceMatrix",
    "trace_matrix",
    "frobenius_character",
    "artin_basis_check",
    "clifford_count",
    "fiber_count",
    "torsion_points_up_to",
    "check_representation",
]


def torus_point(values: Sequence) -> tuple:
    return tuple(Fraction(v) % 1 for v in values)


def point_order(tau: Sequence[Fraction]) -> int:
    N = 1
    for t in tau:
        d = Fraction(t).denominator
        N = N * d // gcd(N, d)
    return N


def torsion_points_up_to(n: int, exponent: int) -> list[tuple]:
    """All τ ∈ (Q/Z)^n of order at most ``exponent``, sorted."""
    seen = set()
    for N in range(1, exponent + 1):
        for tau in torsion_points(n, N):
            seen.add(tau)
    return sorted(seen, key=lambda t: (point_order(t), t))


def isotropy_group(G: FiniteGroup, tau: Sequence) -> tuple:
    """W′_t = {g ∈ W′ : g(t) = t}."""
    tau = torus_point(tau)
    return tuple(g for g in G if act_on_point(G.matrices[g], tau) == tau)


def _length_key(G: FiniteGroup):
    if hasattr(G, "root_perm"):
        return lambda g: (G.length(g), _flat(G.matrices[g]))
    return lambda g: _flat(G.matrices[g])


def _rep_of(G: FiniteGroup, cls: Sequence[int]) -> int:
    return min(cls, key=_length_key(G))


@dataclass(frozen=True)
class Monomial:
    """e_i ↦ exp(2πi phases[i]) e_{perm[i]}."""

    perm: tuple
    phases: tuple

    def __matmul__(self, other: "Monomial") -> "Monomial":
        # (self ∘ other): e_i ↦ ph_o(i) e_{o(i)} ↦ ph_o(i) ph_s(o(i)) e_{s(o(i))}
        perm = tuple(self.perm[j] for j in other.perm)
        phases = tuple((other.phases[i] + self.phases[j]) % 1 for i, j in enumerate(other.perm))
        return Monomial(perm, phases)

    @classmethod
    def identity(cls, n: int) -> "Monomial":
        return cls(tuple(range(n)), (Fraction(0),) * n)

    def trace_exponents(self, indices: Sequence[int] | None = None) -> list[Fraction]:
        idx = range(len(self.perm)) if indices is None else indices
        return sorted(self.phases[i] for i in idx if self.perm[i] == i)

    def to_json(self) -> dict:
        return {"perm": list(self.perm), "phases": [str(p) for p in self.phases]}


def root_sum(exponents: Sequence[Fraction]) -> Cyclotomic:
    """Σ exp(2πi e) over the given fractions."""
    N = 1
    for e in exponents:
        N = N * e.denominator // gcd(N, e.denominator)
    return Cyclotomic.from_exponents(N, [int(e * N) for e in exponents])


def _root_sum_json(exponents: Sequence[Fraction]) -> dict:
    N = 1
    for e in exponents:
        N = N * e.denominator // gcd(N, e.denominator)
    return {"order": N, "exponents": sorted(int(e * N) for e in exponents)}


class InducedRep:
    """π_w(t) = Ind_{X⋊C_w}^{X⋊W′}(C_t ⊗ ρ_w) with exact monomial matrices."""

    def __init__(self, G: FiniteGroup, w: int, tau: Sequence):
        tau = torus_point(tau)
        if act_on_point(G.matrices[w], tau) != tau:
            raise ValueError(f"group element {w} does not fix the torus point {tau}")
        self.G, self.w, self.tau = G, w, tau
        self.C = G.cyclic_subgroup(w)
        self.m = len(self.C)
        self._power = {c: k for k, c in enumerate(self.C)}
        key = _length_key(G)
        seen, reps = set(), []
        for g in sorted(G, key=key):
            if g in seen:
                continue
            reps.append(g)
            seen.update(G.mul(g, c) for c in self.C)
        self.coset_reps = tuple(reps)
        self._coset_of = {G.mul(g, c): (i, c) for i, g in enumerate(reps) for c in self.C}
        self._cache: dict = {}

    @property
    def dim(self) -> int:
        return len(self.coset_reps)

    def rho(self, c: int) -> Fraction:
        """ρ_w(c) as a phase, for c ∈ C_w."""
        return Fraction(self._power[c], self.m)

    def group_matrix(self, h: int) -> Monomial:
        """Action of h ∈ W′: h g_i = g_j c with c ∈ C_w gives h v_i = ρ_w(c) v_j."""
        M = self._cache.get(h)
        if M is None:
            perm, phases = [], []
            for g in self.coset_reps:
                j, c = self._coset_of[self.G.mul(h, g)]
                perm.append(j)
                phases.append(self.rho(c))
            M = Monomial(tuple(perm), tuple(phases))
            self._cache[h] = M
        return M

    def character_of_coset(self, i: int) -> tuple:
        """g_i(t) as a row vector τ g_i^{-1}."""
        return act_on_point(self.G.matrices[self.coset_reps[i]], self.tau)

    def lattice_matrix(self, x: Sequence[int]) -> Monomial:
        """Action of θ_x: v_i is a weight vector for g_i(t)."""
        phases = tuple(sum(a * b for a, b in zip(self.character_of_coset(i), x)) % 1
                       for i in range(self.dim))
        return Monomial(tuple(range(self.dim)), phases)

    def element_matrix(self, x: Sequence[int], h: int) -> Monomial:
        """Matrix of (x, h) = t_x h."""
        return self.lattice_matrix(x) @ self.group_matrix(h)

    def weight_space(self) -> tuple:
        """Indices of basis vectors of X-weight t."""
        return tuple(i for i in range(self.dim) if self.character_of_coset(i) == self.tau)

    def trace(self, h: int, x: Sequence[int] | None = None) -> Cyclotomic:
        M = self.group_matrix(h) if x is None else self.element_matrix(x, h)
        return root_sum(M.trace_exponents())

    def weight_trace_exponents(self, h: int) -> list[Fraction]:
        return self.group_matrix(h).trace_exponents(self.weight_space())

    def weight_trace(self, h: int) -> Cyclotomic:
        """Trace of h ∈ W′_t on the t-weight space."""
        return root_sum(self.weight_trace_exponents(h))

    def to_json(self) -> dict:
        return {
            "w": [list(r) for r in self.G.matrices[self.w]],
            "t": [str(v) for v in self.tau],
            "dim": self.dim,
            "cyclic_order": self.m,
            "coset_reps": [[list(r) for r in self.G.matrices[g]] for g in self.coset_reps],
        }


def induced_family_rep(G: FiniteGroup, w: int, tau: Sequence) -> InducedRep:
    return InducedRep(G, w, tau)


def check_representation(rep: InducedRep, samples: int = 20, seed: int = 0, bound: int = 3) -> list[str]:
    """Spot-check the defining relations of X ⋊ W′; returns a list of failures."""
    G, rng = rep.G, random.Random(seed)
    n = G.dim
    fails = []
    elems = list(G)
    for _ in range(samples):
        a, b = rng.choice(elems), rng.choice(elems)
        if rep.group_matrix(a) @ rep.group_matrix(b) != rep.group_matrix(G.mul(a, b)):
            fails.append(f"group law fails for ({a}, {b})")
        x = [rng.randint(-bound, bound) for _ in range(n)]
        y = [rng.randint(-bound, bound) for _ in range(n)]
        if rep.lattice_matrix(x) @ rep.lattice_matrix(y) != rep.lattice_matrix([p + q for p, q in zip(x, y)]):
            fails.append(f"lattice law fails for {x}, {y}")
        lhs = rep.group_matrix(a) @ rep.lattice_matrix(x) @ rep.group_matrix(G.inv(a))
        if lhs != rep.lattice_matrix(G.act(a, x)):
            fails.append(f"h θ_x h^-1 ≠ θ_(hx) for h={a}, x={x}")
        # (x, a)(y, b) = (x + a y, a b)
        prod = rep.element_matrix(x, a) @ rep.element_matrix(y, b)
        ay = G.act(a, y)
        if prod != rep.element_matrix([p + q for p, q in zip(x, ay)], G.mul(a, b)):
            fails.append(f"semidirect product law fails for ({x},{a}), ({y},{b})")
    return fails


@dataclass
class TraceMatrix:
    tau: tuple
    isotropy: tuple
    class_reps: tuple          # one element per W′_t-class: columns, and inducing w of rows
    entries: list              # entries[r][c]: trace of class_reps[c] on π_{class_reps[r]}(t)
    exponents: list            # the same, as root sums

    @property
    def size(self) -> int:
        return len(self.class_reps)

    def rank(self) -> int:
        return cyclotomic_rank(self.entries)

    def is_invertible(self) -> bool:
        return self.rank() == self.size

    def rational(self):
        """Entries as Fractions when all are rational, else None."""
        vals = [[e.rational() for e in row] for row in self.entries]
        if any(v is None for row in vals for v in row):
            return None
        return vals

    def to_json(self, G: FiniteGroup) -> dict:
        return {
            "t": [str(v) for v in self.tau],
            "isotropy_order": len(self.isotropy),
            "class_reps": [[list(r) for r in G.matrices[g]] for g in self.class_reps],
            "entries": [[_root_sum_json(e) for e in row] for row in self.exponents],
            "rank": self.rank(),
            "invertible": self.is_invertible(),
        }


def trace_matrix(G: FiniteGroup, tau: Sequence) -> TraceMatrix:
    """Traces of the W′_t-classes on the t-weight spaces of the family reps at t.

    Rows are the representations π_w(t), one w per W′_t-class; columns are
    the same class representatives acting.
    """
    tau = torus_point(tau)
    H = isotropy_group(G, tau)
    reps = tuple(_rep_of(G, cls) for cls in G.subgroup_classes(H))
    exps, entries = [], []
    for w in reps:
        rep = InducedRep(G, w, tau)
        row = [rep.weight_trace_exponents(h) for h in reps]
        exps.append(row)
        entries.append([root_sum(e) for e in row])
    return TraceMatrix(tau, H, reps, entries, exps)


def frobenius_character(G: FiniteGroup, H: Sequence[int], w: int, h: int, k: int = 1) -> Fraction | Cyclotomic:
    """Ind_{C_w}^H(ρ_w^k)(h) = (1/|C_w|) Σ_{g ∈ H, g^-1 h g ∈ C_w} ρ_w^k(g^-1 h g)."""
    C = G.cyclic_subgroup(w)
    m = len(C)
    power = {c: i for i, c in enumerate(C)}
    exps = []
    for g in H:
        c = G.mul(G.mul(G.inv(g), h), g)
        if c in power:
            exps.append((k * power[c]) % m)
    return Cyclotomic.from_exponents(m, exps) * Fraction(1, m)


@dataclass
class ArtinCertificate:
    ok: bool
    rank: int
    n_classes: int

    def to_json(self) -> dict:
        return {"ok": self.ok, "rank": self.rank, "n_classes": self.n_classes}


def artin_basis_check(G: FiniteGroup, tau: Sequence) -> ArtinCertificate:
    """Rank of {Ind_{C_w}^{W′_t}(ρ_w)}, one w per W′_t-class, via Frobenius' formula."""
    H = isotropy_group(G, tau)
    classes = G.subgroup_classes(H)
    reps = [_rep_of(G, cls) for cls in classes]
    cols = [cls[0] for cls in classes]
    M = [[frobenius_character(G, H, w, h) for h in cols] for w in reps]
    r = cyclotomic_rank(M)
    return ArtinCertificate(r == len(classes), r, len(classes))


def irreducible_count(G: FiniteGroup, H: Sequence[int]) -> int:
    """Number of irreducible characters of H.

    By Artin's induction theorem the characters induced from all characters
    of all cyclic subgroups span the class functions, so their rank (as
    functions on the elements of H) is the number of irreducibles.
    """
    H = sorted(H)
    seen, rows = set(), []
    for w in H:
        C = frozenset(G.cyclic_subgroup(w))
        if C in seen:
            continue
        seen.add(C)
        for k in range(len(C)):
            rows.append([frobenius_character(G, H, w, h, k) for h in H])
    return cyclotomic_rank(rows)


def clifford_count(G: FiniteGroup, tau: Sequence) -> tuple[int, int]:
    """(number of W′_t-classes, number of irreducibles of W′_t)."""
    H = isotropy_group(G, tau)
    return len(G.subgroup_classes(H)), irreducible_count(G, H)


def fiber_count(G: FiniteGroup, tau: Sequence) -> tuple[int, int]:
    """(points of T̃/W′ over W′t, number of W′_t-classes).

    The first entry counts, over the conjugacy classes of W′, the
    Z_{W′}(w)-orbits on the points of the orbit W′t fixed by w.
    """
    tau = torus_point(tau)
    orbit = {act_on_point(G.matrices[g], tau) for g in G}
    total = 0
    for cls in G.conjugacy_classes():
        wm = G.matrices[cls.rep]
        fixed = {p for p in orbit if act_on_point(wm, p) == p}
        while fixed:
            p = fixed.pop()
            total += 1
            fixed -= {act_on_point(G.matrices[z], p) for z in cls.centralizer}
    return total, len(G.subgroup_classes(isotropy_group(G, tau)))


def orbit_representatives(G: FiniteGroup, points: Sequence) -> list[tuple]:
    """One point per W′-orbit, in the order given."""
    seen, out = set(), []
    for p in points:
        p = torus_point(p)
        if p in seen:
            continue
        out.append(p)
        seen.update(act_on_point(G.matrices[g], p) for g in G)
    return out
