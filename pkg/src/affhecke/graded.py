"""
The graded Hecke algebra ℍ(R̃, k) ⋊ Γ = S(𝔱*) ⊗ C[W′].

Elements are kept in the normal form Σ_w w·p_w (group element on the left,
polynomial on the right).  Moving a polynomial past a simple reflection uses

    p · s_α = s_α · s_α(p) + k_α ∂_α(p),      ∂_α(p) = (p − s_α p)/α,

which for linear p is the defining cross relation.  Polynomials are dicts from
exponent tuples (in the basis of X ⊗ Q) to Laurent coefficients in the
k-symbols.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from affhecke import lattice
from affhecke.laurent import Laurent, LaurentRing
from affhecke.root_datum import RootDatum
from affhecke.weyl import DiagramAutomorphism, WeylGroup, extended_group

__all__ = ["KParams", "GradedHeckeAlgebra", "GradedElement", "Poly"]


# -- polynomials in the coordinates of 𝔱* --------------------------------------------

class Poly:
    """Helpers for sparse polynomials {exponent tuple: coefficient}."""

    @staticmethod
    def add_into(out: dict, e, c):
        v = out.get(e)
        v = c if v is None else v + c
        if v:
            out[e] = v
        else:
            out.pop(e, None)

    @staticmethod
    def add(a: Mapping, b: Mapping, sign=1) -> dict:
        out = dict(a)
        for e, c in b.items():
            Poly.add_into(out, e, c * sign if sign != 1 else c)
        return out

    @staticmethod
    def mul(a: Mapping, b: Mapping) -> dict:
        out: dict = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                Poly.add_into(out, tuple(x + y for x, y in zip(ea, eb)), ca * cb)
        return out

    @staticmethod
    def scale(a: Mapping, c) -> dict:
        return {e: v * c for e, v in a.items() if v * c}

    @staticmethod
    def degree(a: Mapping) -> int:
        return max((sum(e) for e in a), default=-1)

    @staticmethod
    def homogeneous_part(a: Mapping, d: int) -> dict:
        return {e: c for e, c in a.items() if sum(e) == d}

    @staticmethod
    def linear(x: Sequence, ring: LaurentRing) -> dict:
        """The linear form Σ x_i e_i."""
        n = len(x)
        return {tuple(int(i == j) for j in range(n)): ring.const(xi) for i, xi in enumerate(x) if xi}


class KParams:
    """k_α for α ∈ Δ, constant on W-orbits (and on Γ-orbits when Γ is present)."""

    def __init__(self, rd: RootDatum, values: Sequence[Laurent], orbits: list[list[int]]):
        self.rd = rd
        self.values = list(values)
        self.orbits = orbits

    @staticmethod
    def simple_root_orbits(rd: RootDatum, group: WeylGroup) -> list[list[int]]:
        parent = list(range(rd.semisimple_rank))
        for i, a in enumerate(rd.simple_roots):
            orbit = {group.act(g, a) for g in group}
            for j, b in enumerate(rd.simple_roots):
                if b in orbit:
                    ri, rj = parent[i], parent[j]
                    lo = min(ri, rj)
                    parent = [lo if p in (ri, rj) else p for p in parent]
        groups: dict = {}
        for i, p in enumerate(parent):
            groups.setdefault(p, []).append(i)
        return sorted(groups.values())

    @classmethod
    def from_spec(cls, rd: RootDatum, group: WeylGroup, spec=None, extra_symbols: Sequence[str] = ()):
        """``spec``: None (symbols k1, k2, ... per orbit), one symbol/number, or {"s1": ...}."""
        orbits = cls.simple_root_orbits(rd, group)
        labels = [f"s{i + 1}" for i in range(rd.semisimple_rank)]
        orbit_of = {i: o for o, orb in enumerate(orbits) for i in orb}
        chosen: list = [None] * len(orbits)
        if spec is None:
            assignment = {}
        elif isinstance(spec, Mapping):
            assignment = dict(spec)
        else:
            assignment = {lab: spec for lab in labels}
        names: list[str] = []
        for lab, val in assignment.items():
            if lab not in labels:
                raise ValueError(f"unknown simple reflection label {lab!r} for k; expected one of {labels}")
            o = orbit_of[labels.index(lab)]
            parsed = _parse_k(val, names)
            if chosen[o] is not None and chosen[o] != parsed:
                raise ValueError(f"k must be constant on the orbit {[labels[i] for i in orbits[o]]}")
            chosen[o] = parsed
        for o, orb in enumerate(orbits):
            if chosen[o] is None:
                chosen[o] = _parse_k(f"k{orb[0] + 1}", names)
        for s in extra_symbols:
            if s not in names:
                names.append(s)
        ring = LaurentRing(tuple(names))
        vals = [None] * rd.semisimple_rank
        for o, orb in enumerate(orbits):
            kind, v = chosen[o]
            val = ring.gen(v) if kind == "sym" else ring.const(v)
            for i in orb:
                vals[i] = val
        return cls(rd, vals, orbits), ring


def _parse_k(value, names: list):
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return ("const", Fraction(value))
    if isinstance(value, str):
        v = value.strip()
        try:
            return ("const", Fraction(v))
        except ValueError:
            pass
        if not v.isidentifier():
            raise ValueError(f"invalid k symbol {value!r}")
        if v not in names:
            names.append(v)
        return ("sym", v)
    raise ValueError(f"invalid k value {value!r}")


class GradedElement:
    """Σ_w w·p_w with w ∈ W′ (group indices) and p_w polynomials."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: "GradedHeckeAlgebra", terms: Mapping):
        self.alg = alg
        self.terms = {w: dict(p) for w, p in terms.items() if p}

    def __add__(self, other):
        out = {w: dict(p) for w, p in self.terms.items()}
        for w, p in other.terms.items():
            out[w] = Poly.add(out.get(w, {}), p)
        return GradedElement(self.alg, out)

    def __neg__(self):
        return GradedElement(self.alg, {w: {e: -c for e, c in p.items()} for w, p in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, GradedElement):
            return self.alg.multiply(self, other)
        c = self.alg.ring.coerce(other)
        return GradedElement(self.alg, {w: Poly.scale(p, c) for w, p in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, GradedElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset((w, frozenset(p.items())) for w, p in self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((Poly.degree(p) for p in self.terms.values()), default=-1)

    def top_part(self, d: int) -> "GradedElement":
        return GradedElement(self.alg, {w: Poly.homogeneous_part(p, d) for w, p in self.terms.items()})

    def is_polynomial(self) -> bool:
        return set(self.terms) <= {self.alg.G.identity}

    def polynomial(self) -> dict:
        return dict(self.terms.get(self.alg.G.identity, {}))

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        n = self.alg.rd.rank
        for w in sorted(self.terms):
            mono = []
            for e, c in sorted(self.terms[w].items(), reverse=True):
                m = "*".join(f"x{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
                mono.append(f"({c})" + (f"*{m}" if m else ""))
            out.append(f"[{self.alg.word_label(w)}]·(" + " + ".join(mono) + ")")
        return " + ".join(out)

    __repr__ = __str__


class GradedHeckeAlgebra:
    """ℍ(R̃, k) ⋊ Γ with coefficients in a Laurent ring over the k-symbols."""

    def __init__(self, rd: RootDatum, gammas: Sequence[DiagramAutomorphism] = (), k=None,
                 extra_symbols: Sequence[str] = (), group: WeylGroup | None = None,
                 ring: LaurentRing | None = None, k_values: Sequence[Laurent] | None = None):
        self.rd = rd
        self.n = rd.rank
        self.gammas = list(gammas)
        self.G = group if group is not None else extended_group(rd, gammas)
        if k_values is not None:
            self.ring = ring
            self.k = KParams(rd, list(k_values), KParams.simple_root_orbits(rd, self.G))
        else:
            self.k, self.ring = KParams.from_spec(rd, self.G, k, extra_symbols)
        for i in range(rd.semisimple_rank):
            for j in range(rd.semisimple_rank):
                orbit = {self.G.act(g, rd.simple_roots[i]) for g in self.G}
                if rd.simple_roots[j] in orbit and self.k.values[i] != self.k.values[j]:
                    raise ValueError("k is not constant on W′-orbits of simple roots")
        self.zero_exp = (0,) * self.n
        self._act_cache: dict = {}
        self._div_cache: dict = {}
        self._decomp: dict = {}

    def with_k(self, k_values: Sequence[Laurent]) -> "GradedHeckeAlgebra":
        """Same datum and group, different k (coefficients in the same ring)."""
        return GradedHeckeAlgebra(self.rd, self.gammas, group=self.G, ring=self.ring,
                                  k_values=[self.ring.coerce(v) for v in k_values])

    # -- constructors ---------------------------------------------------------------------
    def element(self, terms: Mapping) -> GradedElement:
        return GradedElement(self, {w: {e: self.ring.coerce(c) for e, c in p.items()}
                                    for w, p in terms.items()})

    def zero(self) -> GradedElement:
        return GradedElement(self, {})

    def one(self) -> GradedElement:
        return self.group_element(self.G.identity)

    def group_element(self, w: int) -> GradedElement:
        return GradedElement(self, {w: {self.zero_exp: self.ring.one()}})

    def simple(self, i: int) -> GradedElement:
        return self.group_element(self.G.simple[i])

    def poly(self, p: Mapping) -> GradedElement:
        return self.element({self.G.identity: p})

    def linear(self, x: Sequence) -> GradedElement:
        return GradedElement(self, {self.G.identity: Poly.linear(x, self.ring)})

    def word_label(self, w: int) -> str:
        gamma, word = self.decompose(w)
        s = "".join(f"s{j + 1}" for j in word) or "e"
        return s if gamma == self.G.identity else f"γ{gamma}·{s}"

    # -- group action on polynomials ----------------------------------------------------------
    def act_monomial(self, w: int, e: tuple) -> dict:
        key = (w, e)
        r = self._act_cache.get(key)
        if r is None:
            m = self.G.matrices[w]
            r = {self.zero_exp: self.ring.one()}
            for i, k in enumerate(e):
                if not k:
                    continue
                col = {tuple(int(j == r_) for j in range(self.n)): self.ring.const(m[r_][i])
                       for r_ in range(self.n) if m[r_][i]}
                for _ in range(k):
                    r = Poly.mul(r, col)
            self._act_cache[key] = r
        return r

    def act(self, w: int, p: Mapping) -> dict:
        """w(p), with w acting on linear forms x ∈ X ⊗ Q by its matrix."""
        out: dict = {}
        for e, c in p.items():
            for f, d in self.act_monomial(w, e).items():
                Poly.add_into(out, f, c * d)
        return out

    # -- divided differences --------------------------------------------------------------------
    def divided_difference(self, i: int, p: Mapping) -> dict:
        """∂_α(p) = (p − s_α p)/α via ∂(e_j m) = ⟨e_j, α^∨⟩ m + s_α(e_j) ∂(m)."""
        out: dict = {}
        for e, c in p.items():
            for f, d in self._dd_monomial(i, e).items():
                Poly.add_into(out, f, c * d)
        return out

    def _dd_monomial(self, i: int, e: tuple) -> dict:
        key = (i, e)
        r = self._div_cache.get(key)
        if r is not None:
            return r
        j = next((j for j, k in enumerate(e) if k), None)
        if j is None:
            r = {}
        else:
            av = self.rd.simple_coroots[i]
            rest = tuple(k - (t == j) for t, k in enumerate(e))
            pair = av[j]
            r = {}
            if pair:
                Poly.add_into(r, rest, self.ring.const(pair))
            s = self.G.simple[i]
            s_ej = self.act_monomial(s, tuple(int(t == j) for t in range(self.n)))
            d_rest = self._dd_monomial(i, rest)
            for f, c in Poly.mul(s_ej, d_rest).items():
                Poly.add_into(r, f, c)
        self._div_cache[key] = r
        return r

    def divide_by_linear(self, p: Mapping, alpha: Sequence) -> dict:
        """Exact division of p by the linear form α (raises on a remainder).

        An independent route to ∂_α used to cross-check the divided difference.
        """
        alpha = tuple(alpha)
        lead = next(j for j, a in enumerate(alpha) if a)
        inv = Fraction(1, alpha[lead])
        rest = dict(p)
        q: dict = {}
        while rest:
            # pick a monomial with the largest exponent in the lead variable
            e = max(rest, key=lambda t: (t[lead], t))
            if e[lead] == 0:
                raise ArithmeticError("polynomial is not divisible by the linear form")
            c = rest[e] * inv
            m = tuple(k - (t == lead) for t, k in enumerate(e))
            Poly.add_into(q, m, c)
            for j, a in enumerate(alpha):
                if a:
                    f = tuple(k + (t == j) for t, k in enumerate(m))
                    Poly.add_into(rest, f, -c * a)
        return q

    # -- multiplication -------------------------------------------------------------------------
    def decompose(self, w: int):
        """(γ, [j1..jk]) with w = γ·s_{j1}⋯s_{jk}, γ of length 0 in W′."""
        r = self._decomp.get(w)
        if r is None:
            G = self.G
            word = []
            g = w
            npos = len(self.rd.positive_roots)
            while G.length(g) > 0:
                perm = G.root_perm(g)
                j = next(j for j, k in enumerate(G._simple_root_idx) if perm[k] >= npos)
                word.append(j)
                g = G.mul(g, G.simple[j])
            r = (g, tuple(word[::-1]))
            self._decomp[w] = r
        return r

    def poly_times_group(self, p: Mapping, w: int) -> dict:
        """p · w as {u: q_u} meaning Σ u·q_u."""
        G = self.G
        gamma, word = self.decompose(w)
        state = {gamma: self.act(G.inv(gamma), p)}
        for j in word:
            s = G.simple[j]
            k = self.k.values[j]
            nxt: dict = {}
            for u, q in state.items():
                target = nxt.setdefault(G.mul(u, s), {})
                for e, c in q.items():
                    for f, d in self.act_monomial(s, e).items():
                        Poly.add_into(target, f, c * d)
                if k:
                    target = nxt.setdefault(u, {})
                    for e, c in q.items():
                        for f, d in self._dd_monomial(j, e).items():
                            Poly.add_into(target, f, k * c * d)
            state = {u: q for u, q in nxt.items() if q}
        return state

    def multiply(self, a: GradedElement, b: GradedElement) -> GradedElement:
        if a.alg is not self or b.alg is not self:
            raise ValueError("elements of a different graded Hecke algebra")
        G = self.G
        out: dict = {}
        for w1, p1 in a.terms.items():
            for w2, p2 in b.terms.items():
                for u, q in self.poly_times_group(p1, w2).items():
                    target = out.setdefault(G.mul(w1, u), {})
                    for ea, ca in q.items():
                        for eb, cb in p2.items():
                            Poly.add_into(target, tuple(x + y for x, y in zip(ea, eb)), ca * cb)
        return GradedElement(self, out)

    def crossed_product_multiply(self, a: GradedElement, b: GradedElement) -> GradedElement:
        """Multiplication in S(𝔱*) ⋊ W′: (w1 p1)(w2 p2) = w1 w2 · w2^{-1}(p1) p2."""
        G = self.G
        out: dict = {}
        for w1, p1 in a.terms.items():
            for w2, p2 in b.terms.items():
                w = G.mul(w1, w2)
                out[w] = Poly.add(out.get(w, {}), Poly.mul(self.act(G.inv(w2), p1), p2))
        return GradedElement(self, out)

    # -- scaling ----------------------------------------------------------------------------------
    def scaling_map(self, eps, h: GradedElement, target: "GradedHeckeAlgebra") -> GradedElement:
        """m_ε: x ↦ εx on 𝔱*, identity on C[W′]; degree-d parts scale by ε^d."""
        eps = self.ring.coerce(eps)
        out = {}
        for w, p in h.terms.items():
            out[w] = {e: c * eps ** sum(e) for e, c in p.items() if c * eps ** sum(e)}
        return GradedElement(target, out)

    # -- centre -------------------------------------------------------------------------------------
    def symmetrize(self, p: Mapping) -> dict:
        out: dict = {}
        for g in self.G:
            out = Poly.add(out, self.act(g, p))
        return out

    def is_invariant(self, p: Mapping) -> bool:
        return all(self.act(g, p) == dict(p) for g in self.G)

    def center_test_generators(self) -> list[GradedElement]:
        gens = [self.simple(i) for i in range(self.rd.semisimple_rank)]
        for g in self.gammas:
            gens.append(self.group_element(self.G.index[g.matrix]))
        for i in range(self.n):
            gens.append(self.linear(tuple(int(i == j) for j in range(self.n))))
        return gens

    def is_central(self, h: GradedElement) -> bool:
        return all((self.multiply(g, h) - self.multiply(h, g)).is_zero() for g in self.center_test_generators())

    def to_json(self, h: GradedElement) -> dict:
        return {
            "variables": list(self.ring.names),
            "terms": [
                {"w": [j + 1 for j in self.decompose(w)[1]], "gamma": self.decompose(w)[0] != self.G.identity,
                 "poly": [[list(e), c.to_json()] for e, c in sorted(p.items())]}
                for w, p in sorted(h.terms.items())
            ],
        }
