"""
Finite Weyl groups, their extensions by diagram automorphisms, and the
extended affine Weyl group W^e = X ⋊ W.

Group elements of finite groups are stored as integer matrices acting on
column vectors of X; a :class:`FiniteGroup` indexes them.  Elements of W^e
are pairs ``Affine(x, w)`` meaning t_x·w, with ``w`` an index into W.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from affhecke import lattice
from affhecke.root_datum import RootDatum, nonreduced_roots

__all__ = [
    "GroupTooLarge",
    "FiniteGroup",
    "ConjClass",
    "WeylGroup",
    "weyl_group",
    "DiagramAutomorphism",
    "diagram_automorphisms",
    "extended_group",
    "Affine",
    "ExtendedAffineWeyl",
]

DEFAULT_MAX_GROUP = 20_000


class GroupTooLarge(RuntimeError):
    """Raised when a group enumeration exceeds the configured size guard."""


def _flat(m) -> tuple:
    return tuple(x for row in m for x in row)


@dataclass(frozen=True)
class ConjClass:
    rep: int                 # index of the representative
    elements: tuple          # indices, sorted
    centralizer: tuple       # indices, sorted

    @property
    def size(self) -> int:
        return len(self.elements)


class FiniteGroup:
    """A finite group of integer matrices, closed under multiplication."""

    def __init__(self, matrices: Sequence, dim: int):
        self.dim = dim
        self.matrices = [tuple(tuple(r) for r in m) for m in matrices]
        self.index = {m: i for i, m in enumerate(self.matrices)}
        self.identity = self.index[lattice.identity(dim)]
        self._mul: dict = {}
        self._inv: dict = {}
        self._classes = None

    @classmethod
    def generate(cls, gens: Sequence, dim: int, max_size: int = DEFAULT_MAX_GROUP) -> "FiniteGroup":
        ident = lattice.identity(dim)
        gens = [tuple(tuple(r) for r in g) for g in gens]
        seen = {ident: None}
        order = [ident]
        queue = deque([ident])
        while queue:
            m = queue.popleft()
            for g in gens:
                p = lattice.mat_mul(g, m)
                if p not in seen:
                    seen[p] = None
                    order.append(p)
                    queue.append(p)
                    if len(order) > max_size:
                        raise GroupTooLarge(f"group has more than {max_size} elements")
        return cls(order, dim)

    def __len__(self):
        return len(self.matrices)

    def __iter__(self):
        return iter(range(len(self.matrices)))

    def mul(self, i: int, j: int) -> int:
        key = (i, j)
        r = self._mul.get(key)
        if r is None:
            r = self.index[lattice.mat_mul(self.matrices[i], self.matrices[j])]
            self._mul[key] = r
        return r

    def inv(self, i: int) -> int:
        r = self._inv.get(i)
        if r is None:
            r = self.index[lattice.int_inverse(self.matrices[i])]
            self._inv[i] = r
        return r

    def conj(self, g: int, h: int) -> int:
        """g h g^{-1}."""
        return self.mul(self.mul(g, h), self.inv(g))

    def order(self, i: int) -> int:
        k, j = 1, i
        while j != self.identity:
            j = self.mul(j, i)
            k += 1
        return k

    def cyclic_subgroup(self, i: int) -> list[int]:
        out, j = [self.identity], i
        while j != self.identity:
            out.append(j)
            j = self.mul(j, i)
        return out

    def act(self, i: int, x: Sequence) -> tuple:
        return lattice.mat_vec(self.matrices[i], x)

    def centralizer(self, i: int) -> tuple:
        return tuple(g for g in self if self.mul(g, i) == self.mul(i, g))

    def conjugacy_classes(self) -> list[ConjClass]:
        """Classes with lexicographically minimal representatives, sorted by them."""
        if self._classes is None:
            seen = set()
            classes = []
            for h in self:
                if h in seen:
                    continue
                cls = sorted({self.conj(g, h) for g in self})
                seen.update(cls)
                rep = min(cls, key=lambda k: _flat(self.matrices[k]))
                classes.append(ConjClass(rep, tuple(cls), self.centralizer(rep)))
            classes.sort(key=lambda c: _flat(self.matrices[c.rep]))
            self._classes = classes
        return self._classes

    def class_of(self, i: int) -> ConjClass:
        for c in self.conjugacy_classes():
            if i in c.elements:
                return c
        raise KeyError(i)

    def subgroup_classes(self, elements: Sequence[int]) -> list[tuple]:
        """Conjugacy classes of the subgroup given by ``elements``."""
        elements = sorted(elements)
        seen, out = set(), []
        for h in elements:
            if h in seen:
                continue
            cls = tuple(sorted({self.conj(g, h) for g in elements}))
            seen.update(cls)
            out.append(cls)
        out.sort(key=lambda c: _flat(self.matrices[min(c, key=lambda k: _flat(self.matrices[k]))]))
        return out


class WeylGroup(FiniteGroup):
    """W(R) with its action on the roots and the length function."""

    rd: RootDatum

    def setup(self, rd: RootDatum):
        self.rd = rd
        self.simple = [self.index[rd.reflection_matrix(a)] for a in rd.simple_roots]
        self._root_index = {a: k for k, a in enumerate(rd.roots)}
        self._simple_root_idx = [self._root_index[a] for a in rd.simple_roots]
        self._perm: dict = {}
        self._length: dict = {}
        self._negset: dict = {}
        return self

    def root_perm(self, i: int) -> tuple:
        """Permutation of ``rd.roots`` induced by element i."""
        p = self._perm.get(i)
        if p is None:
            m = self.matrices[i]
            p = tuple(self._root_index[lattice.mat_vec(m, a)] for a in self.rd.roots)
            self._perm[i] = p
        return p

    def sends_negative(self, i: int, root_idx: int) -> bool:
        return self.root_perm(i)[root_idx] >= len(self.rd.positive_roots)

    def length(self, i: int) -> int:
        """Number of positive roots sent to negative roots."""
        r = self._length.get(i)
        if r is None:
            npos = len(self.rd.positive_roots)
            perm = self.root_perm(i)
            r = sum(1 for k in range(npos) if perm[k] >= npos)
            self._length[i] = r
        return r

    def inverse_negatives(self, i: int) -> tuple:
        """Indicator tuple over R^+ of [w^{-1} α ∈ R^−]."""
        r = self._negset.get(i)
        if r is None:
            npos = len(self.rd.positive_roots)
            perm = self.root_perm(self.inv(i))
            r = tuple(int(perm[k] >= npos) for k in range(npos))
            self._negset[i] = r
        return r

    def reduced_word(self, i: int) -> list[int]:
        """Indices into Δ with w = s_{j1} ... s_{jk}, k = ℓ(w)."""
        word = []
        npos = len(self.rd.positive_roots)
        while self.length(i) > 0:
            perm = self.root_perm(i)
            # right descent: w α_j < 0
            j = next(j for j, k in enumerate(self._simple_root_idx) if perm[k] >= npos)
            word.append(j)
            i = self.mul(i, self.simple[j])
        return word[::-1]


def weyl_group(rd: RootDatum, max_size: int = DEFAULT_MAX_GROUP) -> WeylGroup:
    gens = [rd.reflection_matrix(a) for a in rd.simple_roots]
    g = FiniteGroup.generate(gens, rd.rank, max_size)
    w = WeylGroup(g.matrices, rd.rank)
    return w.setup(rd)


# -- diagram automorphisms --------------------------------------------------------

@dataclass(frozen=True)
class DiagramAutomorphism:
    perm: tuple      # images of simple-root indices
    matrix: tuple    # action on X (column vectors)


def _extension_matrix(rd: RootDatum, perm: Sequence[int]):
    """Integer matrix on X sending α_i to α_perm(i) and fixing X ∩ (R^∨)^⊥.

    Returns None if no such lattice automorphism compatible with coroots exists.
    """
    n = rd.rank
    central = lattice.kernel(rd.simple_coroots, n) if rd.simple_roots else [
        tuple(r) for r in lattice.identity(n)]
    basis = [list(a) for a in rd.simple_roots] + [list(c) for c in central]
    images = [list(rd.simple_roots[perm[i]]) for i in range(len(perm))] + [list(c) for c in central]
    B = lattice.transpose(basis)
    Bp = lattice.transpose(images)
    try:
        g = lattice.mat_mul(Bp, lattice.inverse(B))
    except ZeroDivisionError:
        return None
    if any(x.denominator != 1 for row in g for x in row):
        return None
    g = lattice.to_int_matrix(g)
    if abs(lattice.det(g)) != 1:
        return None
    # coroots must map compatibly: g^{-T} α_i^∨ = α_perm(i)^∨
    ginvT = lattice.transpose(lattice.int_inverse(g))
    for i in range(len(perm)):
        if lattice.mat_vec(ginvT, rd.simple_coroots[i]) != rd.simple_coroots[perm[i]]:
            return None
    return g


def diagram_automorphisms(rd: RootDatum) -> list[DiagramAutomorphism]:
    """Pairing-preserving permutations of Δ that extend to automorphisms of X."""
    r = rd.semisimple_rank
    out = []
    for perm in itertools.permutations(range(r)):
        if any(rd.cartan[perm[i]][perm[j]] != rd.cartan[i][j] for i in range(r) for j in range(r)):
            continue
        g = _extension_matrix(rd, perm)
        if g is not None:
            out.append(DiagramAutomorphism(tuple(perm), g))
    return out


def extended_group(rd: RootDatum, gamma: Sequence[DiagramAutomorphism] = (),
                   max_size: int = DEFAULT_MAX_GROUP) -> WeylGroup:
    """W' = W ⋊ Γ as a matrix group, with Γ generated by ``gamma``."""
    gens = [rd.reflection_matrix(a) for a in rd.simple_roots] + [g.matrix for g in gamma]
    g = FiniteGroup.generate(gens, rd.rank, max_size)
    w = WeylGroup(g.matrices, rd.rank)
    return w.setup(rd)


def gamma_group(rd: RootDatum, gamma: Sequence[DiagramAutomorphism],
                max_size: int = DEFAULT_MAX_GROUP) -> FiniteGroup:
    return FiniteGroup.generate([g.matrix for g in gamma], rd.rank, max_size)


# -- extended affine Weyl group -------------------------------------------------------

class Affine(NamedTuple):
    """The element t_x · w of W^e (w is an index into the finite Weyl group)."""

    x: tuple
    w: int


class ExtendedAffineWeyl:
    """W^e = X ⋊ W with its Coxeter-type length function and S^aff."""

    def __init__(self, rd: RootDatum, max_size: int = DEFAULT_MAX_GROUP):
        self.rd = rd
        self.W = weyl_group(rd, max_size)
        self.n = rd.rank
        self.zero = (0,) * self.n
        self.identity = Affine(self.zero, self.W.identity)
        self._pos_coroots = [rd.coroot[a] for a in rd.positive_roots]
        self._length: dict = {}
        self._rw: dict = {}
        # simple affine reflections: S_Δ then one t_α s_α per component
        self.S = [Affine(self.zero, s) for s in self.W.simple]
        self.affine_roots = rd.maximal_coroots()
        for a in self.affine_roots:
            s = self.W.index[rd.reflection_matrix(a)]
            self.S.append(Affine(a, s))
        self.S_labels = [f"s{i + 1}" for i in range(rd.semisimple_rank)] + [
            f"a{i + 1}" for i in range(len(self.affine_roots))]
        self._S_index = {s: i for i, s in enumerate(self.S)}
        self.omega_generators = self._omega_generators()

    # -- group law ------------------------------------------------------------------
    def mul(self, a: Affine, b: Affine) -> Affine:
        m = self.W.matrices[a.w]
        x = tuple(ai + sum(r[k] * b.x[k] for k in range(self.n)) for ai, r in zip(a.x, m))
        return Affine(x, self.W.mul(a.w, b.w))

    def inv(self, a: Affine) -> Affine:
        wi = self.W.inv(a.w)
        m = self.W.matrices[wi]
        return Affine(tuple(-v for v in lattice.mat_vec(m, a.x)), wi)

    def translation(self, x: Sequence[int]) -> Affine:
        return Affine(tuple(x), self.W.identity)

    def finite(self, w: int) -> Affine:
        return Affine(self.zero, w)

    def act(self, a: Affine, v: Sequence) -> tuple:
        """Action on 𝔞* as an affine transformation v ↦ x + w v."""
        return tuple(x + y for x, y in zip(a.x, self.W.act(a.w, v)))

    def product(self, letters: Sequence[Affine]) -> Affine:
        out = self.identity
        for s in letters:
            out = self.mul(out, s)
        return out

    # -- length ---------------------------------------------------------------------
    def length(self, a: Affine) -> int:
        """ℓ(t_x w) = Σ_{α>0} |⟨x, α^∨⟩ − [w^{-1}α < 0]|."""
        r = self._length.get(a)
        if r is None:
            neg = self.W.inverse_negatives(a.w)
            x = a.x
            r = 0
            for av, e in zip(self._pos_coroots, neg):
                r += abs(sum(xi * yi for xi, yi in zip(x, av)) - e)
            self._length[a] = r
        return r

    def is_omega(self, a: Affine) -> bool:
        return self.length(a) == 0

    def reduced_word(self, a: Affine):
        """(ω, [i1..ik]) with a = ω · S[i1] ⋯ S[ik], k = ℓ(a), ω ∈ Ω."""
        cached = self._rw.get(a)
        if cached is not None:
            return cached
        word = []
        e = a
        ell = self.length(e)
        while ell:
            for i, s in enumerate(self.S):
                f = self.mul(e, s)
                lf = self.length(f)
                if lf < ell:
                    word.append(i)
                    e, ell = f, lf
                    break
            else:
                raise AssertionError(f"no descent found for {e}")
        result = (e, tuple(word[::-1]))
        self._rw[a] = result
        return result

    def _omega_generators(self) -> list[Affine]:
        gens = []
        for i in range(self.n):
            e = tuple(int(i == j) for j in range(self.n))
            omega, _ = self.reduced_word(self.translation(e))
            if omega != self.identity and omega not in gens:
                gens.append(omega)
        return gens

    def omega_elements(self, limit: int = 10_000) -> list[Affine]:
        """Closure of the Ω generators (finite when X/ZR is finite)."""
        seen = {self.identity}
        queue = deque([self.identity])
        gens = self.omega_generators + [self.inv(g) for g in self.omega_generators]
        while queue:
            a = queue.popleft()
            for g in gens:
                b = self.mul(g, a)
                if b not in seen:
                    seen.add(b)
                    queue.append(b)
                    if len(seen) > limit:
                        raise GroupTooLarge("Ω is too large to enumerate (infinite?)")
        return sorted(seen)

    def omega_order(self) -> int | None:
        """|X / ZR| when finite, else None."""
        if not self.rd.simple_roots:
            return 1 if self.n == 0 else None
        diag, _, _ = lattice.smith(lattice.transpose(self.rd.simple_roots))
        nonzero = [d for d in diag if d]
        if len(nonzero) < self.n:
            return None
        out = 1
        for d in nonzero:
            out *= d
        return out

    # -- simple reflections and their conjugacy classes --------------------------------
    def simple_index(self, a: Affine) -> int | None:
        return self._S_index.get(a)

    def element_order(self, a: Affine, bound: int = 12) -> int | None:
        b = a
        for k in range(1, bound + 1):
            if b == self.identity:
                return k
            b = self.mul(b, a)
        return None

    def S_classes(self) -> list[list[int]]:
        """Partition of S^aff into W^e-conjugacy classes.

        s ~ s' when st has odd order (Coxeter graph), or when they are
        swapped by conjugation with an element of Ω.
        """
        k = len(self.S)
        parent = list(range(k))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        def union(i, j):
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)

        for i in range(k):
            for j in range(i + 1, k):
                m = self.element_order(self.mul(self.S[i], self.S[j]))
                if m is not None and m % 2 == 1:
                    union(i, j)
        for w in self.omega_generators:
            winv = self.inv(w)
            for i, s in enumerate(self.S):
                c = self.mul(self.mul(w, s), winv)
                j = self._S_index.get(c)
                if j is None:
                    raise AssertionError("Ω does not normalise S^aff")
                union(i, j)
        groups: dict = {}
        for i in range(k):
            groups.setdefault(find(i), []).append(i)
        return sorted(groups.values())

    def simple_conjugate(self, r: Affine):
        """For a reflection r ∈ W^aff, an index i and g with g r g^{-1} = S[i]."""
        g = self.identity
        ell = self.length(r)
        while ell > 1:
            for s in self.S:
                t = self.mul(self.mul(s, r), s)
                lt = self.length(t)
                if lt < ell:
                    r, ell, g = t, lt, self.mul(s, g)
                    break
            else:
                raise ValueError(f"{r} is not a reflection of W^aff")
        i = self._S_index.get(r)
        if i is None:
            raise ValueError(f"{r} is not conjugate to a simple affine reflection")
        return i, g

    def find_conjugator(self, s: Affine, t: Affine, max_len: int = 8):
        """Search for g ∈ W^e with g s g^{-1} = t, by breadth-first word search."""
        gens = list(self.S) + self.omega_generators + [self.inv(w) for w in self.omega_generators]
        seen = {self.identity}
        frontier = [self.identity]
        for _ in range(max_len + 1):
            nxt = []
            for g in frontier:
                if self.mul(self.mul(g, s), self.inv(g)) == t:
                    return g
                for h in gens:
                    gh = self.mul(h, g)
                    if gh not in seen:
                        seen.add(gh)
                        nxt.append(gh)
            frontier = nxt
        return None

    # -- brute-force oracle --------------------------------------------------------------
    def word_search_lengths(self, max_len: int) -> dict:
        """Minimal number of S^aff letters (Ω letters free) for every element reached."""
        omega = self.omega_generators + [self.inv(w) for w in self.omega_generators]
        dist = {self.identity: 0}
        dq = deque([self.identity])
        while dq:
            a = dq.popleft()
            d = dist[a]
            for w in omega:
                b = self.mul(a, w)
                if b not in dist or dist[b] > d:
                    if sum(map(abs, b.x)) > 4 * max_len + 4:
                        continue
                    dist[b] = d
                    dq.appendleft(b)
            if d >= max_len:
                continue
            for s in self.S:
                b = self.mul(a, s)
                if b not in dist:
                    dist[b] = d + 1
                    dq.append(b)
        return dist

    def elements_up_to_length(self, max_len: int) -> list[Affine]:
        """All elements of length ≤ max_len (requires Ω finite)."""
        omega = self.omega_elements()
        out = set(omega)
        frontier = set(omega)
        for _ in range(max_len):
            nxt = set()
            for a in frontier:
                for s in self.S:
                    b = self.mul(a, s)
                    if b not in out and self.length(b) == self.length(a) + 1:
                        nxt.add(b)
            out |= nxt
            frontier = nxt
        return sorted(out, key=lambda a: (self.length(a), a))
