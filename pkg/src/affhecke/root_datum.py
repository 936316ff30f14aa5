"""
Based root data (X, R, Y, R^∨, Δ) and the combinatorics derived from them.

Coordinates: X = Z^n in a fixed basis, Y = Z^n in the dual basis, so the
pairing ⟨x, y⟩ is the ordinary dot product.  Roots are integer vectors in X,
coroots integer vectors in Y.

>>> rd = build_root_datum("A2")
>>> len(rd.roots), len(rd.simple_roots)
(6, 2)
>>> nonreduced_roots(build_root_datum("A1")).long_roots
((2,), (-2,))
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from affhecke import lattice

__all__ = [
    "RootDatumError",
    "RootDatum",
    "NonReducedData",
    "ParabolicData",
    "cartan_matrix",
    "parse_type",
    "build_root_datum",
    "nonreduced_roots",
    "parabolic_data",
]

MAX_ROOTS = 10_000

Vector = tuple


class RootDatumError(ValueError):
    """Invalid Cartan data, lattice data, or a failed root-datum axiom."""


# -- Cartan matrices ------------------------------------------------------------

def cartan_matrix(family: str, n: int) -> tuple:
    """Pairing matrix C[i][j] = ⟨α_i, α_j^∨⟩ in Bourbaki numbering."""
    c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, a=-1, b=-1):
        c[i][j] = a
        c[j][i] = b

    if family == "A" and n >= 1:
        for i in range(n - 1):
            link(i, i + 1)
    elif family == "B" and n >= 2:
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 2, n - 1, -2, -1)
    elif family == "C" and n >= 2:
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 2, n - 1, -1, -2)
    elif family == "D" and n >= 3:
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif family == "E" and n in (6, 7, 8):
        link(0, 2)
        link(1, 3)
        for i in range(2, n - 1):
            link(i, i + 1)
    elif family == "F" and n == 4:
        link(0, 1)
        link(1, 2, -2, -1)
        link(2, 3)
    elif family == "G" and n == 2:
        link(0, 1, -1, -3)
    else:
        raise RootDatumError(f"unknown Cartan type {family}{n}")
    return tuple(tuple(row) for row in c)


_FACTOR = re.compile(r"^([ABCDEFGT])(\d+)$")


def parse_type(spec: str) -> list[tuple[str, int]]:
    """Split ``"A1×A1"`` / ``"B2xT1"`` into ``[("A", 1), ("A", 1)]``.

    ``T<n>`` denotes an n-dimensional torus factor (no roots).
    """
    spec = spec.strip()
    if not spec:
        raise RootDatumError("empty type list")
    parts = [p.strip() for p in re.split(r"[×x*]", spec)]
    out = []
    for p in parts:
        m = _FACTOR.match(p)
        if not m:
            raise RootDatumError(f"cannot parse Cartan factor {p!r}")
        fam, n = m.group(1), int(m.group(2))
        if fam != "T":
            cartan_matrix(fam, n)  # validates
        out.append((fam, n))
    return out


# -- the root datum ---------------------------------------------------------------

@dataclass(frozen=True)
class RootDatum:
    rank: int
    cartan: tuple
    simple_roots: tuple
    simple_coroots: tuple
    type_label: str = ""
    components: tuple = ()
    # filled in by __post_init__
    roots: tuple = field(init=False)
    positive_roots: tuple = field(init=False)
    coroot: dict = field(init=False, repr=False)
    root_coeffs: dict = field(init=False, repr=False)
    coroot_coeffs: dict = field(init=False, repr=False)

    def __post_init__(self):
        r = len(self.simple_roots)
        if len(self.simple_coroots) != r:
            raise RootDatumError("number of simple roots and coroots differ")
        for v in self.simple_roots + self.simple_coroots:
            if len(v) != self.rank:
                raise RootDatumError(f"vector {v} does not have length {self.rank}")
        pairing = tuple(
            tuple(lattice.dot(a, b) for b in self.simple_coroots) for a in self.simple_roots
        )
        if pairing != tuple(tuple(row) for row in self.cartan):
            raise RootDatumError(
                f"pairing of simple roots and coroots {pairing} does not match "
                f"the Cartan matrix {self.cartan}"
            )
        if r and lattice.rank(self.simple_roots) != r:
            raise RootDatumError("simple roots are not linearly independent")
        if r and lattice.rank(self.simple_coroots) != r:
            raise RootDatumError("simple coroots are not linearly independent")
        coeffs, co_coeffs = _close_roots(self.cartan)
        roots, coroot, rc, cc = [], {}, {}, {}
        for c, cv in zip(coeffs, co_coeffs):
            a = tuple(sum(ci * s[k] for ci, s in zip(c, self.simple_roots)) for k in range(self.rank))
            av = tuple(sum(ci * s[k] for ci, s in zip(cv, self.simple_coroots)) for k in range(self.rank))
            roots.append(a)
            coroot[a] = av
            rc[a] = c
            cc[a] = cv
        pos = sorted((a for a in roots if sum(rc[a]) > 0), key=lambda a: (sum(rc[a]), rc[a]))
        neg = [tuple(-x for x in a) for a in pos]
        object.__setattr__(self, "roots", tuple(pos + neg))
        object.__setattr__(self, "positive_roots", tuple(pos))
        object.__setattr__(self, "coroot", coroot)
        object.__setattr__(self, "root_coeffs", rc)
        object.__setattr__(self, "coroot_coeffs", cc)
        if not self.components:
            object.__setattr__(self, "components", _components(self.cartan))
        self._validate()

    def _validate(self):
        root_set = set(self.roots)
        for a in self.roots:
            if lattice.dot(a, self.coroot[a]) != 2:
                raise RootDatumError(f"⟨α, α^∨⟩ ≠ 2 for α = {a}")
            if tuple(2 * x for x in a) in root_set:
                raise RootDatumError("root system is not reduced")
            c = self.root_coeffs[a]
            if not (all(x >= 0 for x in c) or all(x <= 0 for x in c)):
                raise RootDatumError(f"root {a} is not a signed combination of Δ")
        for a in self.roots:
            for b in self.roots:
                if self.reflect(a, b) not in root_set:
                    raise RootDatumError("reflections do not preserve R")

    # -- basic operations ------------------------------------------------------
    @property
    def semisimple_rank(self) -> int:
        return len(self.simple_roots)

    def pair(self, x: Sequence, y: Sequence) -> int:
        return lattice.dot(x, y)

    def reflect(self, alpha: Vector, x: Sequence) -> tuple:
        """s_α(x) = x − ⟨x, α^∨⟩ α."""
        n = lattice.dot(x, self.coroot[alpha])
        return tuple(xi - n * ai for xi, ai in zip(x, alpha))

    def coreflect(self, alpha: Vector, y: Sequence) -> tuple:
        """s^∨_α(y) = y − ⟨α, y⟩ α^∨."""
        n = lattice.dot(alpha, y)
        av = self.coroot[alpha]
        return tuple(yi - n * ai for yi, ai in zip(y, av))

    def reflection_matrix(self, alpha: Vector) -> tuple:
        """Matrix of s_α on column vectors of X."""
        av = self.coroot[alpha]
        n = self.rank
        return tuple(
            tuple((1 if i == j else 0) - alpha[i] * av[j] for j in range(n)) for i in range(n)
        )

    def is_positive(self, a: Vector) -> bool:
        return sum(self.root_coeffs[a]) > 0

    def height(self, a: Vector) -> int:
        return sum(self.root_coeffs[a])

    def is_dominant(self, x: Sequence) -> bool:
        return all(lattice.dot(x, av) >= 0 for av in self.simple_coroots)

    def maximal_coroots(self) -> list[tuple]:
        """For each irreducible component, the root α with α^∨ the highest coroot."""
        out = []
        for comp in self.components:
            best = None
            for a in self.positive_roots:
                cc = self.coroot_coeffs[a]
                if any(cc[i] for i in range(len(cc)) if i not in comp):
                    continue
                if best is None or sum(cc) > sum(self.coroot_coeffs[best]):
                    best = a
            out.append(best)
        return out

    def central_lattice(self) -> list[tuple]:
        """Z-basis of X^+ ∩ X^− = {x : ⟨x, α^∨⟩ = 0 for all α}."""
        return lattice.integer_kernel(self.simple_coroots, self.rank) if self.simple_roots else [
            tuple(row) for row in lattice.identity(self.rank)
        ]

    def describe(self) -> dict:
        return {
            "type": self.type_label,
            "rank": self.rank,
            "semisimple_rank": self.semisimple_rank,
            "simple_roots": [list(a) for a in self.simple_roots],
            "simple_coroots": [list(a) for a in self.simple_coroots],
            "num_roots": len(self.roots),
        }


def _components(cartan) -> tuple:
    r = len(cartan)
    seen, comps = set(), []
    for i in range(r):
        if i in seen:
            continue
        stack, comp = [i], set()
        while stack:
            j = stack.pop()
            if j in comp:
                continue
            comp.add(j)
            stack.extend(k for k in range(r) if cartan[j][k] and k not in comp)
        seen |= comp
        comps.append(tuple(sorted(comp)))
    return tuple(comps)


def _close_roots(cartan):
    """Reflection closure of Δ, tracked in simple-root and simple-coroot coefficients."""
    r = len(cartan)
    start = []
    for i in range(r):
        e = tuple(int(i == j) for j in range(r))
        start.append((e, e))
    seen = {c: cv for c, cv in start}
    queue = list(start)
    while queue:
        c, cv = queue.pop()
        for i in range(r):
            # ⟨β, α_i^∨⟩ and ⟨α_i, β^∨⟩
            n = sum(c[j] * cartan[j][i] for j in range(r))
            m = sum(cartan[i][j] * cv[j] for j in range(r))
            c2 = tuple(x - (n if j == i else 0) for j, x in enumerate(c))
            cv2 = tuple(x - (m if j == i else 0) for j, x in enumerate(cv))
            if c2 not in seen:
                seen[c2] = cv2
                queue.append((c2, cv2))
                if len(seen) > MAX_ROOTS:
                    raise RootDatumError("root closure does not terminate; not a finite Cartan matrix")
            elif seen[c2] != cv2:
                raise RootDatumError("root/coroot bijection is not W-equivariant")
    keys = sorted(seen)
    return keys, [seen[k] for k in keys]


# -- construction from a Cartan type + lattice ----------------------------------

def _block_diag(blocks):
    n = sum(len(b) for b in blocks)
    out = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[off + i][off + j] = x
        off += len(b)
    return tuple(tuple(r) for r in out)


def build_root_datum(type_spec: str, lattice_spec="adjoint") -> RootDatum:
    """Construct a root datum from a Cartan type and a lattice choice.

    ``lattice_spec`` is one of

    * ``"adjoint"``: X is the root lattice (basis Δ);
    * ``"sc"``: X is the weight lattice (basis of fundamental weights),
      Y the coroot lattice;
    * a square integer matrix whose rows express a basis of X in
      fundamental-weight coordinates (X must contain the root lattice);
    * a mapping ``{"roots": [...], "coroots": [...]}`` giving simple roots in
      X-coordinates and simple coroots in Y-coordinates explicitly.

    Torus factors ``T<n>`` contribute free rank with no roots.
    """
    factors = parse_type(type_spec)
    label = "×".join(f"{f}{n}" for f, n in factors)
    blocks = [cartan_matrix(f, n) for f, n in factors if f != "T"]
    cartan = _block_diag(blocks) if blocks else ()
    r = len(cartan)
    torus = sum(n for f, n in factors if f == "T")
    n = r + torus

    if isinstance(lattice_spec, dict):
        roots = tuple(tuple(int(x) for x in v) for v in lattice_spec.get("roots", []))
        coroots = tuple(tuple(int(x) for x in v) for v in lattice_spec.get("coroots", []))
        if len(roots) != r or len(coroots) != r:
            raise RootDatumError(f"expected {r} simple roots and coroots, got {len(roots)}/{len(coroots)}")
        rank = len(roots[0]) if roots else int(lattice_spec.get("rank", torus))
        return RootDatum(rank, cartan, roots, coroots, label)

    if isinstance(lattice_spec, str):
        kind = lattice_spec.strip().lower()
        if kind in ("adjoint", "ad", "root"):
            simple = tuple(tuple(int(i == j) for j in range(n)) for i in range(r))
            cosimple = tuple(tuple(cartan[i][j] if i < r else 0 for i in range(n)) for j in range(r))
        elif kind in ("sc", "simply-connected", "simply_connected", "weight"):
            simple = tuple(tuple(cartan[j][i] if i < r else 0 for i in range(n)) for j in range(r))
            cosimple = tuple(tuple(int(i == j) for i in range(n)) for j in range(r))
        else:
            raise RootDatumError(f"unknown lattice {lattice_spec!r}")
        return RootDatum(n, cartan, simple, cosimple, label)

    # explicit basis of X in fundamental-weight coordinates
    m = [list(map(int, row)) for row in lattice_spec]
    if len(m) != r or any(len(row) != r for row in m):
        raise RootDatumError(f"lattice matrix must be {r}×{r} for the semisimple part")
    if r and lattice.det(m) == 0:
        raise RootDatumError("lattice matrix is singular")
    simple = []
    for i in range(r):
        # α_i in weight coordinates is row i of the Cartan matrix
        try:
            coeffs = lattice.solve_left(lattice.transpose(m), [[cartan[i][j]] for j in range(r)])
        except ValueError as exc:
            raise RootDatumError(str(exc)) from exc
        c = [x[0] for x in coeffs]
        if any(Fraction(x).denominator != 1 for x in c):
            raise RootDatumError(
                f"lattice matrix does not contain the root lattice (α_{i + 1} not integral)"
            )
        simple.append(tuple(int(x) for x in c) + (0,) * torus)
    cosimple = [tuple(m[k][j] for k in range(r)) + (0,) * torus for j in range(r)]
    # pad torus coordinates
    simple = [tuple(v) for v in simple]
    return RootDatum(n, cartan, tuple(simple), tuple(cosimple), label)


# -- non-reduced roots ----------------------------------------------------------------

@dataclass(frozen=True)
class NonReducedData:
    nr_roots: tuple          # R_nr
    long_roots: tuple        # R_l
    doubled: dict            # α ∈ R -> True iff α^∨ ∈ 2Y (so 2α ∈ R_nr)

    def coroot_nr(self, rd: RootDatum, beta) -> tuple:
        """Coroot of β ∈ R_nr, using (2α)^∨ = α^∨/2."""
        if beta in rd.coroot:
            return rd.coroot[beta]
        half = tuple(x // 2 for x in beta)
        return tuple(x // 2 for x in rd.coroot[half])


def nonreduced_roots(rd: RootDatum) -> NonReducedData:
    doubled = {a: all(x % 2 == 0 for x in rd.coroot[a]) for a in rd.roots}
    nr = list(rd.roots) + [tuple(2 * x for x in a) for a in rd.roots if doubled[a]]
    # α ∈ R_nr is long iff its coroot is not in 2Y
    long_ = [a for a in rd.roots if not doubled[a]]
    long_ += [tuple(2 * x for x in a) for a in rd.roots if doubled[a]
              and not all((x // 2) % 2 == 0 for x in rd.coroot[a])]
    return NonReducedData(tuple(nr), tuple(long_), doubled)


# -- parabolic subdata -------------------------------------------------------------

@dataclass(frozen=True)
class ParabolicData:
    P: tuple                 # indices into rd.simple_roots
    roots: tuple             # R_P ⊂ X
    coroots: tuple           # R_P^∨ ⊂ Y
    X_upper_kernel: tuple    # Z-basis of X ∩ QP  (X^P = X / this)
    Y_P: tuple               # Z-basis of Y ∩ QP^∨
    Y_upper: tuple           # Z-basis of Y ∩ P^⊥
    datum_P: RootDatum | None    # R_P = (X_P, R_P, Y_P, R_P^∨, P)
    datum_upper: RootDatum | None    # R^P = (X, R_P, Y, R_P^∨, P)

    def project_X_P(self, x) -> tuple:
        """Image of x ∈ X in X_P, in the basis dual to ``Y_P``."""
        return tuple(lattice.dot(x, b) for b in self.Y_P)

    @property
    def rank_X_upper(self) -> int:
        """Rank of X^P = X / (X ∩ QP)."""
        n = self.datum_upper.rank
        return n - len(self.X_upper_kernel)


def parabolic_data(rd: RootDatum, P: Sequence[int]) -> ParabolicData:
    """Objects attached to a subset P ⊆ Δ (given by indices)."""
    P = tuple(sorted(set(P)))
    if any(i < 0 or i >= rd.semisimple_rank for i in P):
        raise RootDatumError(f"P={P} is not a subset of Δ")
    simple = [rd.simple_roots[i] for i in P]
    cosimple = [rd.simple_coroots[i] for i in P]
    # R_P = QP ∩ R: roots whose Δ-coefficients vanish off P
    roots = tuple(a for a in rd.roots if all(c == 0 for i, c in enumerate(rd.root_coeffs[a]) if i not in P))
    coroots = tuple(rd.coroot[a] for a in roots)
    n = rd.rank
    Y_P = tuple(lattice.saturate_span(cosimple, n))
    Y_upper = tuple(lattice.integer_kernel(simple, n)) if simple else tuple(
        tuple(r) for r in lattice.identity(n))
    X_kernel = tuple(lattice.saturate_span(simple, n))
    cartan_P = tuple(tuple(rd.cartan[i][j] for j in P) for i in P)

    # X_P = X / (X ∩ (P^∨)^⊥) ≅ image of φ: x ↦ (⟨x, b⟩)_{b ∈ Y_P basis}, which is
    # all of Z^{|P|} because Y_P is saturated.  So X_P has the dual basis of Y_P.
    if P:
        def coords_in(basis, v):
            sol = lattice.solve_left(lattice.transpose(basis), [[x] for x in v])
            return tuple(int(Fraction(s[0])) for s in sol)

        roots_P = [tuple(lattice.dot(a, b) for b in Y_P) for a in simple]
        coroots_P = [coords_in(Y_P, av) for av in cosimple]
        datum_P = RootDatum(len(P), cartan_P, tuple(roots_P), tuple(coroots_P), f"{rd.type_label}_P{list(P)}")
        datum_upper = RootDatum(n, cartan_P, tuple(simple), tuple(cosimple), f"{rd.type_label}^P{list(P)}")
    else:
        datum_P = RootDatum(0, (), (), (), "trivial")
        datum_upper = RootDatum(n, (), (), (), f"{rd.type_label}^P[]")
    return ParabolicData(P, roots, coroots, X_kernel, Y_P, Y_upper, datum_P, datum_upper)
