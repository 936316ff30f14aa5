"""
Verification suites run by ``affhecke verify`` and by the acceptance tests.

Each check produces a :class:`Check` record; a suite passes iff every check
does.  Random samples are drawn from a seeded generator so reports are
reproducible.
"""

from __future__ import annotations

import itertools
import random
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from affhecke.config import DatumConfig
from affhecke.graded import GradedHeckeAlgebra, Poly
from affhecke.hecke import HeckeAlgebra
from affhecke.homology import (
    hh_brute_force_graded,
    hh_series_graded,
    homology_report,
    hp_betti,
    hp_betti_brute_force,
    parameter_independence_report,
)
from affhecke.parameters import ParamFunction
from affhecke.quotient import brute_force_components, extended_quotient
from affhecke.reps import (
    InducedRep,
    artin_basis_check,
    check_representation,
    clifford_count,
    fiber_count,
    isotropy_group,
    torsion_points_up_to,
    trace_matrix,
)
from affhecke.weyl import Affine, ExtendedAffineWeyl, extended_group

__all__ = ["Check", "SuiteReport", "SUITES", "run_suite", "symbols_in",
           "hecke_suite", "center_suite", "graded_suite", "reps_suite", "homology_suite", "quotient_suite"]


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok, "detail": self.detail}


@dataclass
class SuiteReport:
    suite: str
    datum: str
    checks: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, name: str, ok: bool, detail: str = ""):
        self.checks.append(Check(name, bool(ok), detail))

    def failures(self) -> list:
        return [c for c in self.checks if not c.ok]

    def to_json(self) -> dict:
        return {"suite": self.suite, "datum": self.datum, "ok": self.ok,
                "checks": [c.to_json() for c in self.checks]}


# -- Hecke algebra ----------------------------------------------------------------------

def _random_hecke(H: HeckeAlgebra, rng: random.Random, pool: list, max_terms: int = 3):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        exps = [rng.randint(-1, 1) for _ in H.ring.names]
        terms[rng.choice(pool)] = H.ring.monomial(exps, rng.randint(-3, 3) or 1)
    return H.element(terms)


def hecke_suite(cfg: DatumConfig, seed: int = 0, triples: int = 200, theta_pairs: int = 50,
                max_length: int = 4, box: int = 2, H: HeckeAlgebra | None = None) -> SuiteReport:
    rep = SuiteReport("hecke", cfg.label)
    H = H or cfg.hecke_algebra()
    E, rd = H.E, H.rd
    rng = random.Random(seed)
    pool = E.elements_up_to_length(6)

    # quadratic relations
    ok = True
    for i in range(len(E.S)):
        s = H.basis(E.S[i])
        c = H.params.sqrt_q(i) - H.params.sqrt_q(i).inverse()
        ok &= H.multiply(s, s) == H.one() + s * c
    rep.add("quadratic relation N_s^2 = 1 + (q^1/2 - q^-1/2) N_s", ok)

    # associativity, and agreement of the left and right multiplication routes
    bad = 0
    for _ in range(triples):
        a, b, c = (_random_hecke(H, rng, pool) for _ in range(3))
        if H.multiply(H.multiply(a, b), c) != H.multiply(a, H.multiply(b, c)):
            bad += 1
    rep.add(f"associativity on {triples} random triples", bad == 0, f"{bad} failures")
    bad = 0
    for _ in range(max(triples // 4, 10)):
        a, b = _random_hecke(H, rng, pool), _random_hecke(H, rng, pool)
        if H.multiply(a, b) != H.multiply_right(a, b):
            bad += 1
    rep.add("left and right multiplication routes agree", bad == 0, f"{bad} failures")

    # N_w N_v = N_wv when lengths add
    short = E.elements_up_to_length(max_length)
    count = bad = 0
    for a in short:
        for b in short:
            ab = E.mul(a, b)
            if E.length(a) + E.length(b) == E.length(ab):
                count += 1
                if H.multiply(H.basis(a), H.basis(b)) != H.basis(ab):
                    bad += 1
    rep.add(f"N_w N_v = N_wv on {count} length-additive pairs (lengths <= {max_length})", bad == 0,
            f"{bad} failures")

    # θ is a homomorphism from X, independent of the decomposition used
    n = rd.rank
    bad = 0
    for _ in range(theta_pairs):
        x = tuple(rng.randint(-box, box) for _ in range(n))
        y = tuple(rng.randint(-box, box) for _ in range(n))
        xy = tuple(p + q for p, q in zip(x, y))
        if H.multiply(H.theta(x), H.theta(y)) != H.theta(xy) or H.theta(x, extra=1) != H.theta(x):
            bad += 1
    rep.add(f"θ_x θ_y = θ_(x+y) on {theta_pairs} lattice pairs", bad == 0, f"{bad} failures")

    # Bernstein cross relation
    count = bad = 0
    for x in itertools.product(range(-box, box + 1), repeat=n):
        for i in range(rd.semisimple_rank):
            count += 1
            if not H.check_bernstein_relation(i, {x: 1}).is_zero():
                bad += 1
    rep.add(f"Bernstein relation residual zero ({count} cases, |x| <= {box})", bad == 0, f"{bad} nonzero")

    # Bernstein basis round trip
    bad = 0
    for _ in range(20):
        h = _random_hecke(H, rng, pool)
        if H.from_bernstein(H.to_bernstein(h)) != h:
            bad += 1
    rep.add("to_bernstein / from_bernstein round trip", bad == 0, f"{bad} failures")

    # q = 1 gives the group algebra of W^e
    if H.ring.names:
        H1 = H.specialize({nm: Fraction(1) for nm in H.ring.names})
    else:
        H1 = HeckeAlgebra(ParamFunction.from_spec(E, 1))
    bad = 0
    for _ in range(50):
        a, b = rng.choice(pool), rng.choice(pool)
        if H1.multiply(H1.basis(a), H1.basis(b)) != H1.basis(E.mul(a, b)):
            bad += 1
    rep.add("q = 1 specialisation is the group algebra of W^e", bad == 0, f"{bad} failures")
    return rep


def center_suite(cfg: DatumConfig, orbits: int = 20, H: HeckeAlgebra | None = None) -> SuiteReport:
    rep = SuiteReport("center", cfg.label)
    H = H or cfg.hecke_algebra()
    rd = H.rd
    n = rd.rank
    # the orbits of shortest translations, found in a box large enough to hold them
    seen, reps = set(), []
    radius = 1
    while n and len(reps) < orbits:
        seen, reps = set(), []
        box = sorted(itertools.product(range(-radius, radius + 1), repeat=n),
                     key=lambda x: (H.E.length(H.E.translation(x)), x))
        for x in box:
            if x not in seen:
                seen.update(H.orbit(x))
                reps.append(x)
        radius += 1
    bound = H.E.length(H.E.translation(reps[orbits - 1])) if n else 0
    reps = [x for x in reps if H.E.length(H.E.translation(x)) <= bound][:orbits] if n else [()]
    bad = [x for x in reps if not H.is_central(H.central_symmetrization(x))]
    rep.add(f"W-symmetrised θ sums are central ({len(reps)} orbits)", not bad, f"non-central: {bad}")
    for i in range(rd.semisimple_rank):
        probe = next((e for e in (tuple(int(j == k) for j in range(n)) for k in range(n))
                      if sum(p * q for p, q in zip(e, rd.simple_coroots[i]))), None)
        if probe is not None:
            comm = H.commutator(H.simple(i), H.theta(probe))
            rep.add(f"N_s{i + 1} is not central", not comm.is_zero() and not H.is_central(H.simple(i)),
                    f"[N_s, θ_{probe}] = {comm}")
    return rep


# -- graded Hecke algebra ------------------------------------------------------------------

def _random_graded(A: GradedHeckeAlgebra, rng: random.Random, d: int = 2):
    n = A.n

    def rp():
        return {tuple(rng.randint(0, d) for _ in range(n)):
                A.ring.monomial([rng.randint(0, 1) for _ in A.ring.names], rng.randint(-3, 3) or 1)
                for _ in range(2)}

    return A.element({rng.randrange(len(A.G)): rp() for _ in range(2)})


def graded_suite(cfg: DatumConfig, seed: int = 0, triples: int = 200) -> SuiteReport:
    rep = SuiteReport("graded", cfg.label)
    rng = random.Random(seed)
    A = GradedHeckeAlgebra(cfg.rd, cfg.gammas, k=cfg.k, extra_symbols=("eps",))
    rd, G = A.rd, A.G
    n = A.n

    ok = True
    for i in range(rd.semisimple_rank):
        s = A.simple(i)
        for j in range(n):
            x = tuple(int(j == r) for r in range(n))
            sx = G.act(G.simple[i], x)
            lhs = A.multiply(A.linear(x), s) - A.multiply(s, A.linear(sx))
            pairing = sum(p * q for p, q in zip(x, rd.simple_coroots[i]))
            ok &= lhs == A.one() * (A.k.values[i] * pairing)
    rep.add("cross relation x s - s s(x) = k <x, α^∨>", ok)

    bad = 0
    for _ in range(triples):
        a, b, c = (_random_graded(A, rng) for _ in range(3))
        if A.multiply(A.multiply(a, b), c) != A.multiply(a, A.multiply(b, c)):
            bad += 1
    rep.add(f"associativity on {triples} random triples", bad == 0, f"{bad} failures")

    A0 = A.with_k([0] * len(A.k.values))
    bad = 0
    for _ in range(50):
        a, b = _random_graded(A0, rng), _random_graded(A0, rng)
        if A0.multiply(a, b) != A0.crossed_product_multiply(a, b):
            bad += 1
    rep.add("k = 0 multiplication equals the crossed product S(t*) ⋊ W'", bad == 0, f"{bad} failures")

    bad = 0
    for _ in range(30):
        p = _random_graded(A, rng, 3).terms
        p = next(iter(p.values()))
        for i in range(rd.semisimple_rank):
            diff = Poly.add(p, A.act(G.simple[i], p), -1)
            want = A.divide_by_linear(diff, rd.simple_roots[i]) if diff else {}
            if A.divided_difference(i, p) != want:
                bad += 1
    rep.add("divided differences agree with division by α", bad == 0, f"{bad} failures")

    eps = A.ring.gen("eps")
    src = A.with_k([eps * v for v in A.k.values])
    bad = inv_bad = 0
    for _ in range(30):
        a, b = _random_graded(src, rng), _random_graded(src, rng)
        lhs = A.scaling_map(eps, src.multiply(a, b), A)
        rhs = A.multiply(src.scaling_map(eps, a, A), src.scaling_map(eps, b, A))
        bad += lhs != rhs
        back = A.scaling_map(eps.inverse(), src.scaling_map(eps, a, A), src)
        inv_bad += back != a
    rep.add("m_ε is a homomorphism ℍ(εk) -> ℍ(k)", bad == 0, f"{bad} failures")
    rep.add("m_(1/ε) ∘ m_ε = id", inv_bad == 0, f"{inv_bad} failures")

    bad = 0
    for _ in range(5):
        p = next(iter(_random_graded(A, rng).terms.values()))
        if not A.is_central(A.poly(A.symmetrize(p))):
            bad += 1
    rep.add("W'-invariant polynomials are central", bad == 0, f"{bad} failures")
    if rd.semisimple_rank:
        rep.add("a simple root is not central", not A.is_central(A.linear(rd.simple_roots[0])))
    return rep


# -- extended quotient ---------------------------------------------------------------------

def quotient_suite(cfg: DatumConfig, exponent: int | None = None) -> SuiteReport:
    rep = SuiteReport("xq", cfg.label)
    xq = extended_quotient(cfg.rd, cfg.gammas)
    bad = []
    for st in xq.strata:
        got = brute_force_components(xq.group, st.cls, exponent)
        if got != (len(st.components), st.c_w):
            bad.append((st.matrix, got))
    rep.add("torsion-point recount matches Smith normal form components", not bad, f"mismatches: {bad}")
    return rep


# -- q = 1 representations -----------------------------------------------------------------

def _point_checks(G, tau) -> dict:
    tm = trace_matrix(G, tau)
    art = artin_basis_check(G, tau)
    cc = clifford_count(G, tau)
    fc = fiber_count(G, tau)
    return {
        "tau": tau,
        "isotropy": len(tm.isotropy),
        "trace_rank": tm.rank(),
        "size": tm.size,
        "artin": (art.ok, art.rank, art.n_classes),
        "clifford": cc,
        "fiber": fc,
    }


def _map(fn, args, jobs: int):
    if jobs and jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(fn, *zip(*args)))
    return [fn(*a) for a in args]


def reps_suite(cfg: DatumConfig, exponent: int = 6, seed: int = 0, jobs: int = 1) -> SuiteReport:
    rep = SuiteReport("reps", cfg.label)
    G = extended_group(cfg.rd, cfg.gammas)
    points = torsion_points_up_to(cfg.rd.rank, exponent)
    results = _map(_point_checks, [(G, tau) for tau in points], jobs)
    inv = [r["tau"] for r in results if r["trace_rank"] != r["size"]]
    rep.add(f"trace matrix invertible at all {len(points)} torsion points of order <= {exponent}",
            not inv, f"singular at {[tuple(map(str, t)) for t in inv]}")
    art = [r["tau"] for r in results if not r["artin"][0]]
    rep.add("cyclic inductions form a basis of the isotropy character space", not art,
            f"rank deficient at {[tuple(map(str, t)) for t in art]}")
    cl = [r["tau"] for r in results if r["clifford"][0] != r["clifford"][1]]
    rep.add("classes of W'_t = irreducibles of W'_t", not cl, f"unequal at {cl}")
    fb = [r["tau"] for r in results if r["fiber"][0] != r["fiber"][1]]
    rep.add("extended quotient points over W't = classes of W'_t", not fb, f"unequal at {fb}")
    same = [r["tau"] for r in results if r["artin"][1] != r["trace_rank"]]
    rep.add("Frobenius-formula rank equals trace-matrix rank", not same, f"differ at {same}")

    # representation property, class functions, dimensions, at a few points
    rng = random.Random(seed)
    sample = [points[0]] + rng.sample(points[1:], min(3, len(points) - 1)) if points else [()]
    fails = []
    for tau in sample:
        H = isotropy_group(G, tau)
        for w in H:
            r = InducedRep(G, w, tau)
            fails += check_representation(r, samples=10, seed=seed)
            if r.trace(G.identity) != r.dim or r.dim * len(r.C) != len(G):
                fails.append(f"dimension wrong for w={w}, t={tau}")
            h, g = rng.randrange(len(G)), rng.randrange(len(G))
            if r.trace(h) != r.trace(G.conj(g, h)):
                fails.append(f"trace not a class function at t={tau}")
    rep.add("induced representations satisfy the relations of X ⋊ W'", not fails, "; ".join(fails[:5]))
    return rep


# -- homology ----------------------------------------------------------------------------------

_TOKEN = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


def symbols_in(obj, names) -> set:
    """Which of ``names`` occur as identifiers anywhere in a JSON-like object."""
    names = set(names)
    found = set()

    def walk(o):
        if isinstance(o, dict):
            for k, v in o.items():
                walk(k)
                walk(v)
        elif isinstance(o, (list, tuple)):
            for v in o:
                walk(v)
        elif isinstance(o, str):
            found.update(t for t in _TOKEN.findall(o) if t in names)

    walk(obj)
    return found


def parameter_symbols(cfg: DatumConfig) -> set:
    names = {"q", "k"}
    try:
        names.update(ParamFunction.from_spec(ExtendedAffineWeyl(cfg.rd), cfg.parameters).ring.names)
    except Exception:
        pass
    A = GradedHeckeAlgebra(cfg.rd, cfg.gammas, k=cfg.k)
    names.update(A.ring.names)
    return names


def homology_suite(cfg: DatumConfig, max_degree: int = 6) -> SuiteReport:
    rep = SuiteReport("homology", cfg.label)
    rd, gam = cfg.rd, cfg.gammas
    G = extended_group(rd, gam)
    per, total = hh_series_graded(group=G, max_degree=max_degree, closed_form=False)
    brute = hh_brute_force_graded(group=G, max_degree=max_degree)
    rep.add(f"Molien tables equal Reynolds ranks (d <= {max_degree})",
            all(s.table == b for s, b in zip(per, brute)))
    rep.add("all coefficients are nonnegative integers",
            all(isinstance(v, int) and v >= 0 for row in total for v in row))
    ncls = len(G.conjugacy_classes())
    rep.add("graded HP = (#classes of W', 0)", hp_betti(group=G, flavor="graded").as_tuple() == (ncls, 0))
    aff = hp_betti(group=G, flavor="affine")
    rep.add("affine HP matches the exterior-algebra brute force",
            aff.as_tuple() == hp_betti_brute_force(group=G).as_tuple(), str(aff.as_tuple()))
    a = homology_report(rd, gam, max_degree, flavors=("affine",))
    s = homology_report(rd, gam, max_degree, flavors=("schwartz",))
    same = _strip_flavor(a, "affine") == _strip_flavor(s, "schwartz")
    rep.add("affine and Schwartz reports identical", same)
    names = parameter_symbols(cfg)
    full = homology_report(rd, gam, max_degree)
    hit = symbols_in(full, names) | symbols_in(parameter_independence_report(rd, gam, min(max_degree, 4)), names)
    rep.add("homology output contains no parameter symbol", not hit, f"found {sorted(hit)}")
    return rep


def _strip_flavor(report: dict, flavor: str) -> str:
    import json
    text = json.dumps(report, sort_keys=True, ensure_ascii=False)
    lic = report["parameters"]["licensed_by"][flavor]
    return text.replace(f'"{flavor}"', '"F"').replace(lic, "L")


SUITES = {
    "hecke": lambda cfg, **kw: [hecke_suite(cfg, seed=kw.get("seed", 0), triples=kw.get("triples", 50)),
                                center_suite(cfg, orbits=kw.get("orbits", 20))],
    "graded": lambda cfg, **kw: [graded_suite(cfg, seed=kw.get("seed", 0), triples=kw.get("triples", 50))],
    "xq": lambda cfg, **kw: [quotient_suite(cfg)],
    "reps": lambda cfg, **kw: [reps_suite(cfg, exponent=kw.get("exponent", 6), seed=kw.get("seed", 0),
                                          jobs=kw.get("jobs", 1))],
    "homology": lambda cfg, **kw: [homology_suite(cfg, max_degree=kw.get("max_degree", 6))],
}


def run_suite(cfg: DatumConfig, suite: str = "all", **kw) -> list[SuiteReport]:
    if suite == "all":
        return [r for name in SUITES for r in SUITES[name](cfg, **kw)]
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; expected one of {', '.join(['all', *SUITES])}")
    return SUITES[suite](cfg, **kw)
