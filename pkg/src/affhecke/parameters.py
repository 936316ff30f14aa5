"""
Parameter functions of an affine Hecke algebra, in both presentations.

* S-notation: a value q(s) for each simple affine reflection s ∈ S^aff,
  constant on W^e-conjugacy classes.  We store the fixed square roots
  q(s)^{1/2} as elements of a half-exponent :class:`LaurentRing`.
* R-notation: a W-invariant function on R_nr^∨, keyed by coroot vectors
  (the coroot of 2α is α^∨/2).

The two are related by

    q_{α^∨}   = q(s_α) = q(t_α s_α)        α ∈ R ∩ R_l
    q_{α^∨}   = q(t_α s_α)                  α ∈ R \\ R_l
    q_{α^∨/2} = q(s_α) q(t_α s_α)^{-1}      α ∈ R \\ R_l

where q of an arbitrary affine reflection means q of a simple affine
reflection conjugate to it.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from affhecke import lattice
from affhecke.laurent import Laurent, LaurentRing
from affhecke.root_datum import ParabolicData, RootDatum, nonreduced_roots
from affhecke.weyl import Affine, DiagramAutomorphism, ExtendedAffineWeyl

__all__ = ["ParameterError", "ParamFunction", "convert_parameters", "restrict_parameters"]


class ParameterError(ValueError):
    """A parameter assignment inconsistent with the conjugacy classes of S^aff."""


def _parse_value(value, ring_names: list):
    """Return ("sym", name) or ("const", Fraction)."""
    if isinstance(value, bool):
        raise ParameterError(f"invalid parameter value {value!r}")
    if isinstance(value, (int, Fraction)):
        return ("const", Fraction(value))
    if isinstance(value, str):
        v = value.strip()
        try:
            return ("const", Fraction(v))
        except ValueError:
            pass
        if not v.isidentifier():
            raise ParameterError(f"invalid parameter symbol {value!r}")
        if v not in ring_names:
            ring_names.append(v)
        return ("sym", v)
    raise ParameterError(f"invalid parameter value {value!r}")


class ParamFunction:
    """q on S^aff, one value per W^e-conjugacy class, with fixed square roots."""

    def __init__(self, E: ExtendedAffineWeyl, sqrt_values: list[Laurent]):
        self.E = E
        self.classes = E.S_classes()
        self._class_of = {i: c for c, cls in enumerate(self.classes) for i in cls}
        if len(sqrt_values) != len(self.classes):
            raise ParameterError("need one value per conjugacy class of S^aff")
        for v in sqrt_values:
            if not v.is_monomial():
                raise ParameterError(f"q(s)^(1/2) = {v} is not invertible")
        self.sqrt_values = list(sqrt_values)
        self.ring = sqrt_values[0].ring if sqrt_values else LaurentRing((), half=True)

    # -- construction -------------------------------------------------------------
    @classmethod
    def from_spec(cls, E: ExtendedAffineWeyl, spec=None) -> "ParamFunction":
        """Build from a config value.

        ``spec`` may be None (one symbol per class, named after its first
        label), a single symbol or number (equal parameters), or a mapping
        from S^aff labels (``s1``, ``s2``, ..., ``a1``, ...) to symbols or
        rational constants.
        """
        classes = E.S_classes()
        labels = E.S_labels
        names: list[str] = []
        chosen: list = [None] * len(classes)
        class_of = {i: c for c, cls_ in enumerate(classes) for i in cls_}
        if spec is None:
            assignment = {}
        elif isinstance(spec, Mapping):
            assignment = dict(spec)
        else:
            assignment = {lab: spec for lab in labels}
        for lab, val in assignment.items():
            if lab not in labels:
                raise ParameterError(f"unknown simple affine reflection label {lab!r}; expected one of {labels}")
            c = class_of[labels.index(lab)]
            parsed = _parse_value(val, names)
            if chosen[c] is not None and chosen[c] != parsed:
                other = [labels[i] for i in classes[c]]
                raise ParameterError(
                    f"labels {other} are conjugate in W^e but were given different values "
                    f"({chosen[c][1]} vs {parsed[1]})"
                )
            chosen[c] = parsed
        for c, cls_ in enumerate(classes):
            if chosen[c] is None:
                chosen[c] = _parse_value(f"q_{labels[cls_[0]]}", names)
        ring = LaurentRing(tuple(names), half=True)
        sqrt_values = []
        for kind, v in chosen:
            if kind == "sym":
                sqrt_values.append(ring.gen(v))
            else:
                if v <= 0:
                    raise ParameterError(f"parameter {v} must be positive")
                try:
                    sqrt_values.append(ring.const(v).sqrt())
                except ValueError as exc:
                    raise ParameterError(f"parameter {v} has no rational square root") from exc
        return cls(E, sqrt_values)

    # -- access ---------------------------------------------------------------------
    def sqrt_q(self, s_index: int) -> Laurent:
        return self.sqrt_values[self._class_of[s_index]]

    def q(self, s_index: int) -> Laurent:
        v = self.sqrt_q(s_index)
        return v * v

    def class_label(self, c: int) -> str:
        return "/".join(self.E.S_labels[i] for i in self.classes[c])

    def is_trivial(self) -> bool:
        return all(v == 1 for v in self.sqrt_values)

    def q_of_reflection(self, r: Affine) -> Laurent:
        i, _ = self.E.simple_conjugate(r)
        return self.q(i)

    def specialize(self, values: Mapping[str, Fraction]) -> "ParamFunction":
        """Evaluate some or all symbols (values are for q, not q^(1/2))."""
        names = tuple(n for n in self.ring.names if n not in values)
        ring = LaurentRing(names, half=True)
        return ParamFunction(self.E, [v.substitute(values, ring) for v in self.sqrt_values])

    def is_gamma_invariant(self, gamma: DiagramAutomorphism) -> bool:
        g = gamma.matrix
        ginv = lattice.int_inverse(g)
        for i, s in enumerate(self.E.S):
            W = self.E.W
            wm = lattice.mat_mul(lattice.mat_mul(g, W.matrices[s.w]), ginv)
            image = Affine(lattice.mat_vec(g, s.x), W.index[wm])
            j = self.E.simple_index(image)
            if j is None or self.sqrt_q(j) != self.sqrt_q(i):
                return False
        return True

    def to_R(self) -> dict:
        return convert_parameters(self, "R")

    def describe(self) -> dict:
        return {self.class_label(c): str(v * v) for c, v in enumerate(self.sqrt_values)}


def _reflection(E: ExtendedAffineWeyl, alpha) -> Affine:
    return Affine(E.zero, E.W.index[E.rd.reflection_matrix(alpha)])


def convert_parameters(p, direction: str, E: ExtendedAffineWeyl | None = None):
    """Convert between S-notation (:class:`ParamFunction`) and R-notation (dict).

    ``direction="R"`` takes a ParamFunction and returns ``{coroot: q value}``
    over R_nr^∨.  ``direction="S"`` takes such a dict (plus ``E``) and returns
    a ParamFunction.
    """
    if direction == "R":
        E = p.E
        rd = E.rd
        nr = nonreduced_roots(rd)
        out = {}
        for a in rd.roots:
            s_a = _reflection(E, a)
            ts_a = Affine(a, s_a.w)
            q_s = p.q_of_reflection(s_a)
            q_ts = p.q_of_reflection(ts_a)
            av = rd.coroot[a]
            if not nr.doubled[a]:
                if q_s != q_ts:
                    raise ParameterError(
                        f"q(s_α) ≠ q(t_α s_α) for α={a} with α^∨ ∉ 2Y"
                    )
                out[av] = q_s
            else:
                out[av] = q_ts
                out[tuple(x // 2 for x in av)] = q_s * q_ts.inverse()
        return out
    if direction == "S":
        if E is None:
            raise ValueError("converting to S-notation needs the extended affine Weyl group")
        rd = E.rd
        nr = nonreduced_roots(rd)
        qR = dict(p)
        _check_W_invariant(rd, nr, qR)
        values: list = [None] * len(E.S)
        for i, s in enumerate(E.S):
            if i < rd.semisimple_rank:
                a = rd.simple_roots[i]
                av = rd.coroot[a]
                if nr.doubled[a]:
                    values[i] = qR[tuple(x // 2 for x in av)] * qR[av]
                else:
                    values[i] = qR[av]
            else:
                values[i] = qR[rd.coroot[s.x]]
        classes = E.S_classes()
        sqrt_values = []
        for cls in classes:
            vals = {values[i] for i in cls}
            if len(vals) != 1:
                raise ParameterError("R-notation parameters are not constant on conjugacy classes")
            sqrt_values.append(values[cls[0]].sqrt())
        return ParamFunction(E, sqrt_values)
    raise ValueError(f"unknown direction {direction!r}")


def _check_W_invariant(rd: RootDatum, nr, qR: dict):
    for b in nr.nr_roots:
        bv = nr.coroot_nr(rd, b)
        if bv not in qR:
            raise ParameterError(f"missing parameter for coroot {bv}")
        for a in rd.simple_roots:
            img = rd.coreflect(a, bv) if bv in rd.coroot.values() else None
            if img is None:
                # half coroot: reflect the full coroot then halve
                full = tuple(2 * x for x in bv)
                img = tuple(x // 2 for x in rd.coreflect(a, full))
            if qR.get(img) != qR[bv]:
                raise ParameterError("R-notation parameters are not W-invariant")


def restrict_parameters(p: ParamFunction, pd: ParabolicData) -> tuple:
    """(q_P, q^P): restrict q to (R_P)_nr^∨ and re-express on S^aff of R_P and R^P."""
    qR = p.to_R()
    rd = p.E.rd
    upper = pd.datum_upper
    E_up = ExtendedAffineWeyl(upper)
    keep = {}
    coroots = set(pd.coroots)
    for av, val in qR.items():
        full = av if av in coroots else tuple(2 * x for x in av)
        if full in coroots:
            keep[av] = val
    q_upper = convert_parameters(keep, "S", E_up)
    E_P = ExtendedAffineWeyl(pd.datum_P)
    if pd.P:
        basis = pd.Y_P
        mapped = {}
        for av, val in keep.items():
            sol = lattice.solve_left(lattice.transpose(basis), [[x] for x in av])
            mapped[tuple(int(Fraction(s[0])) for s in sol)] = val
        q_lower = convert_parameters(mapped, "S", E_P)
    else:
        q_lower = ParamFunction(E_P, [])
    return q_lower, q_upper
