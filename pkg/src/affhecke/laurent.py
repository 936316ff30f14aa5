"""
Sparse multivariate Laurent polynomials with exact rational coefficients.

A :class:`LaurentRing` fixes the variable names.  When ``half=True`` the
variables stand for square roots (``q^(1/2)``) and exponents count halves,
which is how Hecke algebra structure constants are stored.

>>> R = LaurentRing(("q",), half=True)
>>> v = R.gen("q")
>>> str(v - v.inverse())
'q^(1/2) - q^(-1/2)'
>>> (v * v).evaluate({"q": 4})
Fraction(4, 1)
"""

from __future__ import annotations

from fractions import Fraction
from operator import add
from typing import Iterable, Mapping, Union

__all__ = ["LaurentRing", "Laurent", "normalize_number"]

Number = Union[int, Fraction]


def normalize_number(c) -> Number:
    t = type(c)
    if t is int:
        return c
    if t is Fraction:
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, bool):
        return int(c)
    if isinstance(c, int):
        return int(c)
    return normalize_number(Fraction(c))


class LaurentRing:
    """The ring Q[x_1^{±1}, ..., x_m^{±1}] with named generators."""

    __slots__ = ("names", "half", "_zero_exp", "_index")

    def __init__(self, names: Iterable[str] = (), half: bool = False):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names {self.names}")
        self.half = half
        self._zero_exp = (0,) * len(self.names)
        self._index = {n: i for i, n in enumerate(self.names)}

    def __eq__(self, other):
        return (
            isinstance(other, LaurentRing)
            and self.names == other.names
            and self.half == other.half
        )

    def __hash__(self):
        return hash((self.names, self.half))

    def __repr__(self):
        return f"LaurentRing({self.names!r}, half={self.half})"

    @property
    def ngens(self) -> int:
        return len(self.names)

    def zero(self) -> "Laurent":
        return Laurent(self, {})

    def one(self) -> "Laurent":
        return Laurent(self, {self._zero_exp: 1})

    def const(self, c) -> "Laurent":
        c = normalize_number(c)
        return Laurent(self, {self._zero_exp: c} if c else {})

    def monomial(self, exps: Iterable[int], c=1) -> "Laurent":
        exps = tuple(exps)
        if len(exps) != self.ngens:
            raise ValueError("exponent vector has wrong length")
        c = normalize_number(c)
        return Laurent(self, {exps: c} if c else {})

    def gen(self, name: str) -> "Laurent":
        e = [0] * self.ngens
        e[self._index[name]] = 1
        return self.monomial(e)

    def index(self, name: str) -> int:
        return self._index[name]

    def coerce(self, x) -> "Laurent":
        if isinstance(x, Laurent):
            if x.ring != self:
                raise ValueError(f"cannot mix {x.ring} and {self}")
            return x
        return self.const(x)


class Laurent:
    """An element of a :class:`LaurentRing`; treated as immutable."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: LaurentRing, terms: Mapping[tuple, Number]):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- predicates -----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return not self.terms or (
            len(self.terms) == 1 and self.ring._zero_exp in self.terms
        )

    def constant_value(self) -> Number:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms.get(self.ring._zero_exp, 0)

    def variables(self) -> set[str]:
        used = set()
        for e in self.terms:
            for name, k in zip(self.ring.names, e):
                if k:
                    used.add(name)
        return used

    # -- arithmetic -----------------------------------------------------
    def _other(self, other) -> "Laurent":
        if type(other) is Laurent:
            if other.ring is self.ring:
                return other
            if other.ring != self.ring:
                raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._other(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = normalize_number(v)
            else:
                out.pop(e, None)
        return Laurent(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Laurent(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._other(other))

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        if type(other) is not Laurent:
            c = normalize_number(other)
            if not c:
                return self.ring.zero()
            if c == 1:
                return self
            return Laurent(
                self.ring,
                {e: normalize_number(v * c) for e, v in self.terms.items()},
            )
        other = self._other(other)
        a, b = self.terms, other.terms
        if not a or not b:
            return self.ring.zero()
        if len(a) == 1 and len(b) > 1:
            a, b = b, a
        if len(b) == 1:
            # fast path for monomial multipliers
            (eb, cb), = b.items()
            if eb == self.ring._zero_exp:
                if cb == 1:
                    return Laurent(self.ring, a) if a is not self.terms else self
                return Laurent(self.ring, {ea: normalize_number(ca * cb) for ea, ca in a.items()})
            return Laurent(
                self.ring,
                {tuple(map(add, ea, eb)): normalize_number(ca * cb) for ea, ca in a.items()},
            )
        out: dict = {}
        get = out.get
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(map(add, ea, eb))
                out[e] = get(e, 0) + ca * cb
        return Laurent(self.ring, {e: normalize_number(v) for e, v in out.items() if v})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "Laurent":
        """Inverse of a unit (a monomial with nonzero coefficient)."""
        if len(self.terms) != 1:
            raise ZeroDivisionError(f"{self} is not a unit in the Laurent ring")
        (e, c), = self.terms.items()
        return Laurent(
            self.ring, {tuple(-x for x in e): normalize_number(Fraction(1) / c)}
        )

    def __truediv__(self, other):
        if isinstance(other, Laurent):
            return self * other.inverse()
        return self * (Fraction(1) / other)

    def sqrt(self) -> "Laurent":
        """Square root of a monomial with even exponents and square coefficient."""
        if len(self.terms) != 1:
            raise ValueError(f"{self} is not a monomial")
        (e, c), = self.terms.items()
        if any(x % 2 for x in e):
            raise ValueError(f"{self} has odd exponents")
        c = Fraction(c)
        if c <= 0:
            raise ValueError(f"{self} has non-positive coefficient")
        num = _isqrt_exact(c.numerator)
        den = _isqrt_exact(c.denominator)
        if num is None or den is None:
            raise ValueError(f"coefficient {c} is not a rational square")
        return Laurent(self.ring, {tuple(x // 2 for x in e): normalize_number(Fraction(num, den))})

    # -- comparison / hashing -------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Laurent):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            if not other:
                return not self.terms
            return self.terms == {self.ring._zero_exp: other}
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- evaluation -----------------------------------------------------
    def evaluate(self, values: Mapping[str, Number]) -> Number:
        """Substitute rational values for every variable.

        With ``half=True`` the value given is for the underlying parameter,
        so ``values={"q": 4}`` evaluates ``q^(1/2)`` to 2.
        """
        roots = []
        for name in self.ring.names:
            v = Fraction(values[name])
            if self.ring.half:
                num, den = _isqrt_exact(v.numerator), _isqrt_exact(v.denominator)
                if v <= 0 or num is None or den is None:
                    raise ValueError(f"{name}={v} has no rational square root")
                v = Fraction(num, den)
            roots.append(v)
        total = Fraction(0)
        for e, c in self.terms.items():
            term = Fraction(c)
            for r, k in zip(roots, e):
                term *= r**k
            total += term
        return normalize_number(total)

    def substitute(self, values: Mapping[str, Number], ring: LaurentRing) -> "Laurent":
        """Evaluate the named variables and re-express the rest in ``ring``."""
        keep = [(i, ring.index(n)) for i, n in enumerate(self.ring.names) if n not in values]
        out = ring.zero()
        for e, c in self.terms.items():
            coeff = Fraction(c)
            for name, k in zip(self.ring.names, e):
                if name in values and k:
                    v = Fraction(values[name])
                    if self.ring.half:
                        v = Fraction(_isqrt_exact(v.numerator), _isqrt_exact(v.denominator))
                    coeff *= v**k
            new_e = [0] * ring.ngens
            for i, j in keep:
                new_e[j] = e[i]
            out = out + ring.monomial(new_e, coeff)
        return out

    # -- printing / serialization ----------------------------------------
    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: tuple(-x for x in t[0]))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = []
            for name, k in zip(self.ring.names, e):
                if not k:
                    continue
                if self.ring.half:
                    f = Fraction(k, 2)
                    mono.append(f"{name}" if f == 1 else f"{name}^({f})")
                else:
                    mono.append(name if k == 1 else f"{name}^{k}")
            coeff = Fraction(c)
            if not mono:
                body = str(coeff)
            elif coeff == 1:
                body = "*".join(mono)
            elif coeff == -1:
                body = "-" + "*".join(mono)
            else:
                body = f"{coeff}*" + "*".join(mono)
            parts.append(body)
        s = parts[0]
        for p in parts[1:]:
            s += " - " + p[1:] if p.startswith("-") else " + " + p
        return s

    def __repr__(self):
        return f"Laurent({self})"

    def to_json(self) -> list:
        """Canonical form: sorted list of ``[exponents, "p/q"]`` pairs."""
        return [[list(e), str(Fraction(c))] for e, c in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, ring: LaurentRing, data) -> "Laurent":
        return Laurent(ring, {tuple(e): normalize_number(Fraction(c)) for e, c in data})


def _isqrt_exact(n: int):
    import math

    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None
