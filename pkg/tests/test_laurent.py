from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from affhecke.laurent import Laurent, LaurentRing

R = LaurentRing(("a", "b"), half=True)


@st.composite
def laurents(draw):
    terms = draw(st.dictionaries(st.tuples(st.integers(-2, 2), st.integers(-2, 2)),
                                 st.fractions(min_value=-4, max_value=4, max_denominator=3), max_size=4))
    out = R.zero()
    for e, c in terms.items():
        out = out + R.monomial(e, c)
    return out


@given(laurents(), laurents(), laurents())
def test_ring_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert x + y == y + x
    assert x - x == R.zero() and (x - x).is_zero()
    assert x * R.one() == x


@given(laurents(), laurents())
def test_evaluation_is_a_ring_homomorphism(x, y):
    vals = {"a": 4, "b": Fraction(9, 4)}
    assert (x * y).evaluate(vals) == x.evaluate(vals) * y.evaluate(vals)
    assert (x + y).evaluate(vals) == x.evaluate(vals) + y.evaluate(vals)


@given(laurents())
def test_no_zero_terms_stored(x):
    assert all(c != 0 for c in (x * x - x * x + x).terms.values())


@given(laurents())
def test_json_round_trip(x):
    assert Laurent.from_json(R, x.to_json()) == x


def test_units_and_square_roots():
    a = R.gen("a")
    assert a * a.inverse() == 1
    assert (a * a * 4).sqrt() == a * 2
    with pytest.raises(ZeroDivisionError):
        (a + 1).inverse()
    with pytest.raises(ValueError):
        a.sqrt()
    # q^(1/2) evaluated at q = 4
    assert a.evaluate({"a": 4, "b": 1}) == 2


def test_mixing_rings_is_an_error():
    with pytest.raises(ValueError):
        LaurentRing(("x",)).coerce(R.gen("a"))
    with pytest.raises(ValueError):
        LaurentRing(("x", "x"))
