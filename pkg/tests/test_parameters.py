from fractions import Fraction

import pytest

from conftest import rd

from affhecke.parameters import ParameterError, ParamFunction, convert_parameters, restrict_parameters
from affhecke.root_datum import parabolic_data
from affhecke.weyl import ExtendedAffineWeyl


def E(spec, lat="adjoint"):
    return ExtendedAffineWeyl(rd(spec, lat))


def test_a1_adjoint_two_parameters():
    e = E("A1")
    p = ParamFunction.from_spec(e, {"s1": "a", "a1": "b"})
    a, b = (p.ring.gen(n) ** 2 for n in ("a", "b"))
    qR = convert_parameters(p, "R")
    assert qR[(2,)] == b and qR[(-2,)] == b
    assert qR[(1,)] == a * b.inverse()


def test_equal_parameters_a2():
    e = E("A2")
    p = ParamFunction.from_spec(e, "q")
    q = p.ring.gen("q") ** 2
    assert all(v == q for v in convert_parameters(p, "R").values())


def test_trivial_parameters():
    e = E("B2")
    p = ParamFunction.from_spec(e, 1)
    assert p.is_trivial()
    assert all(v == 1 for v in convert_parameters(p, "R").values())


@pytest.mark.parametrize("spec,lat", [("A1", "adjoint"), ("A1", "sc"), ("A2", "adjoint"), ("B2", "adjoint"),
                                      ("B2", "sc"), ("C2", "adjoint"), ("G2", "adjoint")])
def test_round_trip(spec, lat):
    e = E(spec, lat)
    p = ParamFunction.from_spec(e)
    back = convert_parameters(convert_parameters(p, "R"), "S", e)
    assert back.sqrt_values == p.sqrt_values
    # one default symbol per conjugacy class of S^aff
    assert len(p.ring.names) == len(e.S_classes())


def test_conjugate_labels_must_agree():
    e = E("A2")
    with pytest.raises(ParameterError, match="conjugate"):
        ParamFunction.from_spec(e, {"s1": "a", "s2": "b"})


def test_bad_inputs():
    e = E("A1")
    with pytest.raises(ParameterError, match="unknown"):
        ParamFunction.from_spec(e, {"s7": "a"})
    with pytest.raises(ParameterError):
        ParamFunction.from_spec(e, {"s1": -1})
    with pytest.raises(ParameterError):
        ParamFunction.from_spec(e, {"s1": "2"})


def test_rational_parameters_and_specialisation():
    e = E("A1")
    p = ParamFunction.from_spec(e, {"s1": "9/4", "a1": "b"})
    assert p.sqrt_q(0) == Fraction(3, 2)
    s = p.specialize({"b": 4})
    assert s.sqrt_q(1) == 2 and not s.ring.names


def test_q_of_non_simple_reflections():
    e = E("B2")
    p = ParamFunction.from_spec(e)
    r = rd("B2")
    for a in r.roots:
        s_a = next(i for i in range(len(e.W)) if e.W.matrices[i] == r.reflection_matrix(a))
        i, g = e.simple_conjugate(type(e.identity)(e.zero, s_a))
        assert e.mul(e.mul(g, type(e.identity)(e.zero, s_a)), e.inv(g)) == e.S[i]


def test_restriction_to_parabolic():
    e = E("B2")
    p = ParamFunction.from_spec(e)
    assert p.describe() == {"s1": "q_s1", "s2": "q_s2", "a1": "q_a1"}
    qP, qU = restrict_parameters(p, parabolic_data(rd("B2"), [0]))
    assert qP.describe() == qU.describe() == {"s1/a1": "q_s1"}
    # the short simple root of B2 adjoint keeps two parameters
    qP, qU = restrict_parameters(p, parabolic_data(rd("B2"), [1]))
    assert qP.describe() == qU.describe() == {"s1": "q_s2", "a1": "q_a1"}
