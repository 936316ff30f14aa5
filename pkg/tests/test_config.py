import os

import pytest

from conftest import DATUMS, datum_path

from affhecke.config import ConfigError, load_datum, parse_datum


@pytest.mark.parametrize("name", sorted(f for f in os.listdir(DATUMS) if f.endswith(".yaml") and not f.startswith("bad_")))
def test_datum_files_load(name):
    c = load_datum(datum_path(name))
    assert c.rd.rank >= 0
    assert c.source or c.label


def test_inline_specs():
    assert load_datum("A2").rd.type_label.startswith("A2")
    sc = load_datum("B2:sc")
    assert sc.rd.semisimple_rank == 2
    assert not sc.gammas


def test_error_names_the_line():
    with pytest.raises(ConfigError, match=":2:"):
        load_datum(datum_path("bad_empty_type.yaml"))


def test_missing_file():
    with pytest.raises(ConfigError, match="no such file"):
        load_datum(datum_path("nope.yaml"))


def test_unknown_and_missing_fields():
    with pytest.raises(ConfigError, match="unknown field 'typ'"):
        parse_datum({"typ": "A1"})
    with pytest.raises(ConfigError, match="missing field 'type'"):
        parse_datum({"lattice": "adjoint"})
    with pytest.raises(ConfigError, match="mapping"):
        parse_datum(["A1"])


@pytest.mark.parametrize("sym", ["s", "u", "the"])
def test_reserved_parameter_symbols(sym):
    with pytest.raises(ConfigError, match="reserved"):
        parse_datum({"type": "A1", "parameters": {"s1": sym, "a1": "b"}})
    with pytest.raises(ConfigError, match="reserved"):
        parse_datum({"type": "A1", "k": sym})


def test_gamma_forms():
    assert len(parse_datum({"type": "A2", "gamma": "all"}).gammas) == 1
    assert len(parse_datum({"type": "A2", "gamma": [[1, 0]]}).gammas) == 1
    assert parse_datum({"type": "A2", "gamma": "none"}).gammas == ()
    with pytest.raises(ConfigError, match="not a diagram automorphism"):
        parse_datum({"type": "B2", "gamma": [[1, 0]]})
    with pytest.raises(ConfigError, match="gamma"):
        parse_datum({"type": "A2", "gamma": 3})


def test_float_parameter_rejected():
    with pytest.raises(ConfigError, match="exact rational"):
        parse_datum({"type": "A1", "parameters": 0.5})


def test_integer_lattice_required():
    with pytest.raises(ConfigError, match="integer"):
        parse_datum({"type": "A1", "lattice": [[0.5]]})


def test_label():
    assert load_datum(datum_path("a2_swap.yaml")).label.startswith("A2")
    assert parse_datum({"type": "A1", "name": "sl2 dual"}).label == "sl2 dual"
    assert load_datum("A1").describe() == {"type": "A1", "lattice": "adjoint", "gamma": []}


def test_symbolic_parameters_from_file():
    H = load_datum(datum_path("a1_adjoint.yaml")).hecke_algebra()
    assert set(H.ring.names) == {"a", "b"}
