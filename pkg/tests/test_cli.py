import json

import pytest

from conftest import datum_path

from affhecke.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


def test_describe_a1(capsys):
    code, d = run_json(capsys, "describe", "--datum", "A1")
    assert code == 0
    assert d["schema_version"] == 1
    assert (d["n_roots"], d["n_roots_nr"], d["weyl_order"], d["omega_order"]) == (2, 4, 2, 1)
    assert d["simple_affine_reflections"] == ["s1", "a1"]


def test_describe_a2_and_gl2(capsys):
    _, d = run_json(capsys, "describe", "--datum", "A2")
    assert d["weyl_order"] == 6 and len(d["simple_affine_reflections"]) == 3
    assert d["gamma_candidates"] == [[0, 1], [1, 0]]
    _, d = run_json(capsys, "describe", "--datum", datum_path("gl2.yaml"))
    assert d["omega_order"] == "infinite"


def test_describe_symbolic_file(capsys):
    _, d = run_json(capsys, "describe", "--datum", datum_path("a1_adjoint.yaml"))
    assert d["parameter_classes"] == {"s1": "a", "a1": "b"}
    assert d["parameters_R"]["[2]"] == "b"


def test_xq(capsys):
    _, d = run_json(capsys, "xq", "--datum", "A1")
    assert d["total_components"] == 3
    _, d = run_json(capsys, "xq", "--datum", datum_path("rank0.yaml"))
    assert d["n_strata"] == 1 and d["total_components"] == 1
    _, d = run_json(capsys, "xq", "--datum", datum_path("a2_swap.yaml"))
    assert d["n_strata"] == 6 and d["total_components"] == 8


def test_hp(capsys):
    code, d = run_json(capsys, "hp", "--datum", "A1", "--verify")
    assert code == 0
    assert (d["even"], d["odd"]) == (3, 0) and d["verification"] == "match"
    _, d = run_json(capsys, "hp", "--datum", "A1", "--flavor", "graded")
    assert (d["even"], d["odd"]) == (2, 0)


def test_hh_verify_table(capsys):
    code, out, _ = run(capsys, "hh", "--datum", "A2", "--max-degree", "3", "--verify")
    assert code == 0
    assert "oracle: match" in out
    assert "HP affine: (5, 1)" in out


@pytest.mark.parametrize("suite", ["hecke", "graded", "xq", "reps", "homology", "all"])
def test_verify_a1(capsys, suite):
    code, out, _ = run(capsys, "verify", "--datum", "A1", "--suite", suite, "--triples", "10",
                       "--max-degree", "3")
    assert code == 0, out
    assert out.strip().endswith("all checks passed")


def test_verify_reps_b2_reports_artin_gap(capsys):
    # the B2 Artin gap is genuine: verify says so and exits 1
    code, out, _ = run(capsys, "verify", "--datum", "B2", "--suite", "reps")
    assert code == 1
    assert "some checks FAILED" in out


def test_reps(capsys):
    code, d = run_json(capsys, "reps", "--datum", "A1", "--point", "1/2")
    assert code == 0 and d["ok"] and len(d["points"]) == 1
    code, d = run_json(capsys, "reps", "--datum", "A1", "--exponent", "2", "--verify")
    assert code == 0 and len(d["points"]) == 2
    code, out, _ = run(capsys, "reps", "--datum", "A2", "--exponent", "2")
    assert code == 0 and "Artin rank" in out


def test_bad_datum_exit_2(capsys):
    code, _, err = run(capsys, "describe", "--datum", datum_path("bad_empty_type.yaml"))
    assert code == 2 and ":2:" in err
    code, _, err = run(capsys, "xq", "--datum", "Q7")
    assert code == 2 and err.startswith("error:")


def test_bad_flag_value():
    with pytest.raises(SystemExit) as exc:
        main(["hh", "--datum", "A1", "--max-degree", "-1"])
    assert exc.value.code == 2


def test_json_deterministic(capsys):
    argv = ("hh", "--datum", datum_path("a2_swap.yaml"), "--max-degree", "3", "--format", "json")
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b
    assert json.loads(a)["schema_version"] == 1


def test_output_file(capsys, tmp_path):
    path = tmp_path / "xq.json"
    code, out, _ = run(capsys, "xq", "--datum", "A1", "--format", "json", "--output", str(path))
    assert code == 0 and out == ""
    assert json.loads(path.read_text())["total_components"] == 3


def test_table_formats(capsys):
    _, out, _ = run(capsys, "describe", "--datum", "B2")
    assert "weyl_order: 8" in out and "S^aff: s1 s2 a1" in out
    _, out, _ = run(capsys, "xq", "--datum", "A1")
    assert "total components: 3" in out
