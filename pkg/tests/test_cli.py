"""Command-line behavior: verbs, exit codes, report shapes."""

import json

import pytest

from lieforge.cli import main
from lieforge.core import from_json_bytes, to_json_bytes


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def build_file(tmp_path, capsys, *argv):
    path = tmp_path / "alg.json"
    code, out, err = run(capsys, "build", *argv, "--out", str(path))
    assert code == 0, err
    return path


def test_build_writes_the_extension_and_reports_dimensions(tmp_path, capsys):
    path = build_file(tmp_path, capsys, "gn", "--n", "5", "--a", "1", "--b", "1")
    code, out, _ = run(capsys, "build", "gn", "--n", "5", "--a", "1", "--b", "1")
    assert code == 0
    assert "dim 41" in out
    assert "jacobi ok" in out
    alg = from_json_bytes(path.read_bytes())
    assert alg.dim == 41
    assert to_json_bytes(alg) == path.read_bytes()


def test_build_accepts_rational_flags(tmp_path, capsys):
    path = build_file(
        tmp_path, capsys, "gn", "--n", "5", "--a", "1/60", "--b", "1/60"
    )
    assert from_json_bytes(path.read_bytes()).dim == 41


def test_build_preset_by_name(tmp_path, capsys):
    path = build_file(tmp_path, capsys, "preset", "theorem_4_7", "--n", "6")
    assert from_json_bytes(path.read_bytes()).dim == 31


def test_build_preset_with_integer_list(tmp_path, capsys):
    path = build_file(
        tmp_path, capsys, "preset", "example_4_2a", "--m", "4", "--n", "5",
        "--r", "0,2",
    )
    assert from_json_bytes(path.read_bytes()).dim == 48


def test_build_quasicyclic_family(tmp_path, capsys):
    path = build_file(tmp_path, capsys, "slm", "--m", "3", "--n", "5")
    assert from_json_bytes(path.read_bytes()).dim == 112


def test_build_tower_from_sides(tmp_path, capsys):
    path = build_file(
        tmp_path, capsys, "tower", "--n", "5", "--a", "1", "--b", "1",
        "--sides", "r",
    )
    assert from_json_bytes(path.read_bytes()).dim == 79


@pytest.mark.parametrize(
    "argv",
    [
        ("build", "preset", "no_such_preset"),
        ("build", "gn", "--n", "5", "--a", "1"),
        ("build", "gn", "--n", "6", "--a", "1", "--b", "1"),
        ("build", "model"),
        ("build", "tower", "--n", "5", "--a", "1", "--b", "1"),
        ("build", "gn", "--n", "5", "--a", "1/0", "--b", "1"),
        ("build", "model", "extra_name", "--n", "5"),
    ],
)
def test_invalid_build_requests_exit_two(tmp_path, capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert "error:" in err


def test_check_derivations_on_a_tower(tmp_path, capsys):
    path = build_file(
        tmp_path, capsys, "tower", "--n", "5", "--a", "1", "--b", "1",
        "--sides", "r",
    )
    code, out, _ = run(capsys, "check", str(path), "--derivations")
    assert code == 0
    rep = json.loads(out)
    assert rep["derivations"]["dim_outer"] == 0
    assert rep["derivations"]["method"] == "exact"


def test_check_modular_toggle_is_recorded(tmp_path, capsys):
    path = build_file(
        tmp_path, capsys, "tower", "--n", "5", "--a", "1", "--b", "1",
        "--sides", "r",
    )
    code, out, _ = run(capsys, "check", str(path), "--derivations", "--modular")
    assert code == 0
    assert json.loads(out)["derivations"]["method"] == "modular"


def test_check_complete_on_the_complete_preset(tmp_path, capsys):
    path = build_file(tmp_path, capsys, "preset", "example_4_7")
    code, out, _ = run(capsys, "check", str(path), "--complete", "--perfect")
    assert code == 0
    rep = json.loads(out)
    assert rep["complete"] is True
    assert rep["perfect"] is False


def test_check_jacobi_lists_failures_on_a_corrupted_file(tmp_path, capsys):
    path = build_file(tmp_path, capsys, "gn", "--n", "5", "--a", "1", "--b", "1")
    obj = json.loads(path.read_bytes())
    obj["brackets"][-1][2][0][1] = "17/3"
    path.write_text(json.dumps(obj))
    code, out, _ = run(capsys, "check", str(path), "--jacobi")
    assert code == 1
    rep = json.loads(out)
    assert rep["jacobi"]["ok"] is False
    assert rep["jacobi"]["failures"]


def test_check_quasicyclic_field_round_trips(tmp_path, capsys):
    path = build_file(tmp_path, capsys, "model", "--n", "5")
    code, out, _ = run(capsys, "check", str(path), "--quasicyclic", "--center")
    assert code == 0
    rep = json.loads(out)
    assert rep["quasicyclic"] is None
    assert rep["center"] == 18


def test_check_expectations_gate_the_exit_code(tmp_path, capsys):
    path = build_file(tmp_path, capsys, "gn", "--n", "5", "--a", "1", "--b", "1")
    good = tmp_path / "good.json"
    good.write_text(json.dumps({"center": 1, "derivations": {"dim_outer": 0}}))
    code, _, _ = run(capsys, "check", str(path), "--center", "--derivations",
                     "--expect", str(good))
    assert code == 0
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"center": 3}))
    code, out, _ = run(capsys, "check", str(path), "--center", "--expect", str(bad))
    assert code == 1
    assert json.loads(out)["mismatches"]["center"]["actual"] == 1


def test_check_without_checks_is_invalid(tmp_path, capsys):
    path = build_file(tmp_path, capsys, "heisenberg", "--n", "1")
    code, _, err = run(capsys, "check", str(path))
    assert code == 2
    code, _, err = run(capsys, "check", str(path), "--center", "--exact", "--modular")
    assert code == 2


def test_check_unreadable_file_is_invalid(tmp_path, capsys):
    code, _, _ = run(capsys, "check", str(tmp_path / "missing.json"), "--center")
    assert code == 2
    garbled = tmp_path / "garbled.json"
    garbled.write_text("{not json")
    code, _, _ = run(capsys, "check", str(garbled), "--center")
    assert code == 2


def test_cohomology_invariant_degree_two(tmp_path, capsys):
    path = build_file(tmp_path, capsys, "gn", "--n", "5", "--a", "1", "--b", "1")
    code, out, _ = run(capsys, "cohomology", str(path), "--degree", "2")
    assert code == 0
    rep = json.loads(out)
    assert rep["dim_cohomology"] == 2
    assert rep["method"] == "invariant"


def test_cohomology_both_methods_assert_agreement(tmp_path, capsys):
    path = build_file(tmp_path, capsys, "heisenberg", "--n", "2")
    code, out, _ = run(capsys, "cohomology", str(path), "--degree", "2",
                       "--method", "both")
    assert code == 0
    rep = json.loads(out)
    assert rep["agreement"] is True
    assert rep["full"]["dim_cohomology"] == rep["invariant"]["dim_cohomology"] == 0


def test_cohomology_full_guard_surfaces_as_invalid_input(tmp_path, capsys):
    path = build_file(tmp_path, capsys, "gn", "--n", "5", "--a", "1", "--b", "1")
    code, _, err = run(capsys, "cohomology", str(path), "--degree", "2",
                       "--method", "full")
    assert code == 2
    assert "LIEFORGE_MAX_FULL_COCHAIN" in err


def test_cohomology_degree_is_validated(tmp_path, capsys):
    path = build_file(tmp_path, capsys, "heisenberg", "--n", "1")
    code, _, _ = run(capsys, "cohomology", str(path), "--degree", "5")
    assert code == 2


def test_decompose_reports_module_multiplicities(tmp_path, capsys):
    path = build_file(tmp_path, capsys, "gn", "--n", "5", "--a", "1", "--b", "1")
    code, out, _ = run(capsys, "decompose", str(path))
    assert code == 0
    rep = json.loads(out)
    assert rep["levi"] == "sl2"
    assert rep["nilradical"] == {"0": 1, "1": 2, "2": 1, "3": 2, "4": 2, "5": 2}
    assert rep["adjoint"]["2"] == 2


def test_decompose_heisenberg_extension(tmp_path, capsys):
    path = build_file(tmp_path, capsys, "heisenberg", "--n", "2")
    code, out, _ = run(capsys, "decompose", str(path))
    assert code == 0
    assert json.loads(out)["nilradical"] == {"3": 1, "0": 1}


def test_decompose_bare_semisimple_algebra(tmp_path, capsys):
    from lieforge.families import slm_algebra

    path = tmp_path / "sl2.json"
    path.write_bytes(to_json_bytes(slm_algebra(2)))
    code, out, _ = run(capsys, "decompose", str(path))
    assert code == 0
    rep = json.loads(out)
    assert rep["adjoint"] == {"2": 1}
    assert rep["nilradical"] == {}


def test_decompose_requires_a_levi_part(tmp_path, capsys):
    path = build_file(tmp_path, capsys, "model", "--n", "5")
    code, _, err = run(capsys, "decompose", str(path))
    assert code == 2
    path = build_file(tmp_path, capsys, "slm", "--m", "3", "--n", "5")
    code, _, err = run(capsys, "decompose", str(path))
    assert code == 2


def test_table_report_verifies_every_cell(capsys):
    code, out, _ = run(capsys, "report-table1")
    assert code == 0
    assert "Does not exist" in out
    assert out.count("pass") == 4
    assert "FAIL" not in out


def test_output_files_match_stdout(tmp_path, capsys):
    path = build_file(tmp_path, capsys, "heisenberg", "--n", "1")
    dest = tmp_path / "report.json"
    code, out, _ = run(capsys, "check", str(path), "--center", "--out", str(dest))
    assert code == 0
    assert out == ""
    assert json.loads(dest.read_text()) == {"center": 1}
