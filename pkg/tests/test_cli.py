from __future__ import annotations

import json

import pytest

from diassocle import FIXTURES_DIR
from diassocle.cli import EXIT_FAILED, EXIT_INPUT, EXIT_OK, main, parse_args, run

BAD_OPERATOR = {
    "kind": "ravg",
    "name": "P = [[1, 0], [1, 0]]",
    "field": "rationals",
    "spaces": {"A": {"dim": 2}, "M": {"dim": 2}},
    "structures": {
        "mu": [[[1, 0], [0, 1]], [[0, 1], [0, 0]]],
        "left": [[[1, 0], [0, 1]], [[0, 1], [0, 0]]],
        "right": [[[1, 0], [0, 1]], [[0, 1], [0, 0]]],
    },
    "operators": {"P": [[1, 0], [1, 0]]},
}


@pytest.fixture
def bad_operator(tmp_path) -> str:
    path = tmp_path / "bad_operator.json"
    path.write_text(json.dumps(BAD_OPERATOR), encoding="utf-8")
    return str(path)


def run_json(argv, capsys) -> tuple:
    code = run(argv + ["--format", "json"])
    return code, json.loads(capsys.readouterr().out)


def test_parse_defaults() -> None:
    args = parse_args(["cohomology", "kx2_adjoint.json", "--complex", "ravg"])
    assert args.nmax == 3
    assert args.K == 3
    assert args.jobs == 1
    assert args.format == "text"
    assert args.log_level == "WARNING"


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["cohomology", "kx2_adjoint.json"],
        ["cohomology", "kx2_adjoint.json", "--complex", "ravg", "--nmax", "-1"],
        ["extension", "kx2_adjoint.json", "--cocycle", "kx2_cocycle.json", "--section", "s.json"],
        ["homotopy", "kx2_adjoint.json", "--check", "jacobi"],
    ],
)
def test_usage_errors_exit_2(argv) -> None:
    with pytest.raises(SystemExit) as excinfo:
        parse_args(argv)
    assert excinfo.value.code == 2


def test_verify_valid_fixture(capsys) -> None:
    assert run(["verify", "kx2_adjoint.json"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("verify: ok\n")
    assert "valid" in out


def test_verify_invalid_fixture(bad_operator, capsys) -> None:
    assert run(["verify", bad_operator]) == EXIT_FAILED
    out = capsys.readouterr().out
    assert out.startswith("verify: FAILED\n")
    assert "(u0, v0)" in out


def test_verify_sweeps_agree(capsys) -> None:
    code, data = run_json(["verify", "kx2_adjoint.json", "--samples", "6", "--seed", "11"], capsys)
    assert code == EXIT_OK
    assert len(data["candidates"]) == 6
    assert all(row["agree"] for row in data["candidates"])


def test_verify_diass_sweep(capsys) -> None:
    code, data = run_json(["verify", "diass_functional.json", "--samples", "4"], capsys)
    assert code == EXIT_OK
    assert data["fixture"]["kind"] == "diass"
    assert len(data["candidates"]) == 4


def test_text_output_is_deterministic(capsys) -> None:
    run(["cohomology", "kx2_adjoint.json", "--complex", "operator", "--nmax", "2"])
    first = capsys.readouterr().out
    run(["cohomology", "kx2_adjoint.json", "--complex", "operator", "--nmax", "2"])
    assert capsys.readouterr().out == first
    assert "[betti]" in first
    assert "[euler]" in first


def test_malformed_fixture_exits_2(tmp_path, capsys) -> None:
    path = tmp_path / "broken.json"
    path.write_text('{"kind": "ravg",', encoding="utf-8")
    assert run(["verify", str(path)]) == EXIT_INPUT
    assert capsys.readouterr().out == ""


def test_missing_file_exits_2(tmp_path) -> None:
    assert run(["verify", str(tmp_path / "absent.json")]) == EXIT_INPUT


def test_main_raises_system_exit(capsys) -> None:
    with pytest.raises(SystemExit) as excinfo:
        main(["fixtures"])
    assert excinfo.value.code == EXIT_OK
    assert "fixtures in fixtures" in capsys.readouterr().out


def test_mm_self_bracket_vanishes(capsys) -> None:
    code, data = run_json(["bracket", "diass_functional.json", "--op", "mm"], capsys)
    assert code == EXIT_OK
    assert data["maurer_cartan"] is True
    assert data["bracket"]["zero"] is True


def test_derived_self_bracket(bad_operator, capsys) -> None:
    assert run(["bracket", "kx2_adjoint.json", "--op", "derived"]) == EXIT_OK
    assert "⟦P,P⟧ vanishes" in capsys.readouterr().out
    assert run(["bracket", bad_operator, "--op", "derived"]) == EXIT_FAILED


def test_bracket_of_two_operators(bad_operator, capsys) -> None:
    code, data = run_json(["bracket", "kx2_adjoint.json", "--op", "derived", "--inputs", "P", bad_operator], capsys)
    assert code == EXIT_OK
    assert "maurer_cartan" not in data
    assert data["bracket"]["arity"] == 2


def test_bracket_needs_two_inputs() -> None:
    assert run(["bracket", "kx2_adjoint.json", "--op", "derived", "--inputs", "P", "P", "P"]) == EXIT_INPUT


def test_cohomology_json(capsys) -> None:
    code, data = run_json(["cohomology", "kx2_adjoint.json", "--complex", "ravg", "--nmax", "2"], capsys)
    assert code == EXIT_OK
    assert data["complex"] == "ravg"
    assert [row["dim_C"] for row in data["betti"]] == [0, 8, 28]
    assert data["euler"][0]["consistent"] is True


def test_cohomology_with_coefficients(capsys) -> None:
    code, data = run_json(
        ["cohomology", "kx2_adjoint.json", "--complex", "ravg", "--nmax", "1", "--coeffs", "kx2_adjoint_coeffs.json"], capsys
    )
    assert code == EXIT_OK
    assert [row["dim_C"] for row in data["betti"]] == [0, 8]


def test_cohomology_of_diass_fixture(capsys) -> None:
    code, data = run_json(["cohomology", "diass_functional.json", "--complex", "diass", "--nmax", "1"], capsys)
    assert code == EXIT_OK
    assert data["betti"][0]["dim_H"] == 2
    assert run(["cohomology", "diass_functional.json", "--complex", "ravg"]) == EXIT_INPUT


def test_cohomology_of_invalid_structure(bad_operator, capsys) -> None:
    assert run(["cohomology", bad_operator, "--complex", "ravg", "--nmax", "1"]) == EXIT_FAILED
    assert "does not verify" in capsys.readouterr().out


def test_avg_complex_rejects_relative_structure() -> None:
    assert run(["cohomology", "a_plus_a_sum.json", "--complex", "avg", "--nmax", "1"]) == EXIT_INPUT


def test_les(capsys) -> None:
    assert run(["les", "kx2_adjoint.json", "--nmax", "2"]) == EXIT_OK
    assert "exact at 6 nodes" in capsys.readouterr().out


def test_deform_with_equivalence(capsys) -> None:
    code, data = run_json(
        ["deform", "kx2_adjoint.json", "--jet", "kx2_scale_jet.json", "--equiv", "kx2_scale_equivalence.json"], capsys
    )
    assert code == EXIT_OK
    assert data["order"] == 1
    assert data["trivial"] is True
    assert data["cocycle"]["kind"] == "cocycle"
    assert len(data["reports"]) == 3


def test_deform_on_other_algebra() -> None:
    assert run(["deform", "zero_product_2dim.json", "--jet", "kx2_scale_jet.json"]) == EXIT_INPUT


def test_extension_round_trip(tmp_path, capsys) -> None:
    code, data = run_json(["extension", "kx2_adjoint.json", "--cocycle", "kx2_cocycle.json"], capsys)
    assert code == EXIT_OK
    document = data["extension"]
    document["base"] = str(FIXTURES_DIR / "kx2_adjoint.json")
    path = tmp_path / "extension.json"
    path.write_text(json.dumps(document), encoding="utf-8")

    code, data = run_json(["extension", "kx2_adjoint.json", "--extract", str(path)], capsys)
    assert code == EXIT_OK
    gamma = data["cocycle"]["components"]["gamma"]
    assert sorted(entry["inputs"] for entry in gamma) == [["u0"], ["u1"]]
    assert data["cocycle"]["components"]["f"] == []


@pytest.mark.parametrize("check", ["ainf", "diassinf", "mc", "twist"])
def test_homotopy_ungraded(check) -> None:
    assert run(["homotopy", "kx2_adjoint.json", "--check", check]) == EXIT_OK


@pytest.mark.parametrize("check", ["ainf", "diassinf", "mc", "twist"])
def test_homotopy_graded(check) -> None:
    assert run(["homotopy", "ainf_graded.json", "--check", check]) == EXIT_OK


def test_homotopy_mc_fails_for_bad_operator(bad_operator, capsys) -> None:
    code, data = run_json(["homotopy", bad_operator, "--check", "mc"], capsys)
    assert code == EXIT_FAILED
    assert data["maurer_cartan"] is False
    assert data["agree"] is True


def test_homotopy_diass_fixture() -> None:
    assert run(["homotopy", "diass_functional.json", "--check", "diassinf"]) == EXIT_OK
    assert run(["homotopy", "diass_functional.json", "--check", "mc"]) == EXIT_INPUT


def test_fixtures_directory_with_invalid_entry(tmp_path, capsys) -> None:
    (tmp_path / "bad.json").write_text(json.dumps(BAD_OPERATOR), encoding="utf-8")
    code, data = run_json(["fixtures", "--directory", str(tmp_path)], capsys)
    assert code == EXIT_FAILED
    assert data["fixtures"][0]["valid"] is False
