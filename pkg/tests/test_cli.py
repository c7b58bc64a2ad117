"""Command-line interface: subcommands, exit codes, and output formats."""

from __future__ import annotations

import json

import pytest

from awarekit.cli import main
from awarekit.fixtures import fixture_path, proof_path
from awarekit.modelio import load_model, model_to_data
from awarekit.reports import Report

FIG1L = str(fixture_path("fig1L.model"))
FIG1R = str(fixture_path("fig1R.model"))


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_validate_fixture(capsys):
    code, out, _ = run(capsys, "validate", FIG1L)
    assert code == 0
    assert "PASS" in out


def test_validate_data_format_round_trips(capsys):
    code, out, _ = run(capsys, "validate", FIG1L, "--format", "data")
    assert code == 0
    report = Report.from_data(json.loads(out))
    assert report.ok and report.checked > 0


def test_validate_detects_violations(tmp_path, capsys):
    data = model_to_data(load_model(FIG1L))
    data["pi"]["1"]["q:q"] = ["q:q"]
    bad = tmp_path / "bad.model"
    bad.write_text(json.dumps(data))
    code, out, _ = run(capsys, "validate", str(bad))
    assert code == 1
    assert "projections-preserve-ignorance" in out


def test_check_single_state(capsys):
    code, out, _ = run(capsys, "check", FIG1L, "--formula", "a_1 q",
                       "--state", "pq:pq")
    assert code == 0
    assert out.strip() == "False"


def test_check_canonical_space_key(capsys):
    code, out, _ = run(capsys, "check", FIG1R, "--formula", "l_1 q",
                       "--state", "p,q:pq")
    assert code == 0
    assert out.strip() == "True"


def test_check_all_states(capsys):
    code, out, _ = run(capsys, "check", FIG1L, "--formula", "p", "--all")
    assert code == 0
    assert "q:q\tUndefined" in out
    assert "p:p\tTrue" in out


def test_check_unknown_state_is_input_error(capsys):
    code, _, err = run(capsys, "check", FIG1L, "--formula", "p",
                       "--state", "p,q:ghost")
    assert code == 2
    assert "error" in err


def test_check_bad_formula_is_input_error(capsys):
    code, _, err = run(capsys, "check", FIG1L, "--formula", "k_9 p",
                       "--state", "pq:pq")
    assert code == 2


def test_transform_and_equiv_pipeline(tmp_path, capsys):
    out_path = tmp_path / "fig1R.fh"
    code, _, _ = run(capsys, "transform", FIG1R, "--to", "fh",
                     "--out", str(out_path))
    assert code == 0
    code, out, _ = run(capsys, "equiv", FIG1R, str(out_path),
                       "--via", "fh", "--depth", "2")
    assert code == 0
    assert "PASS" in out


def test_transform_direction_mismatch(capsys):
    code, _, err = run(capsys, "transform", FIG1L, "--to", "hms")
    assert code == 2


def test_transform_round_trip_through_files(tmp_path, capsys):
    fh_path = tmp_path / "top.fh"
    hms_path = tmp_path / "back.model"
    assert run(capsys, "transform", FIG1R, "--to", "fh", "--out", str(fh_path))[0] == 0
    assert run(capsys, "transform", str(fh_path), "--to", "hms",
               "--out", str(hms_path))[0] == 0
    code, out, _ = run(capsys, "equiv", str(fh_path), str(hms_path),
                       "--via", "hms", "--depth", "2")
    assert code == 0
    assert "PASS" in out


def test_dump_category(tmp_path, capsys):
    fh_path = tmp_path / "top.fh"
    run(capsys, "transform", FIG1R, "--to", "fh", "--out", str(fh_path))
    out_dir = tmp_path / "category"
    code, _, _ = run(capsys, "transform", str(fh_path), "--to", "implicit-hms",
                     "--out", str(tmp_path / "im.model"),
                     "--dump-category", str(out_dir))
    assert code == 0
    manifest = json.loads((out_dir / "category.json").read_text())
    assert set(manifest["members"]) == {"", "p", "q", "p,q"}
    member = load_model(out_dir / manifest["members"]["p"])
    assert member.language_atoms == frozenset({"p"})


def test_gen_writes_valid_model(tmp_path, capsys):
    out_path = tmp_path / "gen.model"
    code, _, _ = run(capsys, "gen", "--seed", "9", "--family", "hms",
                     "--out", str(out_path))
    assert code == 0
    code, out, _ = run(capsys, "validate", str(out_path))
    assert code == 0


def test_gen_bad_caps(capsys):
    code, _, err = run(capsys, "gen", "--seed", "1", "--caps", "atoms=0")
    assert code == 2


def test_fuzz_subcommand(capsys):
    code, out, _ = run(capsys, "fuzz", "--trials", "2", "--seed", "5")
    assert code == 0
    assert "PASS" in out


def test_lpa_check_accepts_and_rejects(capsys):
    code, out, _ = run(capsys, "lpa", "check",
                       str(proof_path("good_necessitation_top.proof")))
    assert code == 0 and "accepted" in out
    code, out, _ = run(capsys, "lpa", "check",
                       str(proof_path("bad_07_not_a_tautology.proof")))
    assert code == 1 and "line 1" in out


def test_lpa_fuzz(capsys):
    code, out, _ = run(capsys, "lpa", "fuzz", "--trials", "3", "--seed", "2")
    assert code == 0


def test_dot_export(tmp_path, capsys):
    dot = tmp_path / "lattice.dot"
    code, _, _ = run(capsys, "validate", FIG1L, "--dot", str(dot))
    assert code == 0
    assert dot.read_text().startswith("digraph")


def test_missing_file_is_input_error(capsys):
    code, _, err = run(capsys, "validate", "no-such-file.model")
    assert code == 2


def test_usage_error_is_exit_two(capsys):
    assert main(["transform", FIG1L]) == 2
