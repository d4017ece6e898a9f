"""Subcommand behavior, exit codes, report formats and determinism."""

import json

import pytest

from clone_forge.cli import EXIT_FAIL, EXIT_INPUT, EXIT_PASS, FORMAT_ENV, main
from clone_forge.clone import builtin_clone
from clone_forge.io_formats import dump_subst_algebra
from clone_forge.iso_bridge import s_functor
from clone_forge.subst_algebra import truncate_algebra

MEET = '{"carrier": 2, "operations": {"meet": {"arity": 2, "table": [0, 0, 0, 1]}}}'


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


def test_check_f_passes(capsys):
    code, out = run(capsys, "check-f")
    assert code == EXIT_PASS
    assert "overall: pass" in out
    assert out.count("PASS fin-cat:") == 8


def test_check_f_json_schema(capsys):
    code, out = run(capsys, "check-f", "--format", "json")
    payload = json.loads(out)
    assert payload["overall"] == "pass"
    assert payload["command"] == "check-f"
    assert {c["name"] for c in payload["checks"]} >= {"fin-cat:braid"}


def test_free_clone_requires_signature(capsys):
    assert main(["free-clone"]) == EXIT_INPUT


def test_free_clone_runs(tmp_path, capsys):
    sig = tmp_path / "sig.json"
    sig.write_text('{"operators": {"u": 1}}')
    code, out = run(capsys, "free-clone", "--signature", str(sig))
    assert code == EXIT_PASS
    assert "carrier sizes" in out


def test_finite_clone_reports_sizes(tmp_path, capsys):
    meet = tmp_path / "meet.json"
    meet.write_text(MEET)
    code, out = run(
        capsys, "finite-clone", "--input", str(meet), "--max-arity", "3"
    )
    assert code == EXIT_PASS
    assert "[0, 1, 3, 7]" in out


def test_check_clone_builtin(capsys):
    code, out = run(capsys, "check-clone", "--builtin", "initial")
    assert code == EXIT_PASS
    assert "theory-laws:hom-associativity" in out


def test_check_clone_needs_one_source(capsys):
    assert main(["check-clone"]) == EXIT_INPUT
    assert main(["check-clone", "--builtin", "initial", "--signature", "x"]) == EXIT_INPUT


def test_to_subst_and_check_subst(tmp_path, capsys):
    out_path = tmp_path / "alg.json"
    code, _ = run(
        capsys, "to-subst", "--builtin", "initial", "--output", str(out_path)
    )
    assert code == EXIT_PASS
    code, out = run(capsys, "check-subst", "--input", str(out_path))
    assert code == EXIT_PASS
    assert "agreement:unit<->left-unit-diagram" in out


def test_check_subst_broken_fixture_exits_one(tmp_path, capsys):
    table = truncate_algebra(s_functor(builtin_clone("initial")), 3)
    broken = table.with_s_entry(2, 0, 0, 1)
    path = tmp_path / "broken.json"
    path.write_text(dump_subst_algebra(broken))
    code, out = run(capsys, "check-subst", "--input", str(path))
    assert code == EXIT_FAIL
    assert "FAIL presentation:weakening" in out
    assert "counterexample" in out


def test_schema_error_exits_two(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    assert main(["check-subst", "--input", str(path)]) == EXIT_INPUT


def test_missing_file_exits_two(capsys):
    assert main(["check-subst", "--input", "/nonexistent/alg.json"]) == EXIT_INPUT


def test_to_clone_roundtrip(tmp_path, capsys):
    out_path = tmp_path / "alg.json"
    run(capsys, "to-subst", "--builtin", "initial", "--bound", "4", "--output", str(out_path))
    code, out = run(capsys, "to-clone", "--input", str(out_path))
    assert code == EXIT_PASS
    assert "clamped" in out  # arity 3 needs stage 6, stored bound is 4


def test_roundtrip_command(capsys):
    code, out = run(capsys, "roundtrip", "--builtin", "terminal")
    assert code == EXIT_PASS
    assert "roundtrip-clone:mu-agreement" in out
    assert "roundtrip-algebra:subst-agreement" in out


def test_enum_hom_counts(capsys):
    code, out = run(
        capsys, "enum-hom", "--builtin", "initial", "--src", "3", "--dst", "2"
    )
    assert code == EXIT_PASS
    assert "hom-set size: 9" in out


def test_env_var_overrides_format(capsys, monkeypatch):
    monkeypatch.setenv(FORMAT_ENV, "json")
    code, out = run(capsys, "check-f", "--format", "text")
    assert code == EXIT_PASS
    json.loads(out)


def test_json_reports_are_deterministic(capsys):
    _, first = run(capsys, "roundtrip", "--builtin", "initial", "--format", "json")
    _, second = run(capsys, "roundtrip", "--builtin", "initial", "--format", "json")
    assert first == second


def test_bound_validation(capsys):
    assert main(["check-f", "--bound", "1"]) == EXIT_INPUT
