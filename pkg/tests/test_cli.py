"""Process-level contract: exit codes, stream discipline, flags."""

import io
import json

import pytest

from jeopardy.cli import main
from jeopardy.suites import read_corpus_file

CORPUS = [
    "arith.jeo",
    "fib.jeo",
    "fibpair.jeo",
    "invertibles.jeo",
    "lists.jeo",
    "swap.jeo",
]


@pytest.fixture()
def corpus_dir(tmp_path):
    for name in CORPUS:
        (tmp_path / name).write_text(read_corpus_file(name), encoding="utf-8")
    return tmp_path


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestCheck:
    def test_accepted_file_is_silent(self, capsys, corpus_dir):
        code, out, err = run_cli(capsys, "check", str(corpus_dir / "arith.jeo"))
        assert (code, out, err) == (0, "", "")

    def test_type_rejection_exits_2_with_codes(self, capsys, corpus_dir):
        code, out, err = run_cli(capsys, "check", str(corpus_dir / "swap.jeo"))
        assert code == 2
        assert out == ""
        assert "T002" in err and "T003" in err
        assert "swap.jeo:" in err, "diagnostics carry file and position"

    def test_parse_error_exits_3(self, capsys, tmp_path):
        bad = tmp_path / "bad.jeo"
        bad.write_text("data nat = .\nmain f.", encoding="utf-8")
        code, out, err = run_cli(capsys, "check", str(bad))
        assert code == 3
        assert out == ""
        assert "P001" in err

    def test_missing_file_exits_3(self, capsys, tmp_path):
        code, out, err = run_cli(capsys, "check", str(tmp_path / "nope.jeo"))
        assert code == 3
        assert err != ""


class TestRun:
    def test_forward(self, capsys, corpus_dir):
        code, out, err = run_cli(
            capsys, "run", str(corpus_dir / "invertibles.jeo"), "[true]"
        )
        assert (code, out, err) == (0, "[false]\n", "")

    def test_inverted(self, capsys, corpus_dir):
        code, out, _ = run_cli(
            capsys, "run", "--invert", str(corpus_dir / "invertibles.jeo"), "[false]"
        )
        assert (code, out) == (0, "[true]\n")

    def test_violation_exits_1_and_keeps_stdout_clean(self, capsys, corpus_dir):
        code, out, err = run_cli(
            capsys, "run", str(corpus_dir / "arith.jeo"), "([suc [zero]], [zero])"
        )
        assert code == 1
        assert out == ""
        assert "PsiViolation" in err

    def test_undecided_exits_4(self, capsys, corpus_dir):
        code, out, err = run_cli(
            capsys,
            "run",
            "--invert",
            "--fuel",
            "2",
            str(corpus_dir / "arith.jeo"),
            "[suc [zero]]",
        )
        assert code == 4
        assert out == ""
        assert "undecided" in err

    def test_rejected_program_will_not_run(self, capsys, corpus_dir):
        code, out, err = run_cli(
            capsys, "run", str(corpus_dir / "swap.jeo"), "([zero], [zero])"
        )
        assert code == 2
        assert out == ""
        assert "T002" in err

    def test_value_from_stdin(self, capsys, corpus_dir, monkeypatch):
        monkeypatch.setattr("sys.stdin", io.StringIO("([zero], [suc [zero]])"))
        code, out, _ = run_cli(capsys, "run", str(corpus_dir / "arith.jeo"), "-")
        assert (code, out) == (0, "[suc [zero]]\n")

    def test_bad_value_exits_3(self, capsys, corpus_dir):
        code, out, err = run_cli(
            capsys, "run", str(corpus_dir / "arith.jeo"), "[suc n]"
        )
        assert code == 3
        assert "P004" in err

    def test_skip_psi_banner_and_result(self, capsys, corpus_dir):
        code, out, err = run_cli(
            capsys,
            "run",
            "--skip-psi",
            str(corpus_dir / "lists.jeo"),
            "[zero] : [suc [zero]] : []",
        )
        assert code == 0
        assert out == "[suc [zero]] : [suc [suc [zero]]] : []\n"
        assert "warning" in err and "not reversible" in err

    def test_trace_goes_to_stderr(self, capsys, corpus_dir):
        code, out, err = run_cli(
            capsys, "run", "--trace", str(corpus_dir / "invertibles.jeo"), "[true]"
        )
        assert code == 0
        assert out == "[false]\n"
        assert any(line.count("\t") == 2 for line in err.splitlines())
        assert "eval-case" in err

    def test_fuel_env_var(self, capsys, corpus_dir, monkeypatch):
        monkeypatch.setenv("JEOPARDY_FUEL", "2")
        code, _, _ = run_cli(
            capsys, "run", "--invert", str(corpus_dir / "arith.jeo"), "[suc [zero]]"
        )
        assert code == 4, "tiny budget from the environment"

    def test_fuel_flag_beats_env_var(self, capsys, corpus_dir, monkeypatch):
        monkeypatch.setenv("JEOPARDY_FUEL", "2")
        code, _, err = run_cli(
            capsys,
            "run",
            "--invert",
            "--fuel",
            "100000",
            str(corpus_dir / "arith.jeo"),
            "[suc [zero]]",
        )
        assert code == 1
        assert "PsiViolation" in err

    def test_garbage_fuel_env_var_is_ignored_with_warning(
        self, capsys, corpus_dir, monkeypatch
    ):
        monkeypatch.setenv("JEOPARDY_FUEL", "lots")
        code, out, err = run_cli(
            capsys, "run", str(corpus_dir / "invertibles.jeo"), "[true]"
        )
        assert (code, out) == (0, "[false]\n")
        assert "JEOPARDY_FUEL" in err


class TestAst:
    def test_emits_json_document(self, capsys, corpus_dir):
        code, out, err = run_cli(capsys, "ast", str(corpus_dir / "arith.jeo"))
        assert (code, err) == (0, "")
        doc = json.loads(out)
        assert doc["schemaVersion"] == 1
        assert doc["main"]["ref"]["base"] == "add"

    def test_identical_across_invocations(self, capsys, corpus_dir):
        outputs = set()
        for _ in range(2):
            _, out, _ = run_cli(capsys, "ast", str(corpus_dir / "lists.jeo"))
            outputs.add(out)
        assert len(outputs) == 1

    def test_unparseable_file_exits_3_with_empty_stdout(self, capsys, tmp_path):
        bad = tmp_path / "bad.jeo"
        bad.write_text("main", encoding="utf-8")
        code, out, err = run_cli(capsys, "ast", str(bad))
        assert code == 3
        assert out == ""
        assert err != ""


class TestTest:
    def test_all_suites_green(self, capsys):
        code, out, err = run_cli(capsys, "test", "--seed", "5", "--cases", "10")
        assert code == 0
        assert out.count("PASS") == 4
        assert "FAIL" not in out

    def test_filter(self, capsys):
        code, out, _ = run_cli(
            capsys, "test", "--filter", "parse-print", "--seed", "5", "--cases", "5"
        )
        assert code == 0
        assert out.splitlines()[0].startswith("parse-print-round-trip: PASS")
        assert len(out.splitlines()) == 1

    def test_unmatched_filter_fails(self, capsys):
        code, out, err = run_cli(capsys, "test", "--filter", "nonesuch")
        assert code == 1
        assert out == ""
        assert "no suite matches" in err

    def test_summaries_are_deterministic(self, capsys):
        _, first, _ = run_cli(capsys, "test", "--seed", "42", "--cases", "15")
        _, second, _ = run_cli(capsys, "test", "--seed", "42", "--cases", "15")
        assert first == second
