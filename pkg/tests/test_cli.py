"""Command-line interface: subcommands, formats, and the exit-code contract."""

import json

import pytest

from horadam.cli import main
from conftest import EXPECTED_TABLE


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestEval:
    def test_named_sequence(self, capsys):
        code, out, _ = run(capsys, "eval", "--seq", "fibonacci", "-n", "8")
        assert (code, out) == (0, "21\n")

    def test_custom_parameters_with_negative_index(self, capsys):
        code, out, _ = run(
            capsys, "eval", "--p", "1", "--q", "2", "--g0", "0", "--g1", "1", "-n", "-5"
        )
        assert (code, out) == (0, "11/32\n")

    def test_zero_index(self, capsys):
        code, out, _ = run(capsys, "eval", "--seq", "fibonacci", "-n", "0")
        assert (code, out) == (0, "0\n")

    def test_alias(self, capsys):
        code, out, _ = run(capsys, "eval", "--seq", "Q", "-n", "3")
        assert (code, out) == (0, "14\n")

    def test_missing_selector_fails(self, capsys):
        code, _, err = run(capsys, "eval", "-n", "3")
        assert code == 2 and "error" in err

    def test_conflicting_selectors_fail(self, capsys):
        code, _, err = run(capsys, "eval", "--seq", "fibonacci", "--p", "1", "-n", "3")
        assert code == 2

    def test_partial_custom_parameters_fail(self, capsys):
        code, _, err = run(capsys, "eval", "--p", "1", "--q", "2", "-n", "3")
        assert code == 2 and "missing" in err

    def test_decimal_rational_rejected(self, capsys):
        code, _, _ = run(capsys, "eval", "--p", "1.5", "--q", "1", "--g0", "0", "--g1", "1", "-n", "2")
        assert code == 2

    def test_unknown_sequence_suggests(self, capsys):
        code, _, err = run(capsys, "eval", "--seq", "fibonaci", "-n", "1")
        assert code == 2 and "did you mean" in err


class TestTable:
    def test_all_reproduces_reference_table(self, capsys):
        code, out, _ = run(capsys, "table", "--all", "--from", "-5", "--to", "8", "--format", "csv")
        assert code == 0
        lines = out.splitlines()
        assert len(lines) == 14
        for line in lines:
            cells = line.split(",")
            n = int(cells[0])
            assert tuple(cells[1:]) == EXPECTED_TABLE[n]

    def test_single_row(self, capsys):
        code, out, _ = run(capsys, "table", "--seq", "lucas", "--from", "0", "--to", "0")
        assert (code, out) == (0, "0,2\n")

    def test_rational_cell(self, capsys):
        code, out, _ = run(capsys, "table", "--seq", "jacobsthal-lucas", "--from", "-4", "--to", "-4")
        assert (code, out) == (0, "-4,17/16\n")

    def test_reversed_bounds_fail(self, capsys):
        code, _, err = run(capsys, "table", "--seq", "lucas", "--from", "3", "--to", "2")
        assert code == 2

    def test_all_excludes_seq(self, capsys):
        code, _, _ = run(capsys, "table", "--all", "--seq", "lucas", "--from", "0", "--to", "1")
        assert code == 2

    def test_json_format(self, capsys):
        code, out, _ = run(capsys, "table", "--all", "--from", "0", "--to", "1", "--format", "json")
        assert code == 0
        obj = json.loads(out)
        assert obj["columns"][0] == "n"
        assert obj["rows"][0][0] == "0"

    def test_text_format_has_header(self, capsys):
        code, out, _ = run(capsys, "table", "--seq", "pell", "--from", "0", "--to", "2", "--format", "text")
        assert code == 0
        assert out.splitlines()[0].split() == ["n", "pell"]


class TestVerify:
    def test_theorem1_small_grid(self, capsys):
        code, out, _ = run(
            capsys, "verify", "--identity", "theorem1", "--seq", "fibonacci",
            "--h", "lucas",
            "--grid", "n=-2..2,m=-2..2,a=0..1,b=0..1,c=0..1,d=0..1",
        )
        assert code == 0
        obj = json.loads(out)
        assert obj["cases_total"] == 400
        assert obj["counterexamples"] == []

    def test_sum_with_skips(self, capsys):
        code, out, _ = run(
            capsys, "verify", "--identity", "sum-ordinary:1", "--seq", "fibonacci",
            "--grid", "a=-1..1,b=-1..1,c=-1..1,d=-1..1,k=0..2,m=-1..1,n=0..0",
        )
        assert code == 0
        obj = json.loads(out)
        assert obj["cases_skipped_precondition"] >= 1
        assert obj["cases_checked"] + obj["cases_skipped_precondition"] == obj["cases_total"]

    def test_lemma_with_custom_relation(self, capsys):
        # F(n) = 2*F(n+1) - L(n)
        code, out, _ = run(
            capsys, "verify", "--identity", "lemma1", "--seq", "fibonacci",
            "--h", "lucas", "--f1", "2", "--f2", "-1", "--rel-a", "-1", "--rel-b", "0",
            "--grid", "k=0..4,n=-3..3",
        )
        assert code == 0
        assert json.loads(out)["counterexamples"] == []

    def test_relation_flags_on_non_lemma_fail(self, capsys):
        code, _, err = run(
            capsys, "verify", "--identity", "theorem1", "--seq", "fibonacci",
            "--f1", "2", "--grid", "a=0..0,b=1..1,c=0..0,d=1..1,m=0..0,n=0..0",
        )
        assert code == 2 and "lemma" in err

    def test_unknown_identity_fails(self, capsys):
        code, _, _ = run(capsys, "verify", "--identity", "nosuch", "--seq", "fibonacci")
        assert code == 2

    def test_companion_initials(self, capsys):
        code, out, _ = run(
            capsys, "verify", "--identity", "corollary", "--seq", "pell",
            "--h0", "3", "--h1", "-5", "--grid", "a=-1..1,b=-1..1,m=-1..1,n=-1..1",
        )
        assert code == 0 and json.loads(out)["counterexamples"] == []

    def test_mismatched_pair_fails(self, capsys):
        code, _, err = run(
            capsys, "verify", "--identity", "theorem1", "--seq", "fibonacci",
            "--h", "pell", "--grid", "a=0..0,b=1..1,c=0..0,d=1..1,m=0..0,n=0..0",
        )
        assert code == 2

    def test_csv_format(self, capsys):
        code, out, _ = run(
            capsys, "verify", "--identity", "corollary", "--seq", "fibonacci",
            "--grid", "a=0..1,b=0..1,m=0..1,n=0..1", "--format", "csv",
        )
        assert code == 0
        assert out.splitlines()[0].startswith("identity,grid,cases_total")


class TestCatalog:
    def test_list_lines(self, capsys):
        code, out, _ = run(capsys, "catalog", "list")
        assert code == 0
        lines = out.splitlines()
        assert len(lines) >= 40
        assert all("\t" in line for line in lines)

    def test_run_entry(self, capsys):
        code, out, _ = run(capsys, "catalog", "run", "fib.catalan", "--grid", "n=0..8,m=0..8")
        assert code == 0
        assert json.loads(out)["cases_total"] == 81

    def test_run_unknown_id_fails_with_hint(self, capsys):
        code, _, err = run(capsys, "catalog", "run", "fib.catalann")
        assert code == 2 and "did you mean" in err

    def test_run_with_initials(self, capsys):
        code, out, _ = run(
            capsys, "catalog", "run", "jac.master",
            "--grid", "a=-1..1,b=-1..1,m=-1..1,n=-1..1", "--h0", "3", "--h1", "-5",
        )
        assert code == 0 and json.loads(out)["counterexamples"] == []

    def test_half_initials_fail(self, capsys):
        code, _, _ = run(capsys, "catalog", "run", "fib.master", "--h0", "1")
        assert code == 2


class TestCheck:
    def test_passing_identity(self, capsys):
        code, out, _ = run(
            capsys, "check",
            "--expr", "F[n-m]*F[n+m] = F[n]^(2) + (-1)^(n+m+1)*F[m]^(2)",
            "--grid", "n=0..6,m=0..6",
        )
        assert code == 0
        assert json.loads(out)["cases_total"] == 49

    def test_false_identity_counterexample(self, capsys):
        code, out, _ = run(capsys, "check", "--expr", "F[n+1]=F[n]", "--grid", "n=0..3")
        assert code == 1
        first = json.loads(out)["counterexamples"][0]
        assert first == {"bindings": {"n": 0}, "lhs": "1", "rhs": "0"}

    def test_parse_error_exit_two(self, capsys):
        code, _, err = run(capsys, "check", "--expr", "F[n", "--grid", "n=0..3")
        assert code == 2 and "column 4" in err

    def test_file_source(self, capsys, tmp_path):
        path = tmp_path / "identity.txt"
        path.write_text("L[n] = F[n-1] + F[n+1]\n", encoding="utf-8")
        code, out, _ = run(capsys, "check", "--file", str(path), "--grid", "n=-6..6")
        assert code == 0 and json.loads(out)["counterexamples"] == []

    def test_missing_file_fails(self, capsys):
        code, _, err = run(capsys, "check", "--file", "/nonexistent/x.txt", "--grid", "n=0..1")
        assert code == 2

    def test_grid_required_when_free_vars(self, capsys):
        code, _, err = run(capsys, "check", "--expr", "F[n]=F[n]")
        assert code == 2 and "free variables" in err

    def test_closed_identity_needs_no_grid(self, capsys):
        code, out, _ = run(capsys, "check", "--expr", "F[8] = 21")
        assert code == 0
        assert json.loads(out)["cases_total"] == 1

    def test_declare_custom_sequence(self, capsys):
        code, out, _ = run(
            capsys, "check",
            "--declare", "X=1,1,3,-5",
            "--expr", "X[n+m] = F[m]*X[n+1] + F[m-1]*X[n]",
            "--grid", "n=-3..3,m=-3..3",
        )
        assert code == 0 and json.loads(out)["counterexamples"] == []

    def test_bad_declaration_fails(self, capsys):
        code, _, _ = run(capsys, "check", "--declare", "X=1,1", "--expr", "X[0]=1")
        assert code == 2

    def test_expr_and_file_mutually_exclusive(self, capsys):
        code, _, _ = run(capsys, "check", "--expr", "F[0]=0", "--file", "x", "--grid", "n=0..0")
        assert code == 2


class TestOutputPlumbing:
    def test_output_file_matches_stdout(self, capsys, tmp_path):
        argv = ["catalog", "run", "fib.halton", "--grid", "m=-2..2,n=-2..2"]
        code, out, _ = run(capsys, *argv)
        assert code == 0
        path = tmp_path / "report.json"
        code2 = main(argv + ["--output", str(path)])
        capsys.readouterr()
        assert code2 == 0
        assert path.read_text(encoding="utf-8") == out

    def test_reruns_byte_identical(self, capsys):
        argv = ["verify", "--identity", "corollary", "--seq", "jacobsthal",
                "--grid", "a=-2..2,b=-2..2,m=-2..2,n=-2..2"]
        _, first, _ = run(capsys, *argv)
        _, second, _ = run(capsys, *argv)
        assert first == second

    def test_no_subcommand_fails(self, capsys):
        assert main([]) == 2

    def test_unknown_flag_fails(self, capsys):
        assert main(["eval", "--seq", "fibonacci", "-n", "1", "--bogus"]) == 2
