"""Acceptance gate: one test per shipped guarantee.

Every comparison is exact rational equality (zero tolerance). Tests with a
stated wall-clock budget assert it; each prints a one-line summary (visible
with -s, or via the verbose PASSED/FAILED line per criterion).
"""

import json
import time
from fractions import Fraction

import jsonschema

from horadam import (
    REPORT_JSON_SCHEMA,
    ThreeTermRelation,
    catalog_entry,
    catalog_list,
    catalog_run,
    default_registry,
    get_named,
    m1,
    make_grid,
    make_sequence,
    parse_identity,
    rat_text,
    term,
    term_iterative_oracle,
    verify_identity_grid,
)
from horadam.cli import main
from horadam.dsl import eval_expr, verify_over_grid
from conftest import EXPECTED_TABLE, TABLE_COLUMNS, random_pair, random_rational, random_sequence


def _pass(num: int, label: str, elapsed: float, budget=None, detail: str = "") -> None:
    limit = f" < {budget:g}s" if budget is not None else ""
    extra = f" | {detail}" if detail else ""
    print(f"criterion {num:02d} {label}: PASS ({elapsed:.2f}s{limit}){extra}")


def _named_pairs() -> list:
    return [
        (get_named("fibonacci"), get_named("lucas")),
        (get_named("pell"), get_named("pell-lucas")),
        (get_named("jacobsthal"), get_named("jacobsthal-lucas")),
    ]


def test_criterion_01_table_reproduction():
    start = time.perf_counter()
    checked = 0
    for col, name in enumerate(TABLE_COLUMNS):
        s = get_named(name)
        for n in range(-5, 9):
            assert rat_text(term(s, n)) == EXPECTED_TABLE[n][col]
            checked += 1
    elapsed = time.perf_counter() - start
    assert checked == 84
    assert elapsed < 1.0
    _pass(1, "table-reproduction", elapsed, 1, "84/84 exact")


def test_criterion_02_four_term_relation_grid(rng):
    pairs = _named_pairs() + [random_pair(rng) for _ in range(5)]
    grid = make_grid(
        {"n": (-3, 3), "m": (-3, 3), "a": (-2, 2), "b": (-2, 2), "c": (-2, 2), "d": (-2, 2)}
    )
    start = time.perf_counter()
    total = 0
    for g, h in pairs:
        report = verify_identity_grid("theorem1", g, h, grid)
        assert report.counterexamples == ()
        assert report.cases_checked == report.cases_total == 30625
        total += report.cases_checked
    elapsed = time.perf_counter() - start
    assert total == 8 * 30625
    assert elapsed < 60.0
    _pass(2, "four-term-relation-grid", elapsed, 60, f"{total} cases, 8 pairs")


def test_criterion_03_two_term_relation_grid(rng):
    pairs = _named_pairs() + [random_pair(rng) for _ in range(5)]
    grid = make_grid({"n": (-4, 4), "m": (-4, 4), "a": (-3, 3), "b": (-3, 3)})
    start = time.perf_counter()
    total = 0
    for g, h in pairs:
        report = verify_identity_grid("corollary", g, h, grid)
        assert report.counterexamples == ()
        assert report.cases_checked == report.cases_total == 3969
        total += report.cases_checked
    elapsed = time.perf_counter() - start
    assert total == 8 * 3969
    assert elapsed < 10.0
    _pass(3, "two-term-relation-grid", elapsed, 10, f"{total} cases, 8 pairs")


def test_criterion_04_recurrence_sum_lemmas(rng):
    # The relation under test is the defining recurrence itself, so its first
    # weight equals p; random sequences here need p != 0 for a valid relation.
    seqs = [get_named(name) for name in TABLE_COLUMNS]
    for _ in range(5):
        p = random_rational(rng, allow_zero=False)
        q = random_rational(rng, allow_zero=False)
        g0, g1 = random_rational(rng), random_rational(rng)
        if g0 == 0 and g1 == 0:
            g1 = Fraction(1)
        seqs.append(make_sequence(p, q, g0, g1))
    identities = (
        "lemma1",
        "lemma2:1", "lemma2:2", "lemma2:3",
        "lemma3:1", "lemma3:2", "lemma3:3",
    )
    grid = make_grid({"n": (-5, 5), "k": (0, 6)})
    start = time.perf_counter()
    total = 0
    for s in seqs:
        rel = ThreeTermRelation(s.params.p, s.params.q, 1, 2)
        for identity in identities:
            report = verify_identity_grid(identity, s, s, grid, rel=rel)
            assert report.counterexamples == (), (s, identity)
            assert report.cases_checked == report.cases_total == 77
            total += report.cases_checked
    elapsed = time.perf_counter() - start
    assert total == 11 * len(identities) * 77
    assert elapsed < 30.0
    _pass(4, "recurrence-sum-lemmas", elapsed, 30, f"{total} cases, 11 sequences")


def test_criterion_05_summation_theorems_with_skips():
    g, h = get_named("fibonacci"), get_named("lucas")
    grid = make_grid(
        {
            "n": (-2, 2), "m": (-2, 2),
            "a": (-1, 2), "b": (-1, 2), "c": (-1, 2), "d": (-1, 2),
            "k": (0, 5),
        }
    )
    identities = (
        "sum-ordinary:1", "sum-ordinary:2", "sum-ordinary:3",
        "sum-binomial:1", "sum-binomial:2", "sum-binomial:3",
    )
    start = time.perf_counter()
    worst_skip = 0.0
    for identity in identities:
        report = verify_identity_grid(identity, g, h, grid)
        assert report.counterexamples == (), identity
        assert report.cases_total == 38400
        assert report.cases_checked + report.cases_skipped_precondition == 38400
        fraction = report.cases_skipped_precondition / report.cases_total
        assert fraction < 0.5, (identity, fraction)
        worst_skip = max(worst_skip, fraction)
    elapsed = time.perf_counter() - start
    assert elapsed < 120.0
    _pass(
        5, "summation-theorems", elapsed, 120,
        f"6 x 38400 cases, max skipped fraction {worst_skip:.3f}",
    )


def test_criterion_06_catalog_sweep_default_grids():
    entries = catalog_list()
    assert len(entries) >= 40
    initials = ((0, 1), (2, 1), (3, -5))
    start = time.perf_counter()
    runs = 0
    for entry in entries:
        variants = initials if entry.generalized else (None,)
        for pair in variants:
            report = catalog_run(entry.id, generalized_initials=pair)
            assert report.counterexamples == (), (entry.id, pair)
            assert report.cases_skipped_precondition == 0
            assert report.cases_checked == report.cases_total > 0
            runs += 1
    elapsed = time.perf_counter() - start
    assert elapsed < 120.0
    _pass(6, "catalog-sweep", elapsed, 120, f"{len(entries)} entries, {runs} runs")


def test_criterion_07_fast_path_equals_iterative_oracle(rng):
    start = time.perf_counter()
    spot_indices = (-500, -257, -64, -1, 0, 1, 64, 257, 500)
    for _ in range(20):
        s = random_sequence(rng)
        p, q = s.params.p, s.params.q
        chain = {0: Fraction(s.g0), 1: Fraction(s.g1)}
        lo, hi = chain[0], chain[1]
        for n in range(2, 501):
            lo, hi = hi, p * hi + q * lo
            chain[n] = hi
        above, below = chain[1], chain[0]
        for n in range(-1, -501, -1):
            nxt = (above - p * below) / q
            chain[n] = nxt
            above, below = below, nxt
        for n in range(-500, 501):
            assert term(s, n) == chain[n], (s, n)
        for n in spot_indices:
            assert term_iterative_oracle(s, n) == chain[n], (s, n)
    elapsed = time.perf_counter() - start
    assert elapsed < 10.0
    _pass(7, "fast-path-vs-oracle", elapsed, 10, "20 sequences, |n| <= 500")


def test_criterion_08_negative_index_closed_forms():
    # G(-n) in terms of G(n): sign m1(n-1) for the 0,1-seeded members and
    # m1(n) for their companions; the q=2 family carries an extra 2^(-n).
    laws = {
        "fibonacci": lambda n, v: m1(n - 1) * v,
        "lucas": lambda n, v: m1(n) * v,
        "pell": lambda n, v: m1(n - 1) * v,
        "pell-lucas": lambda n, v: m1(n) * v,
        "jacobsthal": lambda n, v: m1(n - 1) * Fraction(1, 2**n) * v,
        "jacobsthal-lucas": lambda n, v: m1(n) * Fraction(1, 2**n) * v,
    }
    start = time.perf_counter()
    checked = 0
    for name, law in laws.items():
        s = get_named(name)
        for n in range(0, 41):
            assert term(s, -n) == law(n, term(s, n)), (name, n)
            checked += 1
    assert checked == 6 * 41
    _pass(8, "negative-index-closed-forms", time.perf_counter() - start, None,
          "6 sequences, n in [0, 40]")


def test_criterion_09_large_index_performance():
    fib = get_named("fibonacci")
    start = time.perf_counter()
    value = term(fib, 100000)
    elapsed = time.perf_counter() - start
    assert elapsed < 2.0
    assert value.denominator == 1
    oracle_value = term_iterative_oracle(fib, 100000)
    digits = len(str(abs(int(value))))
    oracle_digits = len(str(abs(int(oracle_value))))
    assert digits == oracle_digits == 20899
    assert value == oracle_value
    _pass(9, "large-index-performance", elapsed, 2, f"{digits} digits")


def _reduced_grid(entry):
    ranges = {v: ((0, 3) if v == "k" else (-2, 2)) for v in entry.free_vars}
    return make_grid(ranges)


def _registry_for(entry):
    registry = dict(default_registry())
    if entry.generalized:
        base = get_named(entry.family)
        registry["H"] = make_sequence(base.params.p, base.params.q, 0, 1)
    return registry


def test_criterion_10_dsl_agrees_with_native_checkers(capsys):
    start = time.perf_counter()
    for entry in catalog_list():
        grid = _reduced_grid(entry)
        native_report = catalog_run(entry.id, grid=grid)
        assert native_report.counterexamples == (), entry.id
        outcome = catalog_entry(entry.id).make_outcome(None, None)
        registry = _registry_for(entry)
        asts = [parse_identity(text) for text in entry.dsl_texts]
        for case in grid.cases():
            native_lhs, native_rhs = outcome(case)
            pairs = [
                (eval_expr(ast.lhs, case, registry), eval_expr(ast.rhs, case, registry))
                for ast in asts
            ]
            for lhs, rhs in pairs:
                assert lhs == rhs, (entry.id, case)
            # Both routes must compute the same two values, not merely agree
            # that each identity holds.
            assert pairs[0] == (native_lhs, native_rhs), (entry.id, case)
        for ast in asts:
            dsl_report = verify_over_grid(ast, grid, registry=registry, identity_label=entry.id)
            assert dsl_report.to_json() == native_report.to_json(), entry.id

    code = main(["check", "--expr", "F[n+1]=F[n]", "--grid", "n=0..3"])
    out = capsys.readouterr().out
    assert code == 1
    first = json.loads(out)["counterexamples"][0]
    assert first == {"bindings": {"n": 0}, "lhs": "1", "rhs": "0"}
    _pass(10, "dsl-vs-native", time.perf_counter() - start, None,
          f"{len(catalog_list())} entries case-by-case")


def test_criterion_11_cli_contract(capsys):
    start = time.perf_counter()

    def run(argv):
        code = main(argv)
        return code, capsys.readouterr().out

    passing = [
        ["verify", "--identity", "corollary", "--seq", "fibonacci",
         "--grid", "a=-2..2,b=-2..2,m=-2..2,n=-2..2"],
        ["catalog", "run", "fib.catalan", "--grid", "m=-3..3,n=-3..3"],
        ["check", "--expr", "L[n]^(2) - 5*F[n]^(2) = 4*(-1)^(n)", "--grid", "n=-8..8"],
    ]
    for argv in passing:
        code, out = run(argv)
        again_code, again_out = run(argv)
        assert code == again_code == 0
        assert out == again_out
        jsonschema.validate(json.loads(out), REPORT_JSON_SCHEMA)

    failing = ["check", "--expr", "F[n+1]=F[n]", "--grid", "n=0..5"]
    code, out = run(failing)
    again_code, again_out = run(failing)
    assert code == again_code == 1
    assert out == again_out
    report = json.loads(out)
    jsonschema.validate(report, REPORT_JSON_SCHEMA)
    assert report["counterexamples"]

    assert main(["verify", "--identity", "nosuch", "--seq", "fibonacci"]) == 2
    assert main(["check", "--expr", "F[n", "--grid", "n=0..1"]) == 2
    capsys.readouterr()
    _pass(11, "cli-contract", time.perf_counter() - start, None,
          "schema, exit codes 0/1/2, byte-stable reruns")
