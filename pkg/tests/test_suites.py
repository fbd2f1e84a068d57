"""The seeded suites themselves: green, deterministic, well-scoped."""

import random

import pytest

from jeopardy.suites import (
    SuiteResult,
    ValueGenerator,
    accepted_corpus_programs,
    bundled_expectations,
    corollary_inversion_round_trip,
    corpus_file_names,
    expectation_suite,
    parse_expectations,
    parse_print_round_trip,
    run_suites,
    theorem_env_round_trip,
)


def test_corpus_inventory():
    assert corpus_file_names() == [
        "arith.jeo",
        "fib.jeo",
        "fibpair.jeo",
        "invertibles.jeo",
        "lists.jeo",
        "swap.jeo",
    ]


def test_accepted_corpus_is_the_linear_half():
    names = [name for name, _ in accepted_corpus_programs()]
    assert names == ["arith.jeo", "invertibles.jeo", "lists.jeo"]


class TestExpectationFormat:
    def test_bundled_file_parses(self):
        exps = bundled_expectations()
        assert len(exps) >= 15
        directions = {e.direction for e in exps}
        assert directions == {"forward", "invert", "check"}

    def test_comments_and_blanks_ignored(self):
        text = "# note\n\narith.jeo | [zero] | forward | enforce | [zero] # why\n"
        (exp,) = parse_expectations(text)
        assert exp.file == "arith.jeo"
        assert exp.expect == "[zero]"

    def test_field_count_enforced(self):
        with pytest.raises(ValueError):
            parse_expectations("a.jeo | [zero] | forward | enforce\n")

    def test_direction_validated(self):
        with pytest.raises(ValueError):
            parse_expectations("a.jeo | [zero] | sideways | enforce | [zero]\n")

    def test_psi_mode_validated(self):
        with pytest.raises(ValueError):
            parse_expectations("a.jeo | [zero] | forward | sometimes | [zero]\n")


class TestSuitesAreGreen:
    def test_expectations(self):
        result = expectation_suite()
        assert result.ok, result.failures
        assert result.total == result.passed

    def test_env_inference_round_trip(self):
        result = theorem_env_round_trip(seed=11, cases=25)
        assert result.ok, result.failures[:3]
        assert result.passed > 0
        assert result.undecided == 0

    def test_inversion_round_trip(self):
        result = corollary_inversion_round_trip(seed=11, cases=25)
        assert result.ok, result.failures[:3]
        assert result.passed > 0

    def test_parse_print_round_trip(self):
        result = parse_print_round_trip()
        assert result.ok and result.total == 6

    def test_runner_covers_all_four(self):
        results = run_suites(seed=3, cases=5)
        assert [r.name for r in results] == [
            "expectations",
            "env-inference-round-trip",
            "inversion-round-trip",
            "parse-print-round-trip",
        ]
        assert all(r.ok for r in results)

    def test_filter_selects_by_substring(self):
        results = run_suites(seed=3, cases=5, name_filter="inversion")
        assert [r.name for r in results] == ["inversion-round-trip"]


class TestDeterminism:
    def test_same_seed_same_summary(self):
        a = [r.summary_line() for r in run_suites(seed=7, cases=20)]
        b = [r.summary_line() for r in run_suites(seed=7, cases=20)]
        assert a == b

    def test_env_suite_sample_counts_are_stable(self):
        result = theorem_env_round_trip(seed=42, cases=10)
        again = theorem_env_round_trip(seed=42, cases=10)
        assert result.summary_line() == again.summary_line()


class TestValueGenerator:
    def test_requires_known_type(self, arith):
        gen = ValueGenerator(arith, random.Random(0))
        with pytest.raises(ValueError):
            gen.value("ghost")

    def test_respects_tight_budgets(self, arith):
        # A pair of nats at depth 2 forces both components to [zero].
        gen = ValueGenerator(arith, random.Random(0), max_depth=2)
        for _ in range(20):
            v = gen.value("pair")
            assert v.name == "pair"
            assert all(a.name == "zero" for a in v.args)

    def test_unsatisfiable_budget_is_an_error(self, arith):
        gen = ValueGenerator(arith, random.Random(0), max_depth=1)
        with pytest.raises(ValueError):
            gen.value("pair")


def test_summary_line_shape():
    r = SuiteResult("demo", total=3, passed=2, failed=1, failures=["boom"])
    assert r.summary_line() == (
        "demo: FAIL total=3 passed=2 failed=1 skipped=0 undecided=0"
    )
    assert not r.ok
