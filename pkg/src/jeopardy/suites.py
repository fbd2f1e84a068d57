"""Self-checking suites over the bundled corpus.

Four suites back the `test` subcommand: recorded expectations for the
corpus programs, the environment-inference round trip on every accepted
function body, the inversion round trip on the invertible functions,
and parse/print stability.  All generation is seeded, so two runs with
the same seed produce identical summaries.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from importlib import resources

from .desugar import desugar
from .diagnostics import SourceError
from .interp import (
    LINEARITY_FAULT,
    MATCH_FAILURE,
    PSI_VIOLATION,
    UNBOUND_VARIABLE,
    UNKNOWN_FUNCTION,
    Outcome,
    evaluate,
    infer_env_down,
    run_main,
)
from .parser import parse_program, parse_value
from .pretty import pretty_program, pretty_value
from .syntax import Apply, Con, Env, FunRef, Program
from .typecheck import bind_types, check_program
from .validate import validate

VIOLATION_KINDS = frozenset(
    {MATCH_FAILURE, PSI_VIOLATION, LINEARITY_FAULT, UNBOUND_VARIABLE, UNKNOWN_FUNCTION}
)

MAX_VALUE_DEPTH = 6


def compile_source(source: str) -> Program:
    """Parse, desugar, and validate a program text."""
    return validate(desugar(parse_program(source)))


# ---------------------------------------------------------------------------
# Bundled corpus


def corpus_file_names() -> list[str]:
    root = resources.files(__package__).joinpath("corpus")
    return sorted(
        entry.name for entry in root.iterdir() if entry.name.endswith(".jeo")
    )


def read_corpus_file(name: str) -> str:
    root = resources.files(__package__).joinpath("corpus")
    return root.joinpath(name).read_text(encoding="utf-8")


def load_corpus_program(name: str) -> Program:
    return compile_source(read_corpus_file(name))


def accepted_corpus_programs() -> list[tuple[str, Program]]:
    """The corpus programs the checker accepts, in name order."""
    out = []
    for name in corpus_file_names():
        program = load_corpus_program(name)
        if check_program(program).accepted:
            out.append((name, program))
    return out


# ---------------------------------------------------------------------------
# Seeded value generation


class ValueGenerator:
    """Draws well-typed values of bounded constructor depth.

    Constructors are chosen uniformly among those that can still be
    completed within the remaining budget, so every datatype with any
    finite value at all is generatable.
    """

    def __init__(self, program: Program, rng: random.Random, max_depth: int = MAX_VALUE_DEPTH):
        self.program = program
        self.rng = rng
        self.max_depth = max_depth
        self._heights = self._min_heights(program)

    @staticmethod
    def _min_heights(program: Program) -> dict[str, float]:
        heights: dict[str, float] = {d.name: float("inf") for d in program.datatypes}
        changed = True
        while changed:
            changed = False
            for d in program.datatypes:
                for c in d.ctors:
                    h = 1 + max((heights[t] for t in c.arg_types), default=0)
                    if h < heights[d.name]:
                        heights[d.name] = h
                        changed = True
        return heights

    def value(self, type_name: str) -> Con:
        return self._draw(type_name, self.max_depth)

    def _draw(self, type_name: str, budget: int) -> Con:
        decl = self.program.datatype(type_name)
        if decl is None:
            raise ValueError(f"unknown datatype {type_name!r}")
        feasible = [
            c
            for c in decl.ctors
            if 1 + max((self._heights[t] for t in c.arg_types), default=0) <= budget
        ]
        if not feasible:
            raise ValueError(f"no value of type {type_name!r} fits depth {budget}")
        ctor = self.rng.choice(feasible)
        return Con(ctor.name, tuple(self._draw(t, budget - 1) for t in ctor.arg_types))


def _derived_rng(seed: int, *parts: str) -> random.Random:
    return random.Random(":".join((str(seed),) + parts))


# ---------------------------------------------------------------------------
# Suite results


@dataclass
class SuiteResult:
    name: str
    total: int = 0
    passed: int = 0
    failed: int = 0
    skipped: int = 0
    undecided: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0 and self.undecided == 0

    def fail(self, detail: str) -> None:
        self.failed += 1
        self.failures.append(detail)

    def summary_line(self) -> str:
        verdict = "PASS" if self.ok else "FAIL"
        return (
            f"{self.name}: {verdict}"
            f" total={self.total} passed={self.passed} failed={self.failed}"
            f" skipped={self.skipped} undecided={self.undecided}"
        )


def _show_env(env: Env) -> str:
    inner = ", ".join(f"{x} = {pretty_value(env[x])}" for x in sorted(env))
    return "{" + inner + "}"


def _show_outcome(outcome: Outcome) -> str:
    if outcome.ok:
        assert outcome.value is not None
        return pretty_value(outcome.value)
    if outcome.kind == "violation":
        return f"{outcome.violation}: {outcome.message}"
    return f"undecided: {outcome.message}"


# ---------------------------------------------------------------------------
# Recorded expectations


@dataclass(frozen=True)
class Expectation:
    file: str
    value_text: str
    direction: str  # "forward" | "invert" | "check"
    psi_mode: str
    expect: str
    line: int

    def label(self) -> str:
        if self.direction == "check":
            return f"{self.file} check -> {self.expect}"
        return f"{self.file} {self.direction} {self.value_text} [{self.psi_mode}] -> {self.expect}"


def parse_expectations(text: str) -> list[Expectation]:
    out = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = [p.strip() for p in line.split("|")]
        if len(parts) != 5:
            raise ValueError(f"expectations line {line_no}: need 5 fields, got {len(parts)}")
        file, value_text, direction, psi_mode, expect = parts
        if direction not in ("forward", "invert", "check"):
            raise ValueError(f"expectations line {line_no}: bad direction {direction!r}")
        if direction != "check" and psi_mode not in ("enforce", "skip"):
            raise ValueError(f"expectations line {line_no}: bad psi mode {psi_mode!r}")
        out.append(Expectation(file, value_text, direction, psi_mode, expect, line_no))
    return out


def bundled_expectations() -> list[Expectation]:
    return parse_expectations(read_corpus_file("expectations.txt"))


def _run_check_expectation(exp: Expectation) -> str | None:
    """None when the expectation holds, otherwise a mismatch description."""
    try:
        program = load_corpus_program(exp.file)
    except SourceError as err:
        return f"did not compile: {err}"
    report = check_program(program)
    if exp.expect == "accepted":
        if report.accepted:
            return None
        codes = sorted({d.code for v in report.functions for d in v.diagnostics})
        return f"rejected with {codes}"
    codes = {d.code for v in report.functions for d in v.diagnostics}
    if report.accepted:
        return f"accepted, expected {exp.expect}"
    if exp.expect not in codes:
        return f"rejected with {sorted(codes)}, expected {exp.expect}"
    return None


def _run_value_expectation(exp: Expectation, fuel: int | None) -> str | None:
    program = load_corpus_program(exp.file)
    value = parse_value(exp.value_text)
    opts = {} if fuel is None else {"fuel": fuel}
    outcome = run_main(
        program,
        value,
        inverted=exp.direction == "invert",
        psi_mode=exp.psi_mode,
        **opts,
    )
    if exp.expect in VIOLATION_KINDS:
        if outcome.kind == "violation" and outcome.violation == exp.expect:
            return None
        return f"got {_show_outcome(outcome)}"
    if exp.expect == "undecided":
        if outcome.kind == "undecided":
            return None
        return f"got {_show_outcome(outcome)}"
    expected = parse_value(exp.expect)
    if outcome.ok and outcome.value == expected:
        return None
    return f"got {_show_outcome(outcome)}"


def expectation_suite(fuel: int | None = None) -> SuiteResult:
    result = SuiteResult("expectations")
    for exp in bundled_expectations():
        result.total += 1
        if exp.direction == "check":
            mismatch = _run_check_expectation(exp)
        else:
            mismatch = _run_value_expectation(exp, fuel)
        if mismatch is None:
            result.passed += 1
        else:
            result.fail(f"{exp.label()}: {mismatch}")
    return result


# ---------------------------------------------------------------------------
# Environment inference round trip

# Evaluating a checked body under a generated environment and then
# inferring the environment back from the value must restore it exactly.
# Samples whose forward run faults are skipped: the round trip is a
# statement about successful evaluations.


def theorem_env_round_trip(seed: int, cases: int) -> SuiteResult:
    result = SuiteResult("env-inference-round-trip")
    for name, program in accepted_corpus_programs():
        for f in program.functions:
            rng = _derived_rng(seed, "env", name, f.name)
            generator = ValueGenerator(program, rng)
            typing = bind_types(program, f.param, f.arg_type)
            for _ in range(cases):
                env = {x: generator.value(typing[x]) for x in sorted(typing)}
                result.total += 1
                forward = evaluate(program, f.body, dict(env))
                if forward.kind == "violation":
                    result.skipped += 1
                    continue
                if forward.kind == "undecided":
                    result.undecided += 1
                    result.failures.append(
                        f"{name}:{f.name} under {_show_env(env)}: forward undecided"
                    )
                    continue
                assert forward.value is not None
                inferred = infer_env_down(program, f.body, forward.value)
                if inferred.kind == "undecided":
                    result.undecided += 1
                    result.failures.append(
                        f"{name}:{f.name} under {_show_env(env)}: inference undecided"
                    )
                    continue
                if not inferred.found or inferred.env != env:
                    got = _show_env(inferred.env) if inferred.found else inferred.kind
                    result.fail(
                        f"{name}:{f.name}: evaluated {_show_env(env)}"
                        f" to {pretty_value(forward.value)}, inferred {got}"
                    )
                    continue
                replay = evaluate(program, f.body, dict(inferred.env))
                if not replay.ok or replay.value != forward.value:
                    result.fail(
                        f"{name}:{f.name}: replay of inferred environment"
                        f" gave {_show_outcome(replay)}"
                    )
                    continue
                result.passed += 1
    return result


# ---------------------------------------------------------------------------
# Inversion round trip

# The invertible corpus functions are total on well-typed input, so the
# forward leg must succeed and compose with the inverse to the identity.
# The backward leg is conditional: generated outputs can fall outside a
# function's image, which the inverse reports as a violation.

INVERSION_CORPUS = "invertibles.jeo"


def corollary_inversion_round_trip(seed: int, cases: int) -> SuiteResult:
    result = SuiteResult("inversion-round-trip")
    program = load_corpus_program(INVERSION_CORPUS)
    for f in program.functions:
        rng = _derived_rng(seed, "inv", f.name)
        generator = ValueGenerator(program, rng)
        forward_ref = FunRef(f.name)
        inverse_ref = FunRef(f.name, 1)
        for _ in range(cases):
            v = generator.value(f.arg_type)
            result.total += 1
            out = evaluate(program, Apply(forward_ref, v))
            if not out.ok:
                result.fail(f"{f.name} {pretty_value(v)}: {_show_outcome(out)}")
            else:
                assert out.value is not None
                back = evaluate(program, Apply(inverse_ref, out.value))
                if back.ok and back.value == v:
                    result.passed += 1
                else:
                    result.fail(
                        f"(invert {f.name}) ({f.name} {pretty_value(v)}):"
                        f" expected {pretty_value(v)}, got {_show_outcome(back)}"
                    )
            w = generator.value(f.result_type)
            result.total += 1
            pre = evaluate(program, Apply(inverse_ref, w))
            if pre.kind == "violation":
                result.skipped += 1
                continue
            if pre.kind == "undecided":
                result.undecided += 1
                result.failures.append(
                    f"(invert {f.name}) {pretty_value(w)}: undecided"
                )
                continue
            assert pre.value is not None
            again = evaluate(program, Apply(forward_ref, pre.value))
            if again.ok and again.value == w:
                result.passed += 1
            else:
                result.fail(
                    f"{f.name} ((invert {f.name}) {pretty_value(w)}):"
                    f" expected {pretty_value(w)}, got {_show_outcome(again)}"
                )
    return result


# ---------------------------------------------------------------------------
# Parse/print round trip


def parse_print_round_trip() -> SuiteResult:
    result = SuiteResult("parse-print-round-trip")
    for name in corpus_file_names():
        result.total += 1
        text = read_corpus_file(name)
        first = parse_program(text)
        printed = pretty_program(first)
        try:
            second = parse_program(printed)
        except SourceError as err:
            result.fail(f"{name}: printed form does not parse: {err}")
            continue
        if second != first:
            result.fail(f"{name}: reparsed program differs")
            continue
        if pretty_program(second) != printed:
            result.fail(f"{name}: printing is not stable")
            continue
        result.passed += 1
    return result


# ---------------------------------------------------------------------------
# Runner


def run_suites(
    seed: int = 42,
    cases: int = 100,
    name_filter: str | None = None,
    fuel: int | None = None,
) -> list[SuiteResult]:
    runners = [
        ("expectations", lambda: expectation_suite(fuel)),
        ("env-inference-round-trip", lambda: theorem_env_round_trip(seed, cases)),
        ("inversion-round-trip", lambda: corollary_inversion_round_trip(seed, cases)),
        ("parse-print-round-trip", parse_print_round_trip),
    ]
    results = []
    for suite_name, run in runners:
        if name_filter is not None and name_filter not in suite_name:
            continue
        results.append(run())
    return results
