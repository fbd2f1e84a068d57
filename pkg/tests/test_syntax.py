"""Core term and environment algebra."""

import pytest

from jeopardy.syntax import (
    Apply,
    Case,
    Con,
    EnvClash,
    FunRef,
    Let,
    Var,
    compose,
    ensure_value,
    instantiate,
    is_core,
    is_internal_name,
    is_pattern,
    is_valid_name,
    is_value,
    pattern_vars,
    subtract,
    unify,
)
from jeopardy.diagnostics import Span

ZERO = Con("zero")
ONE = Con("suc", (ZERO,))


def pair(a, b):
    return Con("pair", (a, b))


class TestShapes:
    def test_patterns_and_values(self):
        assert is_pattern(Var("x"))
        assert is_pattern(Con("suc", (Var("x"),)))
        assert not is_pattern(Apply(FunRef("f"), Var("x")))
        assert is_value(ONE)
        assert not is_value(Con("suc", (Var("x"),)))

    def test_spans_do_not_affect_equality(self):
        a = Con("zero", (), Span(1, 1))
        b = Con("zero", (), Span(9, 9))
        assert a == b
        assert hash(a) == hash(b)

    def test_core_excludes_let(self):
        body = Let(Var("x"), None, ZERO, Var("x"))
        assert not is_core(body)
        assert is_core(Case(Var("s"), "nat", ((Var("x"), Var("x")),)))

    def test_ensure_value(self):
        assert ensure_value(ONE) is ONE
        with pytest.raises(ValueError):
            ensure_value(Var("x"))

    def test_pattern_vars_keeps_duplicates(self):
        p = pair(Var("x"), Con("suc", (Var("x"),)))
        assert pattern_vars(p) == ["x", "x"]

    def test_fun_ref_parity(self):
        ref = FunRef("f")
        assert not ref.inverted
        assert ref.invert().inverted
        assert not ref.invert().invert().inverted


class TestEnvironments:
    def test_compose_disjoint(self):
        assert compose({"x": ZERO}, {"y": ONE}) == {"x": ZERO, "y": ONE}

    def test_compose_rejects_any_overlap(self):
        with pytest.raises(EnvClash) as exc:
            compose({"x": ZERO}, {"x": ZERO})
        assert exc.value.name == "x"

    def test_compose_empty(self):
        assert compose() == {}
        assert compose({"x": ZERO}) == {"x": ZERO}

    def test_subtract(self):
        env = {"x": ZERO, "y": ONE}
        assert subtract(env, ["x"]) == {"y": ONE}
        assert env == {"x": ZERO, "y": ONE}, "subtract must not mutate"

    def test_env_equality_is_extensional(self):
        a = {"x": ZERO, "y": ONE}
        b = {"y": ONE, "x": ZERO}
        assert a == b


class TestUnify:
    def test_variable_binds(self):
        assert unify(ONE, Var("n")) == {"n": ONE}

    def test_constructor_recurses(self):
        got = unify(pair(ZERO, ONE), pair(Var("a"), Var("b")))
        assert got == {"a": ZERO, "b": ONE}

    def test_name_mismatch(self):
        assert unify(ZERO, Con("suc", (Var("n"),))) is None

    def test_arity_mismatch(self):
        assert unify(Con("pair", (ZERO,)), pair(Var("a"), Var("b"))) is None

    def test_repeated_variable_must_agree(self):
        p = pair(Var("x"), Var("x"))
        assert unify(pair(ZERO, ZERO), p) == {"x": ZERO}
        assert unify(pair(ZERO, ONE), p) is None

    def test_ground_pattern(self):
        assert unify(ONE, ONE) == {}
        assert unify(ONE, ZERO) is None


class TestInstantiate:
    def test_round_trip_with_unify(self):
        p = Con("cons", (Var("h"), Var("t")))
        env = {"h": ZERO, "t": Con("nil")}
        v = instantiate(p, env)
        assert unify(v, p) == env

    def test_missing_binding(self):
        with pytest.raises(KeyError):
            instantiate(Var("n"), {})


class TestNames:
    def test_valid_names(self):
        assert is_valid_name("map-f")
        assert is_valid_name("x'")
        assert is_valid_name("fib_pair2")
        assert not is_valid_name("Case")
        assert not is_valid_name("case"), "reserved"
        assert not is_valid_name("3x")

    def test_internal_names(self):
        assert is_internal_name("%0")
        assert is_internal_name("%12")
        assert not is_internal_name("%x")
        assert not is_internal_name("x")
        assert is_valid_name("%0"), "internal names are usable once minted"
