"""Well-formedness checks over the lowered program."""

import pytest

from jeopardy.desugar import desugar
from jeopardy.diagnostics import SourceError
from jeopardy.parser import parse_program
from jeopardy.validate import validate

NAT = "data nat = [zero] [suc nat].\n"


def run(source):
    return validate(desugar(parse_program(source)))


def codes(exc):
    return [d.code for d in exc.value.diagnostics]


def test_corpus_is_well_formed(corpus_programs):
    # The conftest fixture already validates; reaching here is the test.
    assert len(corpus_programs) == 6


def test_duplicate_datatype():
    with pytest.raises(SourceError) as exc:
        run(NAT + "data nat = [zero].\nf (n : nat) : nat = n.\nmain f.")
    assert "V001" in codes(exc)


def test_duplicate_constructor_across_types():
    with pytest.raises(SourceError) as exc:
        run(NAT + "data also = [zero].\nf (n : nat) : nat = n.\nmain f.")
    assert "V002" in codes(exc)


def test_duplicate_function():
    src = (
        NAT
        + "f ([zero] : nat) : nat = [zero].\n"
        + "g (n : nat) : nat = n.\n"
        + "f ([suc k] : nat) : nat = k.\n"
        + "main f."
    )
    # Non-consecutive duplicate groups are already a lowering error, so
    # build the duplicate via two complete single-clause groups instead.
    with pytest.raises(SourceError):
        run(src)


def test_duplicate_function_definition_reported():
    from jeopardy.syntax import (
        Ctor,
        DataDecl,
        FunDef,
        FunRef,
        MainDecl,
        Program,
        Var,
    )

    nat = DataDecl("nat", (Ctor("zero", ()), Ctor("suc", ("nat",))))
    f = FunDef("f", Var("n"), "nat", "nat", Var("n"))
    prog = Program((nat,), (f, f), MainDecl(FunRef("f")))
    with pytest.raises(SourceError) as exc:
        validate(prog)
    assert "V003" in codes(exc)


def test_unknown_type_in_constructor_fields():
    with pytest.raises(SourceError) as exc:
        run("data t = [box wat].\nf (x : t) : t = x.\nmain f.")
    assert "V004" in codes(exc)


def test_unknown_type_in_signature():
    with pytest.raises(SourceError) as exc:
        run(NAT + "f (n : wat) : nat = n.\nmain f.")
    assert "V004" in codes(exc)


def test_unknown_constructor_in_pattern():
    with pytest.raises(SourceError) as exc:
        run(NAT + "f ([box] : nat) : nat = [zero].\nmain f.")
    assert "V005" in codes(exc)


def test_constructor_arity_is_enforced():
    with pytest.raises(SourceError) as exc:
        run(NAT + "f ([suc] : nat) : nat = [zero].\nmain f.")
    assert "V005" in codes(exc)


def test_unknown_function_in_main():
    with pytest.raises(SourceError) as exc:
        run(NAT + "f (n : nat) : nat = n.\nmain g.")
    assert "V006" in codes(exc)


def test_unknown_function_in_body():
    with pytest.raises(SourceError) as exc:
        run(NAT + "f (n : nat) : nat = g n.\nmain f.")
    assert "V006" in codes(exc)


def test_case_annotation_must_name_a_type():
    with pytest.raises(SourceError) as exc:
        run(NAT + "f (n : nat) : nat = case n : wat of x -> x.\nmain f.")
    assert "V004" in codes(exc)


def test_all_problems_reported_together():
    src = NAT + "f (n : wat) : huh = g n.\nmain f."
    with pytest.raises(SourceError) as exc:
        run(src)
    got = codes(exc)
    assert got.count("V004") == 2
    assert "V006" in got
