"""Rendering programs, terms, and values back to concrete syntax.

Ground constructor trees print with the pair/cons/nil sugar; everything
else prints in plain bracket form.  The output re-parses to a
structurally equal tree: atoms that could extend rightward (chains,
applications) are parenthesized where the grammar demands an atom, and
a non-final case branch whose body is itself a case or let is wrapped
so it cannot capture the following branches.
"""

from __future__ import annotations

from .syntax import (
    Apply,
    Case,
    Clause,
    Con,
    DataDecl,
    FunDef,
    FunRef,
    Let,
    MainDecl,
    Program,
    SurfaceProgram,
    Term,
    Var,
    is_value,
)


def pretty_value(v: Con) -> str:
    return _value(v, False)


def _value(v: Con, atom: bool) -> str:
    if v.name == "nil" and not v.args:
        return "[]"
    if v.name == "pair" and len(v.args) == 2:
        a, b = v.args
        assert isinstance(a, Con) and isinstance(b, Con)
        return f"({_value(a, False)}, {_value(b, False)})"
    if v.name == "cons" and len(v.args) == 2:
        h, t = v.args
        assert isinstance(h, Con) and isinstance(t, Con)
        s = f"{_value(h, True)} : {_value(t, False)}"
        return f"({s})" if atom else s
    if not v.args:
        return f"[{v.name}]"
    args = " ".join(_value(a, True) for a in v.args if isinstance(a, Con))
    return f"[{v.name} {args}]"


def pretty_fun_ref(ref: FunRef) -> str:
    s = ref.base
    for _ in range(ref.inversions):
        s = f"(invert {s})"
    return s


def pretty_term(t: Term) -> str:
    match t:
        case Var(x):
            return x
        case Con() if is_value(t):
            return pretty_value(t)
        case Con(name, args):
            if not args:
                return f"[{name}]"
            return f"[{name} " + " ".join(_atom(a) for a in args) + "]"
        case Apply(ref, arg):
            return f"{pretty_fun_ref(ref)} {_atom(arg)}"
        case Case(selector, ty, branches):
            sel = pretty_term(selector)
            if isinstance(selector, (Case, Let)):
                sel = f"({sel})"
            rendered = []
            for k, (p, b) in enumerate(branches):
                body = pretty_term(b)
                if k + 1 < len(branches) and isinstance(b, (Case, Let)):
                    body = f"({body})"
                rendered.append(f"{pretty_term(p)} -> {body}")
            return f"case {sel} : {ty} of " + " ; ".join(rendered)
        case Let(p, ty, bound, body):
            ann = f" : {ty}" if ty else ""
            return (
                f"let {pretty_term(p)}{ann} = {pretty_term(bound)}"
                f" in {pretty_term(body)}"
            )
    raise AssertionError(f"unhandled term {t!r}")


def _atom(t: Term) -> str:
    """A term in argument position; parenthesize whatever could extend."""
    s = pretty_term(t)
    if isinstance(t, (Apply, Case, Let)):
        return f"({s})"
    if isinstance(t, Con) and t.name == "cons" and len(t.args) == 2 and is_value(t):
        return f"({s})"
    return s


# ---------------------------------------------------------------------------
# Declarations


def _data(d: DataDecl) -> str:
    ctors = []
    for c in d.ctors:
        inner = c.name if not c.arg_types else c.name + " " + " ".join(c.arg_types)
        ctors.append(f"[{inner}]")
    return f"data {d.name} = " + " ".join(ctors) + "."


def _clause(c: Clause) -> str:
    if c.arg_type is not None:
        head = f"{c.name} ({pretty_term(c.pattern)} : {c.arg_type}) : {c.result_type}"
    else:
        head = f"{c.name} {_atom(c.pattern)}"
    return f"{head} = {pretty_term(c.body)}."


def _fun(f: FunDef) -> str:
    head = f"{f.name} ({pretty_term(f.param)} : {f.arg_type}) : {f.result_type}"
    return f"{head} = {pretty_term(f.body)}."


def _main(m: MainDecl) -> str:
    return f"main {pretty_fun_ref(m.ref)}."


def pretty_program(p: Program | SurfaceProgram) -> str:
    lines = [_data(d) for d in p.datatypes]
    if isinstance(p, SurfaceProgram):
        lines += [_clause(c) for c in p.clauses]
        lines += [_main(m) for m in p.mains]
    else:
        lines += [_fun(f) for f in p.functions]
        lines.append(_main(p.main))
    return "\n".join(lines) + "\n"
