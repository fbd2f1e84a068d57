"""Linear type checking.

Variables must be consumed exactly once: no reuse, no discard.  Instead
of searching for an environment split at every constructor and case,
each term synthesizes the exact environment it consumes, bottom-up;
callers then verify disjointness (reuse) and exact coverage (discard).

Error codes: T001 unbound variable, T002 reuse, T003 unused variable or
branch-residual disagreement, T004 branch result-type mismatch, T005
signature mismatch (wrong constructor/argument/annotation/result type,
unknown names at type level).
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagnostics import Diagnostic, SourceError, Span
from .syntax import (
    Apply,
    Case,
    Con,
    EnvClash,
    FunRef,
    Program,
    Term,
    Var,
    compose,
    subtract,
)

TypingEnv = dict[str, str]


@dataclass(frozen=True)
class FunctionVerdict:
    name: str
    accepted: bool
    diagnostics: tuple[Diagnostic, ...] = ()


@dataclass(frozen=True)
class TypeReport:
    functions: tuple[FunctionVerdict, ...]
    main_base: str

    @property
    def accepted(self) -> bool:
        if not all(v.accepted for v in self.functions):
            return False
        return any(v.name == self.main_base for v in self.functions)

    def verdict(self, name: str) -> FunctionVerdict | None:
        for v in self.functions:
            if v.name == name:
                return v
        return None


def _fail(code: str, message: str, span: Span) -> SourceError:
    return SourceError.single(code, message, span)


def _compose(span: Span, *envs: TypingEnv) -> TypingEnv:
    try:
        return compose(*envs)  # type: ignore[arg-type]
    except EnvClash as e:
        raise _fail("T002", f"variable {e.name!r} is consumed more than once", span)


def effective_signature(program: Program, ref: FunRef, span: Span) -> tuple[str, str]:
    """Input and output type of a callable, swapped once per `invert`."""
    f = program.function(ref.base)
    if f is None:
        raise _fail("T005", f"unknown function {ref.base!r}", span)
    if ref.inverted:
        return f.result_type, f.arg_type
    return f.arg_type, f.result_type


# ---------------------------------------------------------------------------
# Pattern binding


def bind_types(program: Program, pattern: Term, tau: str) -> TypingEnv:
    """The typing environment a pattern binds when matched at type tau."""
    match pattern:
        case Var(x):
            return {x: tau}
        case Con(name, args, span):
            found = program.ctor(name)
            if found is None:
                raise _fail("T005", f"unknown constructor {name!r}", span)
            owner, ctor = found
            if owner.name != tau:
                raise _fail(
                    "T005",
                    f"constructor {name!r} belongs to {owner.name!r}, not {tau!r}",
                    span,
                )
            if len(args) != len(ctor.arg_types):
                raise _fail(
                    "T005",
                    f"constructor {name!r} takes {len(ctor.arg_types)} arguments",
                    span,
                )
            out: TypingEnv = {}
            for a, ty in zip(args, ctor.arg_types):
                out = _compose(span, out, bind_types(program, a, ty))
            return out
    raise ValueError(f"not a pattern: {pattern!r}")


# ---------------------------------------------------------------------------
# Term checking (requirement synthesis)


def _synth(program: Program, scope: TypingEnv, t: Term) -> tuple[TypingEnv, str]:
    """Exact environment consumed by t, and t's type, under scope."""
    match t:
        case Var(x, span):
            if x not in scope:
                raise _fail("T001", f"unbound variable {x!r}", span)
            return {x: scope[x]}, scope[x]
        case Con(name, args, span):
            found = program.ctor(name)
            if found is None:
                raise _fail("T005", f"unknown constructor {name!r}", span)
            owner, ctor = found
            if len(args) != len(ctor.arg_types):
                raise _fail(
                    "T005",
                    f"constructor {name!r} takes {len(ctor.arg_types)} arguments",
                    span,
                )
            req: TypingEnv = {}
            for a, expected in zip(args, ctor.arg_types):
                req_a, ty_a = _synth(program, scope, a)
                if ty_a != expected:
                    raise _fail(
                        "T005",
                        f"argument of {name!r} has type {ty_a!r}, expected {expected!r}",
                        span,
                    )
                req = _compose(span, req, req_a)
            return req, owner.name
        case Apply(ref, arg, span):
            t_in, t_out = effective_signature(program, ref, span)
            req_a, ty_a = _synth(program, scope, arg)
            if ty_a != t_in:
                raise _fail(
                    "T005",
                    f"argument to {ref.base!r} has type {ty_a!r}, expected {t_in!r}",
                    span,
                )
            return req_a, t_out
        case Case(selector, annotation, branches, span):
            req_sel, ty_sel = _synth(program, scope, selector)
            if ty_sel != annotation:
                raise _fail(
                    "T005",
                    f"selector has type {ty_sel!r}, annotation says {annotation!r}",
                    span,
                )
            residual: TypingEnv | None = None
            result: str | None = None
            for p, body in branches:
                bound = bind_types(program, p, annotation)
                inner = dict(scope)
                inner.update(bound)
                req_b, ty_b = _synth(program, inner, body)
                if result is None:
                    result = ty_b
                elif ty_b != result:
                    raise _fail(
                        "T004",
                        f"branch bodies disagree: {result!r} vs {ty_b!r}",
                        span,
                    )
                for x in bound:
                    if x not in req_b:
                        raise _fail(
                            "T003", f"pattern variable {x!r} is never used", span
                        )
                leftover = subtract(req_b, bound)  # type: ignore[arg-type]
                if residual is None:
                    residual = leftover
                elif leftover != residual:
                    off = sorted(set(leftover) ^ set(residual))[0]
                    raise _fail(
                        "T003",
                        f"variable {off!r} is consumed in some branches only",
                        span,
                    )
            assert residual is not None and result is not None
            return _compose(span, residual, req_sel), result
    raise ValueError(f"not a core term: {t!r}")


def check_term(program: Program, sigma: TypingEnv, t: Term) -> str:
    """Type of t under sigma, with sigma consumed exactly."""
    req, tau = _synth(program, dict(sigma), t)
    for x in sigma:
        if x not in req:
            raise _fail("T003", f"variable {x!r} is never used", t.span)
    return tau


def check_inverse(program: Program, sigma: TypingEnv, t: Apply) -> str:
    """Type an application under inversion parity.

    Even inversion counts reduce to plain checking; odd counts swap the
    signature.  Both are exactly what `check_term` already does.
    """
    return check_term(program, sigma, t)


# ---------------------------------------------------------------------------
# Inverse inference: the environment under which t has type tau


def unbind_types(program: Program, t: Term, tau: str) -> TypingEnv:
    match t:
        case Var(x):
            return {x: tau}
        case Con(name, args, span):
            found = program.ctor(name)
            if found is None:
                raise _fail("T005", f"unknown constructor {name!r}", span)
            owner, ctor = found
            if owner.name != tau:
                raise _fail(
                    "T005",
                    f"constructor {name!r} belongs to {owner.name!r}, not {tau!r}",
                    span,
                )
            if len(args) != len(ctor.arg_types):
                raise _fail(
                    "T005",
                    f"constructor {name!r} takes {len(ctor.arg_types)} arguments",
                    span,
                )
            out: TypingEnv = {}
            for a, ty in zip(args, ctor.arg_types):
                out = _compose(span, out, unbind_types(program, a, ty))
            return out
        case Apply(ref, arg, span):
            t_in, t_out = effective_signature(program, ref, span)
            if tau != t_out:
                raise _fail(
                    "T005",
                    f"application of {ref.base!r} has type {t_out!r}, not {tau!r}",
                    span,
                )
            return unbind_types(program, arg, t_in)
        case Case(selector, annotation, branches, span):
            residual: TypingEnv | None = None
            for p, body in branches:
                bound = bind_types(program, p, annotation)
                env_b = unbind_types(program, body, tau)
                leftover = subtract(env_b, bound)  # type: ignore[arg-type]
                if residual is None:
                    residual = leftover
                elif leftover != residual:
                    off = sorted(set(leftover) ^ set(residual))[0]
                    raise _fail(
                        "T003",
                        f"variable {off!r} appears in some branches only",
                        span,
                    )
            assert residual is not None
            env_sel = unbind_types(program, selector, annotation)
            return _compose(span, residual, env_sel)
    raise ValueError(f"not a core term: {t!r}")


# ---------------------------------------------------------------------------
# Whole programs


def check_program(program: Program) -> TypeReport:
    verdicts = []
    for f in program.functions:
        diags: tuple[Diagnostic, ...] = ()
        try:
            sigma = bind_types(program, f.param, f.arg_type)
            tau = check_term(program, sigma, f.body)
            if tau != f.result_type:
                raise _fail(
                    "T005",
                    f"body of {f.name!r} has type {tau!r}, declared {f.result_type!r}",
                    f.span,
                )
        except SourceError as e:
            diags = tuple(e.diagnostics)
        verdicts.append(FunctionVerdict(f.name, not diags, diags))
    return TypeReport(tuple(verdicts), program.main.ref.base)
