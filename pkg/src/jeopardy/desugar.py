"""Lowering surface declarations to the core language.

Three rewrites happen here (the tuple/cons/nil sugar is already gone by
parse time):

  * constructor terms with non-pattern arguments lift each such argument
    into a case over a fresh variable, first offender outermost, each
    case annotated with the constructor's declared argument type;
  * an application on a non-pattern argument lifts the argument the same
    way, annotated with the callee's input type;
  * `let` becomes a single-branch case, and consecutive clauses of one
    function merge into a single definition over a fresh selector.

Fresh variables are `%0, %1, ...` with one counter per function.  The
`%` prefix cannot be written in source, so no capture is possible.
"""

from __future__ import annotations

from .diagnostics import NO_SPAN, SourceError, Span
from .syntax import (
    Apply,
    Case,
    Clause,
    Con,
    Ctor,
    FunDef,
    FunRef,
    Let,
    Program,
    SurfaceProgram,
    Term,
    Var,
    is_pattern,
)


class Desugarer:
    def __init__(self, surface: SurfaceProgram):
        self.surface = surface
        self.ctors: dict[str, tuple[str, Ctor]] = {}
        for d in surface.datatypes:
            for c in d.ctors:
                self.ctors.setdefault(c.name, (d.name, c))
        self.signatures: dict[str, tuple[str, str]] = {}
        self._counter = 0

    def fresh(self) -> Var:
        v = Var(f"%{self._counter}")
        self._counter += 1
        return v

    # ------------------------------------------------------------------

    def run(self) -> Program:
        groups = self._grouped_clauses()
        for name, clauses in groups:
            self.signatures[name] = self._signature(name, clauses)
        if len(self.surface.mains) != 1:
            span = self.surface.mains[1].span if self.surface.mains else NO_SPAN
            raise SourceError.single(
                "D007",
                f"expected exactly one main declaration, found {len(self.surface.mains)}",
                span,
            )
        functions = tuple(self._function(name, cs) for name, cs in groups)
        return Program(self.surface.datatypes, functions, self.surface.mains[0])

    def _grouped_clauses(self) -> list[tuple[str, list[Clause]]]:
        groups: list[tuple[str, list[Clause]]] = []
        seen: set[str] = set()
        for c in self.surface.clauses:
            if groups and groups[-1][0] == c.name:
                groups[-1][1].append(c)
                continue
            if c.name in seen:
                raise SourceError.single(
                    "D004",
                    f"clauses of {c.name!r} must be consecutive",
                    c.span,
                )
            seen.add(c.name)
            groups.append((c.name, [c]))
        return groups

    def _signature(self, name: str, clauses: list[Clause]) -> tuple[str, str]:
        annotated = [
            (c.arg_type, c.result_type, c.span)
            for c in clauses
            if c.arg_type is not None
        ]
        if not annotated:
            raise SourceError.single(
                "D001",
                f"function {name!r} has no type annotation on any clause",
                clauses[0].span,
            )
        arg_t, res_t, _ = annotated[0]
        for a, r, span in annotated[1:]:
            if (a, r) != (arg_t, res_t):
                raise SourceError.single(
                    "D002",
                    f"clauses of {name!r} carry conflicting type annotations",
                    span,
                )
        assert arg_t is not None and res_t is not None
        return arg_t, res_t

    def _function(self, name: str, clauses: list[Clause]) -> FunDef:
        arg_t, res_t = self.signatures[name]
        self._counter = 0
        if len(clauses) == 1:
            c = clauses[0]
            return FunDef(name, c.pattern, arg_t, res_t, self.term(c.body), c.span)
        selector = self.fresh()
        branches = tuple((c.pattern, self.term(c.body)) for c in clauses)
        body = Case(selector, arg_t, branches, clauses[0].span)
        return FunDef(name, selector, arg_t, res_t, body, clauses[0].span)

    # ------------------------------------------------------------------
    # Terms

    def term(self, t: Term) -> Term:
        match t:
            case Var():
                return t
            case Con() if is_pattern(t):
                return t
            case Con(name, args, span):
                return self._lift_constructor(name, args, span)
            case Apply(ref, arg, span):
                if is_pattern(arg):
                    return t
                selector = self.term(arg)
                v = self.fresh()
                return Case(
                    selector,
                    self._input_type(ref, span),
                    ((v, Apply(ref, v, span)),),
                    span,
                )
            case Case(selector, ty, branches, span):
                return Case(
                    self.term(selector),
                    ty,
                    tuple((p, self.term(b)) for p, b in branches),
                    span,
                )
            case Let(pat, ty, bound, body, span):
                annotation = ty or self._let_type(bound, span)
                return Case(
                    self.term(bound), annotation, ((pat, self.term(body)),), span
                )
        raise AssertionError(f"unhandled term {t!r}")

    def _lift_constructor(self, name: str, args: tuple[Term, ...], span: Span) -> Term:
        found = self.ctors.get(name)
        if found is None:
            raise SourceError.single("D005", f"unknown constructor {name!r}", span)
        _, ctor = found
        lifted: list[tuple[Var, Term, str]] = []
        new_args: list[Term] = []
        for k, a in enumerate(args):
            if is_pattern(a):
                new_args.append(a)
                continue
            if k >= len(ctor.arg_types):
                raise SourceError.single(
                    "D005",
                    f"constructor {name!r} takes {len(ctor.arg_types)} arguments",
                    span,
                )
            selector = self.term(a)
            v = self.fresh()
            lifted.append((v, selector, ctor.arg_types[k]))
            new_args.append(v)
        out: Term = Con(name, tuple(new_args), span)
        for v, selector, ty in reversed(lifted):
            out = Case(selector, ty, ((v, out),), span)
        return out

    def _input_type(self, ref: FunRef, span: Span) -> str:
        sig = self.signatures.get(ref.base)
        if sig is None:
            raise SourceError.single("D006", f"unknown function {ref.base!r}", span)
        arg_t, res_t = sig
        return res_t if ref.inverted else arg_t

    def _let_type(self, bound: Term, span: Span) -> str:
        """Annotation for an unannotated let, read off the bound term."""
        match bound:
            case Apply(ref, _, s):
                sig = self.signatures.get(ref.base)
                if sig is None:
                    raise SourceError.single(
                        "D006", f"unknown function {ref.base!r}", s
                    )
                arg_t, res_t = sig
                return arg_t if ref.inverted else res_t
            case Con(name, _, s):
                found = self.ctors.get(name)
                if found is None:
                    raise SourceError.single(
                        "D005", f"unknown constructor {name!r}", s
                    )
                return found[0]
            case Let(_, _, _, body, _):
                return self._let_type(body, span)
        raise SourceError.single(
            "D003",
            "cannot infer a type for this let; annotate it as `let p : tau = ...`",
            span,
        )


def desugar(surface: SurfaceProgram) -> Program:
    return Desugarer(surface).run()
