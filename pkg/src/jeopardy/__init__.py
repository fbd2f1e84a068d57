"""A reference implementation of an invertible first-order functional language.

Programs are first-order functions over algebraic data, checked so that
every variable is consumed exactly once, and run by a reversible
interpreter that can apply any function forwards or backwards.  The
usual entry points:

    program = compile_source(text)        # parse -> desugar -> validate
    report = check_program(program)       # linear and type discipline
    outcome = run_main(program, value)    # forward or inverted evaluation
"""

from .astjson import ast_document, emit_ast
from .desugar import desugar
from .diagnostics import NO_SPAN, Diagnostic, SourceError, Span
from .interp import (
    DEFAULT_FUEL,
    LINEARITY_FAULT,
    MATCH_FAILURE,
    PSI_VIOLATION,
    UNBOUND_VARIABLE,
    UNKNOWN_FUNCTION,
    Evaluator,
    InferResult,
    Outcome,
    evaluate,
    evaluate_up,
    infer_env_down,
    infer_env_up,
    run_main,
)
from .parser import parse_program, parse_term, parse_value
from .pretty import pretty_program, pretty_term, pretty_value
from .suites import compile_source, run_suites
from .syntax import (
    Apply,
    Case,
    Con,
    DataDecl,
    FunDef,
    FunRef,
    Let,
    MainDecl,
    Program,
    SurfaceProgram,
    Var,
)
from .typecheck import (
    TypeReport,
    bind_types,
    check_inverse,
    check_program,
    check_term,
    unbind_types,
)
from .validate import validate

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_FUEL",
    "LINEARITY_FAULT",
    "MATCH_FAILURE",
    "PSI_VIOLATION",
    "UNBOUND_VARIABLE",
    "UNKNOWN_FUNCTION",
    "NO_SPAN",
    "Apply",
    "Case",
    "Con",
    "DataDecl",
    "Diagnostic",
    "Evaluator",
    "FunDef",
    "FunRef",
    "InferResult",
    "Let",
    "MainDecl",
    "Outcome",
    "Program",
    "SourceError",
    "Span",
    "SurfaceProgram",
    "TypeReport",
    "Var",
    "ast_document",
    "bind_types",
    "check_inverse",
    "check_program",
    "check_term",
    "compile_source",
    "desugar",
    "emit_ast",
    "evaluate",
    "evaluate_up",
    "infer_env_down",
    "infer_env_up",
    "parse_program",
    "parse_term",
    "parse_value",
    "pretty_program",
    "pretty_term",
    "pretty_value",
    "run_main",
    "run_suites",
    "unbind_types",
    "validate",
]
