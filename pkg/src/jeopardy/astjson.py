"""Stable JSON encoding of core programs.

Schema (version 1): the document is an object with `schemaVersion`,
`datatypes`, `functions`, and `main`.  Node kinds:

  data  {kind, name, ctors: [{name, argTypes}]}
  fun   {kind, name, param, argType, resultType, body}
  main  {kind, ref: {base, inversions}}
  pat   {kind, pattern}       wraps a var/con tree in pattern position
  var   {kind, name}
  con   {kind, name, args}
  app   {kind, ref, arg}      arg is a pat node
  case  {kind, selector, type, branches: [{pattern, body}]}

Keys are emitted sorted with fixed indentation, so equal programs
serialize byte-identically.
"""

from __future__ import annotations

import json

from .syntax import Apply, Case, Con, FunRef, Program, Term, Var, is_pattern


def _pattern_tree(p: Term) -> dict:
    match p:
        case Var(x):
            return {"kind": "var", "name": x}
        case Con(name, args):
            return {"kind": "con", "name": name, "args": [_pattern_tree(a) for a in args]}
    raise ValueError(f"not a pattern: {p!r}")


def _pat(p: Term) -> dict:
    return {"kind": "pat", "pattern": _pattern_tree(p)}


def _ref(ref: FunRef) -> dict:
    return {"base": ref.base, "inversions": ref.inversions}


def _term(t: Term) -> dict:
    if is_pattern(t):
        return _pat(t)
    match t:
        case Apply(ref, arg):
            return {"kind": "app", "ref": _ref(ref), "arg": _term(arg)}
        case Case(selector, ty, branches):
            return {
                "kind": "case",
                "selector": _term(selector),
                "type": ty,
                "branches": [
                    {"pattern": _pat(p), "body": _term(b)} for p, b in branches
                ],
            }
    raise ValueError(f"not a core term: {t!r}")


def ast_document(program: Program) -> dict:
    return {
        "schemaVersion": 1,
        "datatypes": [
            {
                "kind": "data",
                "name": d.name,
                "ctors": [
                    {"name": c.name, "argTypes": list(c.arg_types)} for c in d.ctors
                ],
            }
            for d in program.datatypes
        ],
        "functions": [
            {
                "kind": "fun",
                "name": f.name,
                "param": _pat(f.param),
                "argType": f.arg_type,
                "resultType": f.result_type,
                "body": _term(f.body),
            }
            for f in program.functions
        ],
        "main": {"kind": "main", "ref": _ref(program.main.ref)},
    }


def emit_ast(program: Program) -> str:
    return json.dumps(ast_document(program), indent=2, sort_keys=True) + "\n"
