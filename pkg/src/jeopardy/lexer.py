"""Tokenizer.

The language has no literals beyond names and punctuation, so the lexer
is a short hand-rolled scanner.  The one subtlety is the dash: it can
continue a name (`map-f`), open a comment (`--`), or begin an arrow
(`->`).  A dash continues a name only when the character after it could
itself continue a name.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagnostics import Span, SourceError

PUNCT = ("->", "[", "]", "(", ")", "=", ".", ":", ",", ";")


@dataclass(frozen=True)
class Token:
    kind: str  # "name", "punct", "eof"
    text: str
    line: int
    col: int

    @property
    def span(self) -> Span:
        end = self.col + max(len(self.text), 1)
        return Span(self.line, self.col, self.line, end)


def _name_char(c: str) -> bool:
    return c.isalnum() or c in "_'"


def lex(source: str, allow_internal: bool = False) -> list[Token]:
    """Tokenize a whole source text; raises SourceError on bad input.

    `allow_internal` additionally accepts `%N` names, which never occur
    in source files but do occur when core terms are read back in.
    """
    tokens: list[Token] = []
    line, col = 1, 1
    i, n = 0, len(source)

    def err(message: str) -> SourceError:
        return SourceError.single("L001", message, Span(line, col))

    while i < n:
        c = source[i]
        if c == "\n":
            i, line, col = i + 1, line + 1, 1
            continue
        if c in " \t\r":
            i, col = i + 1, col + 1
            continue
        if source.startswith("--", i):
            while i < n and source[i] != "\n":
                i += 1
            continue
        if c.isalpha():
            start, start_col = i, col
            i += 1
            while i < n:
                if _name_char(source[i]):
                    i += 1
                elif source[i] == "-" and i + 1 < n and _name_char(source[i + 1]):
                    i += 2
                else:
                    break
            text = source[start:i]
            col += len(text)
            tokens.append(Token("name", text, line, start_col))
            continue
        if c == "%" and allow_internal and i + 1 < n and source[i + 1].isdigit():
            start, start_col = i, col
            i += 1
            while i < n and source[i].isdigit():
                i += 1
            text = source[start:i]
            col += len(text)
            tokens.append(Token("name", text, line, start_col))
            continue
        for p in PUNCT:
            if source.startswith(p, i):
                tokens.append(Token("punct", p, line, col))
                i += len(p)
                col += len(p)
                break
        else:
            raise err(f"unexpected character {c!r}")

    tokens.append(Token("eof", "", line, col))
    return tokens
