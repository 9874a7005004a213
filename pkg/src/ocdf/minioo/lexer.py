"""Tokenizer for MiniOO source text.

Tokens: identifiers, integer and string literals, punctuation, and the
reserved words listed in KEYWORDS. `//` comments run to end of line.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from ..diagnostics import Code, MiniOoError, SourceError


class TokKind(Enum):
    IDENT = "identifier"
    INT = "integer"
    STRING = "string"
    KEYWORD = "keyword"
    PUNCT = "punctuation"
    EOF = "end of input"


KEYWORDS = frozenset({
    "class", "public", "protected", "private",
    "static", "const", "return", "this",
})

_PUNCT = frozenset("{}();,=:.")


@dataclass(frozen=True, slots=True)
class Token:
    kind: TokKind
    text: str
    line: int
    column: int

    def describe(self) -> str:
        if self.kind is TokKind.EOF:
            return "end of input"
        return f"'{self.text}'"


def tokenize(source: str) -> list[Token]:
    """Lex the whole input; raises MiniOoError on the first bad character."""
    tokens: list[Token] = []
    errors: list[SourceError] = []
    line, col = 1, 1
    i = 0
    n = len(source)

    def advance(text: str) -> None:
        nonlocal line, col
        for ch in text:
            if ch == "\n":
                line += 1
                col = 1
            else:
                col += 1

    while i < n:
        ch = source[i]
        if ch in " \t\r\n":
            advance(ch)
            i += 1
            continue
        if source.startswith("//", i):
            end = source.find("\n", i)
            end = n if end == -1 else end
            advance(source[i:end])
            i = end
            continue
        start_line, start_col = line, col
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            text = source[i:j]
            kind = TokKind.KEYWORD if text in KEYWORDS else TokKind.IDENT
            tokens.append(Token(kind, text, start_line, start_col))
            advance(text)
            i = j
            continue
        if ch.isdigit():
            j = i
            while j < n and source[j].isdigit():
                j += 1
            tokens.append(Token(TokKind.INT, source[i:j], start_line, start_col))
            advance(source[i:j])
            i = j
            continue
        if ch == '"':
            j = i + 1
            value = []
            terminated = False
            while j < n:
                c = source[j]
                if c == "\\" and j + 1 < n:
                    value.append(source[j + 1])
                    j += 2
                    continue
                if c == '"':
                    terminated = True
                    j += 1
                    break
                if c == "\n":
                    break
                value.append(c)
                j += 1
            if not terminated:
                errors.append(SourceError(Code.E_PARSE, "unterminated string literal",
                                          start_line, start_col))
                advance(source[i:j])
                i = j
                continue
            tokens.append(Token(TokKind.STRING, "".join(value), start_line, start_col))
            advance(source[i:j])
            i = j
            continue
        if ch in _PUNCT:
            tokens.append(Token(TokKind.PUNCT, ch, start_line, start_col))
            advance(ch)
            i += 1
            continue
        errors.append(SourceError(Code.E_PARSE, f"unexpected character {ch!r}",
                                  start_line, start_col))
        advance(ch)
        i += 1

    if errors:
        raise MiniOoError(errors)
    tokens.append(Token(TokKind.EOF, "", line, col))
    return tokens
