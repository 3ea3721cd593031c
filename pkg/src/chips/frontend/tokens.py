"""Token definitions for the Chips lexer."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from ..diagnostics import Span

KEYWORDS = frozenset(
    [
        "pure", "logical", "physical", "init", "then", "import", "as",
        "SYSTEM", "link", "to", "splitplug", "mergeplug",
        "if", "else", "for", "in",
        "int", "float", "bool",
    ]
)

# Longest first so the scanner can match greedily.
OPERATORS = [
    "->", "==", "!=", "<=", ">=", "<<", ">>", "&&", "||",
    "=", "<", ">", "+", "-", "*", "/", "%", "&", "|", "^", "!", ".",
]

PUNCTUATION = ["(", ")", "{", "}", "[", "]", ",", ";"]


class TokenKind(Enum):
    KEYWORD = "keyword"
    IDENT = "identifier"
    INT = "integer-literal"
    FLOAT = "float-literal"
    STRING = "string-literal"
    OP = "operator"
    PUNCT = "punctuation"
    EOF = "eof"


@dataclass
class Token:
    kind: TokenKind
    lexeme: str
    span: Span
    # Whitespace and comments preceding this token, kept verbatim so the
    # token stream reconstructs the source exactly.
    trivia: str = field(default="", compare=False)

    def is_kw(self, word: str) -> bool:
        return self.kind is TokenKind.KEYWORD and self.lexeme == word

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Token({self.kind.name}, {self.lexeme!r})"


def reconstruct(tokens: list[Token]) -> str:
    """Concatenate trivia + lexemes; identity over the lexed source."""
    return "".join(t.trivia + t.lexeme for t in tokens)
