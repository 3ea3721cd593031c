"""Hand-written scanner for Chips source text."""

from __future__ import annotations

from ..diagnostics import ChipsError, Span
from .tokens import KEYWORDS, OPERATORS, PUNCTUATION, Token, TokenKind

_IDENT_START = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_")
_IDENT_CONT = _IDENT_START | set("0123456789")
_DIGITS = set("0123456789")
_HEX_DIGITS = _DIGITS | set("abcdefABCDEF")


def tokenize(source: str, file_id: str = "<input>") -> list[Token]:
    """Scan ``source`` into tokens ending with an EOF token.

    Comments (``//`` and ``/* */``) and whitespace are preserved as trivia
    attached to the following token. Raises :class:`ChipsError` with code
    E-LEX on the first lexical fault.
    """
    tokens: list[Token] = []
    i = 0
    n = len(source)
    trivia_start = 0

    def fault(message: str, start: int, end: int) -> ChipsError:
        return ChipsError.single("E-LEX", message, Span(file_id, start, end))

    while True:
        # Skip whitespace and comments, remembering where the trivia began.
        while i < n:
            c = source[i]
            if c in " \t\r\n":
                i += 1
            elif source.startswith("//", i):
                nl = source.find("\n", i)
                i = n if nl == -1 else nl
            elif source.startswith("/*", i):
                close = source.find("*/", i + 2)
                if close == -1:
                    raise fault("unterminated block comment", i, n)
                i = close + 2
            else:
                break
        trivia = source[trivia_start:i]

        if i >= n:
            tokens.append(Token(TokenKind.EOF, "", Span(file_id, n, n), trivia))
            return tokens

        start = i
        c = source[i]

        if c in _IDENT_START:
            while i < n and source[i] in _IDENT_CONT:
                i += 1
            word = source[start:i]
            kind = TokenKind.KEYWORD if word in KEYWORDS else TokenKind.IDENT
            tokens.append(Token(kind, word, Span(file_id, start, i), trivia))
        elif c in _DIGITS:
            if source.startswith("0x", i) or source.startswith("0X", i):
                i += 2
                if i >= n or source[i] not in _HEX_DIGITS:
                    raise fault("malformed hexadecimal literal", start, i)
                while i < n and source[i] in _HEX_DIGITS:
                    i += 1
                tokens.append(Token(TokenKind.INT, source[start:i], Span(file_id, start, i), trivia))
            else:
                while i < n and source[i] in _DIGITS:
                    i += 1
                is_float = False
                if i < n and source[i] == "." and i + 1 < n and source[i + 1] in _DIGITS:
                    is_float = True
                    i += 1
                    while i < n and source[i] in _DIGITS:
                        i += 1
                if i < n and source[i] in "eE":
                    j = i + 1
                    if j < n and source[j] in "+-":
                        j += 1
                    if j < n and source[j] in _DIGITS:
                        is_float = True
                        i = j
                        while i < n and source[i] in _DIGITS:
                            i += 1
                kind = TokenKind.FLOAT if is_float else TokenKind.INT
                tokens.append(Token(kind, source[start:i], Span(file_id, start, i), trivia))
        elif c == '"':
            i += 1
            while i < n and source[i] != '"':
                if source[i] == "\\" and i + 1 < n:
                    i += 2
                elif source[i] == "\n":
                    raise fault("unterminated string literal", start, i)
                else:
                    i += 1
            if i >= n:
                raise fault("unterminated string literal", start, n)
            i += 1
            tokens.append(Token(TokenKind.STRING, source[start:i], Span(file_id, start, i), trivia))
        else:
            for op in OPERATORS:
                if source.startswith(op, i):
                    i += len(op)
                    tokens.append(Token(TokenKind.OP, op, Span(file_id, start, i), trivia))
                    break
            else:
                if c in PUNCTUATION:
                    i += 1
                    tokens.append(Token(TokenKind.PUNCT, c, Span(file_id, start, i), trivia))
                else:
                    raise fault(f"unexpected character {c!r}", start, i + 1)

        trivia_start = i


def string_value(lexeme: str) -> str:
    """Decode a string literal token (quotes plus backslash escapes)."""
    body = lexeme[1:-1]
    out: list[str] = []
    i = 0
    while i < len(body):
        c = body[i]
        if c == "\\" and i + 1 < len(body):
            nxt = body[i + 1]
            out.append({"n": "\n", "t": "\t", '"': '"', "\\": "\\"}.get(nxt, nxt))
            i += 2
        else:
            out.append(c)
            i += 1
    return "".join(out)
