"""Frontend: tokens, parser and canonical printer for Chips source."""

from .lexer import tokenize
from .parser import parse_files, parse_program, parse_source
from .printer import pretty_print
from .tokens import Token, TokenKind, reconstruct
from . import ast

__all__ = [
    "ast",
    "parse_files",
    "parse_program",
    "parse_source",
    "pretty_print",
    "reconstruct",
    "Token",
    "TokenKind",
    "tokenize",
]
