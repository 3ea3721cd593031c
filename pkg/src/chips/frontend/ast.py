"""Abstract syntax for Chips programs.

Spans are carried for diagnostics but excluded from equality so that
round-trip tests can compare trees structurally.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from ..diagnostics import Span


def _span_field() -> Span | None:
    return None


@dataclass
class Node:
    pass


# --------------------------------------------------------------------------
# Types as written in source

@dataclass
class TypeExpr(Node):
    base: str                      # "int" | "float" | "bool" | record name
    is_array: bool = False
    span: Span | None = field(default=None, compare=False)

    def __str__(self) -> str:
        return f"{self.base} []" if self.is_array else self.base


# --------------------------------------------------------------------------
# Expressions

@dataclass
class Expr(Node):
    pass


@dataclass
class IntLit(Expr):
    value: int
    lexeme: str = field(default="", compare=False)   # keeps 0x formatting
    span: Span | None = field(default=None, compare=False)


@dataclass
class FloatLit(Expr):
    value: float
    span: Span | None = field(default=None, compare=False)


@dataclass
class StringLit(Expr):
    value: str
    span: Span | None = field(default=None, compare=False)


@dataclass
class Var(Expr):
    name: str
    span: Span | None = field(default=None, compare=False)


@dataclass
class Unary(Expr):
    op: str
    operand: Expr
    span: Span | None = field(default=None, compare=False)


@dataclass
class Binary(Expr):
    op: str
    left: Expr
    right: Expr
    span: Span | None = field(default=None, compare=False)


@dataclass
class Call(Expr):
    name: str
    args: list[Expr]
    span: Span | None = field(default=None, compare=False)


@dataclass
class Index(Expr):
    base: Expr
    index: Expr
    span: Span | None = field(default=None, compare=False)


@dataclass
class Member(Expr):
    base: Expr
    name: str
    span: Span | None = field(default=None, compare=False)


# --------------------------------------------------------------------------
# Statements

@dataclass
class Stmt(Node):
    pass


@dataclass
class Assign(Stmt):
    name: str
    value: Expr
    span: Span | None = field(default=None, compare=False)


@dataclass
class LocalDecl(Stmt):
    type: TypeExpr | None          # None: untyped init assignment (float)
    name: str
    value: Expr
    span: Span | None = field(default=None, compare=False)


@dataclass
class If(Stmt):
    cond: Expr
    then_body: list[Stmt]
    else_body: list[Stmt]
    span: Span | None = field(default=None, compare=False)


@dataclass
class For(Stmt):
    var: str
    iterable: Expr
    body: list[Stmt]
    span: Span | None = field(default=None, compare=False)


@dataclass
class ExprStmt(Stmt):
    value: Expr
    span: Span | None = field(default=None, compare=False)


# --------------------------------------------------------------------------
# Declarations

@dataclass
class Param(Node):
    type: TypeExpr
    name: str
    span: Span | None = field(default=None, compare=False)


@dataclass
class PureFn(Node):
    name: str
    params: list[Param]
    body: Expr                     # a pure function is a single expression
    span: Span | None = field(default=None, compare=False)


@dataclass
class LogicalFn(Node):
    name: str
    params: list[Param]
    init_body: list[Stmt]
    then_body: list[Stmt]
    outputs: list[Expr]
    span: Span | None = field(default=None, compare=False)


@dataclass
class PhysicalFn(Node):
    name: str
    params: list[Param]
    outputs: list[Expr]            # signature only: outputs over the params
    span: Span | None = field(default=None, compare=False)


@dataclass
class Import(Node):
    path: str
    alias: str
    span: Span | None = field(default=None, compare=False)


# --------------------------------------------------------------------------
# SYSTEM section

@dataclass
class SignalRef(Node):
    """``instance.out`` or ``instance.out[k]``."""

    instance: str
    index: int | None              # None: shorthand for the only output
    span: Span | None = field(default=None, compare=False)

    def __str__(self) -> str:
        if self.index is None:
            return f"{self.instance}.out"
        return f"{self.instance}.out[{self.index}]"


@dataclass
class InstanceDecl(Node):
    type_name: str
    name: str
    span: Span | None = field(default=None, compare=False)


@dataclass
class LinkDecl(Node):
    child: str
    parent: str
    span: Span | None = field(default=None, compare=False)


@dataclass
class InputWiring(Node):
    target: str
    sources: list[SignalRef]
    span: Span | None = field(default=None, compare=False)


@dataclass
class SplitDecl(Node):
    signal: SignalRef
    function: str
    span: Span | None = field(default=None, compare=False)


@dataclass
class MergeDecl(Node):
    signal: SignalRef
    function: str
    span: Span | None = field(default=None, compare=False)


@dataclass
class SystemSection(Node):
    instances: list[InstanceDecl] = field(default_factory=list)
    links: list[LinkDecl] = field(default_factory=list)
    wirings: list[InputWiring] = field(default_factory=list)
    splitplugs: list[SplitDecl] = field(default_factory=list)
    mergeplugs: list[MergeDecl] = field(default_factory=list)
    # Declaration order of every item, preserved for printing and for the
    # deterministic fold order of merge groups.
    items: list[Node] = field(default_factory=list)
    span: Span | None = field(default=None, compare=False)


@dataclass
class Program(Node):
    pure_fns: list[PureFn] = field(default_factory=list)
    logical_fns: list[LogicalFn] = field(default_factory=list)
    physical_fns: list[PhysicalFn] = field(default_factory=list)
    imports: list[Import] = field(default_factory=list)
    system: SystemSection | None = None
    # Top-level declarations in source order (printing preserves it).
    decls: list[Node] = field(default_factory=list)

    def merge(self, other: "Program") -> "Program":
        """Combine two parsed files into one compilation unit."""
        merged = Program(
            self.pure_fns + other.pure_fns,
            self.logical_fns + other.logical_fns,
            self.physical_fns + other.physical_fns,
            self.imports + other.imports,
            self.system or other.system,
            self.decls + other.decls,
        )
        return merged
