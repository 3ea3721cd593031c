"""Recursive-descent parser for Chips.

Expression grammar is C-like with precedence (tightest first):
postfix > unary > ``* / %`` > ``+ -`` > ``<< >>`` > comparisons >
``&`` > ``^`` > ``|`` > ``&&`` > ``||``.
Statements are terminated by ``;``; blocks are braced.
"""

from __future__ import annotations

from ..diagnostics import ChipsError, Diagnostic, DiagnosticSink, Span
from . import ast
from .lexer import string_value, tokenize
from .tokens import Token, TokenKind

_TOP_LEVEL_KEYWORDS = {"pure", "logical", "physical", "import", "SYSTEM"}

# Binary operator levels, loosest binding first.
_BINARY_LEVELS = [
    ["||"],
    ["&&"],
    ["|"],
    ["^"],
    ["&"],
    ["==", "!=", "<", "<=", ">", ">="],
    ["<<", ">>"],
    ["+", "-"],
    ["*", "/", "%"],
]


class _ParseAbort(Exception):
    """Internal signal used for statement-level recovery."""


class Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0
        self.sink = DiagnosticSink()

    # -- token plumbing ----------------------------------------------------

    def peek(self, offset: int = 0) -> Token:
        i = min(self.pos + offset, len(self.tokens) - 1)
        return self.tokens[i]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind is not TokenKind.EOF:
            self.pos += 1
        return tok

    def at(self, lexeme: str) -> bool:
        tok = self.peek()
        return tok.kind in (TokenKind.OP, TokenKind.PUNCT, TokenKind.KEYWORD) and tok.lexeme == lexeme

    def accept(self, lexeme: str) -> Token | None:
        if self.at(lexeme):
            return self.advance()
        return None

    def expect(self, lexeme: str, context: str) -> Token:
        if self.at(lexeme):
            return self.advance()
        tok = self.peek()
        found = tok.lexeme if tok.kind is not TokenKind.EOF else "end of input"
        self.sink.error("E-PARSE", f"expected {lexeme!r} {context}, found {found!r}", tok.span)
        raise _ParseAbort()

    def expect_ident(self, context: str) -> Token:
        tok = self.peek()
        if tok.kind is TokenKind.IDENT:
            return self.advance()
        found = tok.lexeme if tok.kind is not TokenKind.EOF else "end of input"
        self.sink.error("E-PARSE", f"expected identifier {context}, found {found!r}", tok.span)
        raise _ParseAbort()

    # -- recovery ----------------------------------------------------------

    def _sync_statement(self) -> None:
        depth = 0
        while True:
            tok = self.peek()
            if tok.kind is TokenKind.EOF:
                return
            if tok.lexeme == "{":
                depth += 1
            elif tok.lexeme == "}":
                if depth == 0:
                    return
                depth -= 1
            elif tok.lexeme == ";" and depth == 0:
                self.advance()
                return
            self.advance()

    def _sync_top_level(self) -> None:
        while True:
            tok = self.peek()
            if tok.kind is TokenKind.EOF:
                return
            if tok.kind is TokenKind.KEYWORD and tok.lexeme in _TOP_LEVEL_KEYWORDS:
                return
            self.advance()

    # -- program -----------------------------------------------------------

    def parse_program(self) -> ast.Program:
        program = ast.Program()
        while self.peek().kind is not TokenKind.EOF:
            try:
                self._parse_top_level(program)
            except _ParseAbort:
                self._sync_top_level()
        self.sink.raise_if_errors()
        return program

    def _parse_top_level(self, program: ast.Program) -> None:
        tok = self.peek()
        if tok.is_kw("pure"):
            fn = self._parse_pure()
            program.pure_fns.append(fn)
            program.decls.append(fn)
        elif tok.is_kw("logical"):
            fn = self._parse_logical()
            program.logical_fns.append(fn)
            program.decls.append(fn)
        elif tok.is_kw("physical"):
            fn = self._parse_physical()
            program.physical_fns.append(fn)
            program.decls.append(fn)
        elif tok.is_kw("import"):
            imp = self._parse_import()
            program.imports.append(imp)
            program.decls.append(imp)
        elif tok.is_kw("SYSTEM"):
            section = self._parse_system()
            if program.system is not None:
                self.sink.error("E-PARSE", "duplicate SYSTEM section", tok.span)
            else:
                program.system = section
                program.decls.append(section)
        else:
            found = tok.lexeme if tok.kind is not TokenKind.EOF else "end of input"
            self.sink.error(
                "E-PARSE",
                f"expected 'pure', 'logical', 'physical', 'import' or 'SYSTEM', found {found!r}",
                tok.span,
            )
            raise _ParseAbort()

    # -- declarations ------------------------------------------------------

    def _parse_params(self) -> list[ast.Param]:
        self.expect("(", "to open the parameter list")
        params: list[ast.Param] = []
        if not self.at(")"):
            while True:
                ty = self._parse_type("in parameter list")
                name = self.expect_ident("as parameter name")
                params.append(ast.Param(ty, name.lexeme, span=name.span))
                if not self.accept(","):
                    break
        self.expect(")", "to close the parameter list")
        return params

    def _parse_type(self, context: str) -> ast.TypeExpr:
        tok = self.peek()
        if tok.is_kw("int") or tok.is_kw("float") or tok.is_kw("bool") or tok.kind is TokenKind.IDENT:
            self.advance()
            is_array = False
            if self.at("["):
                self.advance()
                self.expect("]", "to close array type")
                is_array = True
            return ast.TypeExpr(tok.lexeme, is_array, span=tok.span)
        self.sink.error("E-PARSE", f"expected a type {context}, found {tok.lexeme!r}", tok.span)
        raise _ParseAbort()

    def _parse_output_tuple(self) -> list[ast.Expr]:
        self.expect("->", "before the output tuple")
        self.expect("(", "to open the output tuple")
        outputs: list[ast.Expr] = []
        if not self.at(")"):
            outputs.append(self.parse_expr())
            while self.accept(","):
                outputs.append(self.parse_expr())
        self.expect(")", "to close the output tuple")
        return outputs

    def _parse_pure(self) -> ast.PureFn:
        kw = self.advance()
        name = self.expect_ident("as function name")
        params = self._parse_params()
        outputs = self._parse_output_tuple()
        if len(outputs) != 1:
            self.sink.error(
                "E-PARSE",
                f"pure function {name.lexeme!r} must have exactly one output expression",
                name.span,
            )
            raise _ParseAbort()
        return ast.PureFn(name.lexeme, params, outputs[0], span=kw.span.merge(name.span))

    def _parse_logical(self) -> ast.LogicalFn:
        kw = self.advance()
        name = self.expect_ident("as function name")
        params = self._parse_params()
        if not self.peek().is_kw("init"):
            self.expect("init", "after the parameter list")
        self.advance()
        init_body = self._parse_block()
        if not self.peek().is_kw("then"):
            self.expect("then", "after the init block")
        self.advance()
        then_body = self._parse_block()
        outputs = self._parse_output_tuple()
        return ast.LogicalFn(name.lexeme, params, init_body, then_body, outputs, span=kw.span.merge(name.span))

    def _parse_physical(self) -> ast.PhysicalFn:
        kw = self.advance()
        name = self.expect_ident("as function name")
        params = self._parse_params()
        outputs = self._parse_output_tuple()
        return ast.PhysicalFn(name.lexeme, params, outputs, span=kw.span.merge(name.span))

    def _parse_import(self) -> ast.Import:
        kw = self.advance()
        tok = self.peek()
        if tok.kind is not TokenKind.STRING:
            self.sink.error("E-PARSE", "expected a string path after 'import'", tok.span)
            raise _ParseAbort()
        self.advance()
        self.expect("as", "after the import path")
        alias = self.expect_ident("as import alias")
        self.expect(";", "after import")
        return ast.Import(string_value(tok.lexeme), alias.lexeme, span=kw.span.merge(alias.span))

    # -- statements ----------------------------------------------------------

    def _parse_block(self) -> list[ast.Stmt]:
        self.expect("{", "to open a block")
        stmts: list[ast.Stmt] = []
        while not self.at("}") and self.peek().kind is not TokenKind.EOF:
            try:
                stmts.append(self._parse_statement())
            except _ParseAbort:
                self._sync_statement()
        self.expect("}", "to close the block")
        return stmts

    def _parse_statement(self) -> ast.Stmt:
        tok = self.peek()
        if tok.is_kw("if"):
            return self._parse_if()
        if tok.is_kw("for"):
            return self._parse_for()
        if tok.is_kw("int") or tok.is_kw("float") or tok.is_kw("bool"):
            return self._parse_local_decl()
        if tok.kind is TokenKind.IDENT:
            nxt = self.peek(1)
            if nxt.kind is TokenKind.IDENT:
                # record-typed declaration: `action_request request = ...;`
                return self._parse_local_decl()
            if nxt.kind is TokenKind.OP and nxt.lexeme == "=":
                name = self.advance()
                self.advance()
                value = self.parse_expr()
                self.expect(";", "after assignment")
                return ast.Assign(name.lexeme, value, span=name.span)
        value = self.parse_expr()
        self.expect(";", "after expression statement")
        return ast.ExprStmt(value)

    def _parse_local_decl(self) -> ast.Stmt:
        ty = self._parse_type("in declaration")
        name = self.expect_ident("as variable name")
        self.expect("=", "in declaration (variables must be initialised)")
        value = self.parse_expr()
        self.expect(";", "after declaration")
        return ast.LocalDecl(ty, name.lexeme, value, span=name.span)

    def _parse_if(self) -> ast.Stmt:
        kw = self.advance()
        self.expect("(", "after 'if'")
        cond = self.parse_expr()
        self.expect(")", "after the if condition")
        then_body = self._parse_block()
        else_body: list[ast.Stmt] = []
        if self.accept("else"):
            if self.peek().is_kw("if"):
                else_body = [self._parse_if()]
            else:
                else_body = self._parse_block()
        return ast.If(cond, then_body, else_body, span=kw.span)

    def _parse_for(self) -> ast.Stmt:
        kw = self.advance()
        var = self.expect_ident("as loop variable")
        self.expect("in", "after the loop variable")
        iterable = self.parse_expr()
        body = self._parse_block()
        return ast.For(var.lexeme, iterable, body, span=kw.span)

    # -- expressions ---------------------------------------------------------

    def parse_expr(self) -> ast.Expr:
        return self._parse_binary(0)

    def _parse_binary(self, level: int) -> ast.Expr:
        if level >= len(_BINARY_LEVELS):
            return self._parse_unary()
        left = self._parse_binary(level + 1)
        ops = _BINARY_LEVELS[level]
        while self.peek().kind is TokenKind.OP and self.peek().lexeme in ops:
            op = self.advance()
            right = self._parse_binary(level + 1)
            left = ast.Binary(op.lexeme, left, right, span=op.span)
        return left

    def _parse_unary(self) -> ast.Expr:
        tok = self.peek()
        if tok.kind is TokenKind.OP and tok.lexeme in ("!", "-"):
            self.advance()
            operand = self._parse_unary()
            return ast.Unary(tok.lexeme, operand, span=tok.span)
        return self._parse_postfix()

    def _parse_postfix(self) -> ast.Expr:
        expr = self._parse_primary()
        while True:
            if self.at("["):
                self.advance()
                index = self.parse_expr()
                self.expect("]", "to close the index")
                expr = ast.Index(expr, index)
            elif self.at("."):
                self.advance()
                name = self.expect_ident("after '.'")
                expr = ast.Member(expr, name.lexeme, span=name.span)
            else:
                return expr

    def _parse_primary(self) -> ast.Expr:
        tok = self.peek()
        if tok.kind is TokenKind.INT:
            self.advance()
            return ast.IntLit(int(tok.lexeme, 0), tok.lexeme, span=tok.span)
        if tok.kind is TokenKind.FLOAT:
            self.advance()
            return ast.FloatLit(float(tok.lexeme), span=tok.span)
        if tok.kind is TokenKind.STRING:
            self.advance()
            return ast.StringLit(string_value(tok.lexeme), span=tok.span)
        if tok.kind is TokenKind.IDENT:
            self.advance()
            if self.at("("):
                self.advance()
                args: list[ast.Expr] = []
                if not self.at(")"):
                    args.append(self.parse_expr())
                    while self.accept(","):
                        args.append(self.parse_expr())
                self.expect(")", "to close the call")
                return ast.Call(tok.lexeme, args, span=tok.span)
            return ast.Var(tok.lexeme, span=tok.span)
        if self.at("("):
            self.advance()
            inner = self.parse_expr()
            self.expect(")", "to close the parenthesised expression")
            return inner
        found = tok.lexeme if tok.kind is not TokenKind.EOF else "end of input"
        self.sink.error("E-PARSE", f"expected an expression, found {found!r}", tok.span)
        raise _ParseAbort()

    # -- SYSTEM section ------------------------------------------------------

    def _parse_system(self) -> ast.SystemSection:
        kw = self.advance()
        self.expect("{", "to open the SYSTEM section")
        section = ast.SystemSection(span=kw.span)
        while not self.at("}") and self.peek().kind is not TokenKind.EOF:
            try:
                self._parse_system_item(section)
            except _ParseAbort:
                self._sync_statement()
        self.expect("}", "to close the SYSTEM section")
        return section

    def _parse_system_item(self, section: ast.SystemSection) -> None:
        tok = self.peek()
        if tok.is_kw("link"):
            self.advance()
            child = self.expect_ident("as link child")
            self.expect("to", "in link declaration")
            parent = self.expect_ident("as link parent")
            self.expect(";", "after link declaration")
            decl = ast.LinkDecl(child.lexeme, parent.lexeme, span=tok.span)
            section.links.append(decl)
            section.items.append(decl)
            return
        if tok.is_kw("splitplug") or tok.is_kw("mergeplug"):
            self.advance()
            self.expect("(", f"after '{tok.lexeme}'")
            signal = self._parse_signal_ref()
            self.expect(",", f"between signal and function in {tok.lexeme}")
            fn = self.expect_ident("as plug function name")
            self.expect(")", f"to close {tok.lexeme}")
            self.expect(";", f"after {tok.lexeme}")
            if tok.lexeme == "splitplug":
                split = ast.SplitDecl(signal, fn.lexeme, span=tok.span)
                section.splitplugs.append(split)
                section.items.append(split)
            else:
                merge = ast.MergeDecl(signal, fn.lexeme, span=tok.span)
                section.mergeplugs.append(merge)
                section.items.append(merge)
            return
        if tok.kind is TokenKind.IDENT:
            nxt = self.peek(1)
            if nxt.kind is TokenKind.IDENT:
                type_name = self.advance()
                name = self.advance()
                self.expect(";", "after instance declaration")
                decl = ast.InstanceDecl(type_name.lexeme, name.lexeme, span=type_name.span.merge(name.span))
                section.instances.append(decl)
                section.items.append(decl)
                return
            if nxt.kind is TokenKind.OP and nxt.lexeme == ".":
                target = self.advance()
                self.advance()
                if not self.peek().is_kw("in"):
                    self.expect("in", "after '.' in input wiring")
                self.advance()
                self.expect("(", "to open the input wiring")
                sources = [self._parse_signal_ref()]
                while self.accept(","):
                    sources.append(self._parse_signal_ref())
                self.expect(")", "to close the input wiring")
                self.expect(";", "after input wiring")
                wiring = ast.InputWiring(target.lexeme, sources, span=target.span)
                section.wirings.append(wiring)
                section.items.append(wiring)
                return
        found = tok.lexeme if tok.kind is not TokenKind.EOF else "end of input"
        self.sink.error(
            "E-PARSE",
            f"expected an instance, link, wiring or plug declaration, found {found!r}",
            tok.span,
        )
        raise _ParseAbort()

    def _parse_signal_ref(self) -> ast.SignalRef:
        inst = self.expect_ident("as signal instance")
        self.expect(".", "in signal reference")
        port = self.expect_ident("as signal port (expected 'out')")
        if port.lexeme != "out":
            self.sink.error("E-PARSE", f"signal references use '.out', found {port.lexeme!r}", port.span)
            raise _ParseAbort()
        index: int | None = None
        if self.at("["):
            self.advance()
            idx = self.peek()
            if idx.kind is not TokenKind.INT:
                self.sink.error("E-PARSE", "output index must be an integer literal", idx.span)
                raise _ParseAbort()
            self.advance()
            index = int(idx.lexeme, 0)
            self.expect("]", "to close the output index")
        return ast.SignalRef(inst.lexeme, index, span=inst.span.merge(port.span))


def parse_program(tokens: list[Token]) -> ast.Program:
    """Parse a token stream into a Program; raises ChipsError with E-PARSE."""
    return Parser(tokens).parse_program()


def parse_source(source: str, file_id: str = "<input>") -> ast.Program:
    """Convenience for ``parse_program(tokenize(...))``."""
    return parse_program(tokenize(source, file_id))


def parse_files(sources: dict[str, str]) -> ast.Program:
    """Parse and merge several source files into one compilation unit."""
    program = ast.Program()
    system_file = None
    for file_id, text in sources.items():
        part = parse_source(text, file_id)
        if part.system is not None:
            if program.system is not None:
                raise ChipsError(
                    [Diagnostic("E-PARSE", f"second SYSTEM section (first in {system_file})", part.system.span)]
                )
            system_file = file_id
        program = program.merge(part)
    return program
