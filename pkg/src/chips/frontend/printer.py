"""Canonical formatter for Chips programs.

``parse(pretty_print(p))`` is structurally equal to ``p`` and printing is a
fixpoint: formatting already-formatted text changes nothing.
"""

from __future__ import annotations

from . import ast

_LEVEL = {
    "||": 1,
    "&&": 2,
    "|": 3,
    "^": 4,
    "&": 5,
    "==": 6, "!=": 6, "<": 6, "<=": 6, ">": 6, ">=": 6,
    "<<": 7, ">>": 7,
    "+": 8, "-": 8,
    "*": 9, "/": 9, "%": 9,
}
_UNARY_LEVEL = 10
_POSTFIX_LEVEL = 11


def _float_repr(value: float) -> str:
    text = repr(value)
    return text if ("." in text or "e" in text or "inf" in text or "nan" in text) else text + ".0"


def format_expr(expr: ast.Expr, parent_level: int = 0) -> str:
    if isinstance(expr, ast.IntLit):
        return expr.lexeme or str(expr.value)
    if isinstance(expr, ast.FloatLit):
        return _float_repr(expr.value)
    if isinstance(expr, ast.StringLit):
        escaped = expr.value.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")
        return f'"{escaped}"'
    if isinstance(expr, ast.Var):
        return expr.name
    if isinstance(expr, ast.Unary):
        text = expr.op + format_expr(expr.operand, _UNARY_LEVEL)
        return f"({text})" if parent_level > _UNARY_LEVEL else text
    if isinstance(expr, ast.Binary):
        level = _LEVEL[expr.op]
        left = format_expr(expr.left, level)
        right = format_expr(expr.right, level + 1)   # left-associative
        text = f"{left} {expr.op} {right}"
        return f"({text})" if parent_level > level else text
    if isinstance(expr, ast.Call):
        args = ", ".join(format_expr(a) for a in expr.args)
        return f"{expr.name}({args})"
    if isinstance(expr, ast.Index):
        return f"{format_expr(expr.base, _POSTFIX_LEVEL)}[{format_expr(expr.index)}]"
    if isinstance(expr, ast.Member):
        return f"{format_expr(expr.base, _POSTFIX_LEVEL)}.{expr.name}"
    raise TypeError(f"unknown expression node {type(expr).__name__}")


def _format_stmt(stmt: ast.Stmt, indent: int) -> list[str]:
    pad = "    " * indent
    if isinstance(stmt, ast.Assign):
        return [f"{pad}{stmt.name} = {format_expr(stmt.value)};"]
    if isinstance(stmt, ast.LocalDecl):
        ty = f"{stmt.type} " if stmt.type is not None else ""
        return [f"{pad}{ty}{stmt.name} = {format_expr(stmt.value)};"]
    if isinstance(stmt, ast.ExprStmt):
        return [f"{pad}{format_expr(stmt.value)};"]
    if isinstance(stmt, ast.If):
        lines = [f"{pad}if ({format_expr(stmt.cond)}) {{"]
        for inner in stmt.then_body:
            lines.extend(_format_stmt(inner, indent + 1))
        if stmt.else_body:
            if len(stmt.else_body) == 1 and isinstance(stmt.else_body[0], ast.If):
                chained = _format_stmt(stmt.else_body[0], indent)
                lines.append(f"{pad}}} else {chained[0].strip()}")
                lines.extend(chained[1:])
                return lines
            lines.append(f"{pad}}} else {{")
            for inner in stmt.else_body:
                lines.extend(_format_stmt(inner, indent + 1))
        lines.append(f"{pad}}}")
        return lines
    if isinstance(stmt, ast.For):
        lines = [f"{pad}for {stmt.var} in {format_expr(stmt.iterable)} {{"]
        for inner in stmt.body:
            lines.extend(_format_stmt(inner, indent + 1))
        lines.append(f"{pad}}}")
        return lines
    raise TypeError(f"unknown statement node {type(stmt).__name__}")


def _format_params(params: list[ast.Param]) -> str:
    return ", ".join(f"{p.type} {p.name}" for p in params)


def _format_outputs(outputs: list[ast.Expr]) -> str:
    return ", ".join(format_expr(e) for e in outputs)


def _format_decl(decl: ast.Node) -> list[str]:
    if isinstance(decl, ast.PureFn):
        return [f"pure {decl.name}({_format_params(decl.params)}) -> ({format_expr(decl.body)})"]
    if isinstance(decl, ast.PhysicalFn):
        return [f"physical {decl.name}({_format_params(decl.params)}) -> ({_format_outputs(decl.outputs)})"]
    if isinstance(decl, ast.LogicalFn):
        lines = [f"logical {decl.name}({_format_params(decl.params)}) init {{"]
        for stmt in decl.init_body:
            lines.extend(_format_stmt(stmt, 1))
        lines.append("} then {")
        for stmt in decl.then_body:
            lines.extend(_format_stmt(stmt, 1))
        lines.append(f"}} -> ({_format_outputs(decl.outputs)})")
        return lines
    if isinstance(decl, ast.Import):
        escaped = decl.path.replace("\\", "\\\\").replace('"', '\\"')
        return [f'import "{escaped}" as {decl.alias};']
    if isinstance(decl, ast.SystemSection):
        lines = ["SYSTEM {"]
        for item in decl.items:
            lines.append("    " + _format_system_item(item))
        lines.append("}")
        return lines
    raise TypeError(f"unknown declaration node {type(decl).__name__}")


def _format_system_item(item: ast.Node) -> str:
    if isinstance(item, ast.InstanceDecl):
        return f"{item.type_name} {item.name};"
    if isinstance(item, ast.LinkDecl):
        return f"link {item.child} to {item.parent};"
    if isinstance(item, ast.InputWiring):
        refs = ", ".join(str(s) for s in item.sources)
        return f"{item.target}.in({refs});"
    if isinstance(item, ast.SplitDecl):
        return f"splitplug({item.signal}, {item.function});"
    if isinstance(item, ast.MergeDecl):
        return f"mergeplug({item.signal}, {item.function});"
    raise TypeError(f"unknown system item {type(item).__name__}")


def pretty_print(program: ast.Program) -> str:
    """Render a Program in the canonical formatting."""
    chunks: list[str] = []
    for decl in program.decls:
        chunks.append("\n".join(_format_decl(decl)))
    return "\n\n".join(chunks) + ("\n" if chunks else "")
