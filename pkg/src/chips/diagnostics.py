"""Source-located diagnostics shared by the whole toolchain."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Span:
    """Half-open character range [start, end) inside one source file."""

    file: str
    start: int
    end: int

    def merge(self, other: "Span") -> "Span":
        return Span(self.file, min(self.start, other.start), max(self.end, other.end))


@dataclass
class Diagnostic:
    code: str            # E-LEX, E-PARSE, E-TYPE, ...
    message: str
    span: Span | None = None
    severity: str = "error"

    def render(self, sources: dict[str, str] | None = None) -> str:
        """Format as ``file:line:col: severity: message``."""
        if self.span is None:
            return f"<unknown>:0:0: {self.severity}: {self.code}: {self.message}"
        line, col = 1, 1
        if sources is not None and self.span.file in sources:
            text = sources[self.span.file]
            upto = text[: self.span.start]
            line = upto.count("\n") + 1
            col = self.span.start - (upto.rfind("\n") + 1) + 1
        return f"{self.span.file}:{line}:{col}: {self.severity}: {self.code}: {self.message}"


class ChipsError(Exception):
    """Raised by any pipeline stage; carries the collected diagnostics."""

    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = diagnostics
        super().__init__("; ".join(d.render() for d in diagnostics[:4]))

    @classmethod
    def single(cls, code: str, message: str, span: Span | None = None) -> "ChipsError":
        return cls([Diagnostic(code, message, span)])


@dataclass
class DiagnosticSink:
    """Accumulates diagnostics during a recovering pass (parser, analyzer)."""

    items: list[Diagnostic] = field(default_factory=list)

    def error(self, code: str, message: str, span: Span | None = None) -> None:
        self.items.append(Diagnostic(code, message, span))

    def warning(self, code: str, message: str, span: Span | None = None) -> None:
        self.items.append(Diagnostic(code, message, span, severity="warning"))

    @property
    def errors(self) -> list[Diagnostic]:
        return [d for d in self.items if d.severity == "error"]

    def raise_if_errors(self) -> None:
        if self.errors:
            raise ChipsError(self.errors)
