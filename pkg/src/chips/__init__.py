"""Toolchain for the Chips component-description language.

Parse Chips models, validate them against hardware descriptors, lower each
functional block to a synchronized automaton network, and simulate the
network deterministically. Ships the Adaptable TeaStore reference model.
"""

from .diagnostics import ChipsError, Diagnostic, Span

__version__ = "0.1.0"

__all__ = ["ChipsError", "Diagnostic", "Span", "__version__"]
