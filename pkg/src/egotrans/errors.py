"""Exception types shared across the package.

The CLI reports failures as ``<ExceptionClassName>: <detail>`` on a single
line, so anything user-facing should raise one of these (or a builtin with a
clear message) rather than letting an internal error leak through.
"""

from __future__ import annotations


class UnknownNodeError(KeyError):
    """A node identifier is not part of the graph it was used against."""

    def __init__(self, node):
        self.node = node
        super().__init__(node)

    def __str__(self) -> str:
        return f"unknown node id: {self.node!r}"


class ParseError(ValueError):
    """A temporal edge-list line could not be parsed."""

    def __init__(self, line_no: int, line: str, reason: str):
        self.line_no = line_no
        self.line = line
        self.reason = reason
        super().__init__(f"line {line_no}: {reason}: {line!r}")


class ConvergenceError(RuntimeError):
    """An eigen computation did not meet its residual tolerance."""

    def __init__(self, residual: float, tol: float):
        self.residual = residual
        self.tol = tol
        super().__init__(
            f"eigen residual {residual:.3e} exceeds tolerance {tol:.3e}"
        )
