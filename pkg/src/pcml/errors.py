"""Exception types shared across the package."""


class PcmlError(Exception):
    """Base class for all package errors."""


class GraphError(PcmlError, ValueError):
    """Invalid graph data or graph-level precondition violation."""


class AlgebraError(PcmlError, ValueError):
    """Invalid algebra data: bad generators, mixed contexts, bad orders."""


class ParseError(PcmlError, ValueError):
    """Syntax error in a textual element, polynomial, or graph spec."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at offset {position})")
        self.position = position


class CertificationError(PcmlError):
    """A cross-check that must hold by theorem failed: engine bug."""
