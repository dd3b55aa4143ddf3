"""
Exception types shared by the formal layer and everything built on it.

Everything that describes bad input is a ValueError so callers that only
care about "invalid input" can keep catching ValueError.
"""
from typing import Optional


class FormatError(ValueError):
    """A .upa or .ugs document could not be parsed."""

    def __init__(self, kind: str, line: int, column: int, reason: str):
        self.kind = kind
        self.line = line
        self.column = column
        self.reason = reason
        super().__init__(f"{kind}:{line}:{column}: {reason}")


class AutomatonShapeError(ValueError):
    """An automaton violates determinism, phase discipline or the one-loop shape."""


class VertexError(ValueError):
    """A vertex or index is out of range for its spec or loop constant."""


class DomainError(ValueError):
    """An operation was called outside the inputs it is defined on."""


class OracleStabilityError(RuntimeError):
    """Deepening a truncation changed a brute-force answer."""

    def __init__(self, query: str, shallow: bool, deep: bool, depth: Optional[int] = None):
        self.query = query
        self.shallow = shallow
        self.deep = deep
        self.depth = depth
        super().__init__(
            f"oracle answer for {query} changed from {shallow} to {deep} "
            f"when deepening the truncation past level {depth}"
        )
