"""
Exception hierarchy for qmat.

Every error raised by the algebra modules derives from `QmatError`, so the
CLI can turn any of them into a machine-readable error and a nonzero exit.
"""
from typing import Any, Dict, Optional


class QmatError(ValueError):
    """Base class for all qmat errors."""

    def to_dict(self) -> Dict[str, Any]:
        return {"error": type(self).__name__, "message": str(self)}


class ScalarError(QmatError):
    """Invalid scalar operation (q = 0, non-unit inverse, inexact division)."""


class AlgebraError(QmatError):
    """Bad algebra shape, out-of-range generator or algebra mismatch."""


class ExpressionError(QmatError):
    """Syntax error in a surface expression."""

    def __init__(self, message: str, position: Optional[int] = None):
        super().__init__(message)
        self.position = position

    def to_dict(self) -> Dict[str, Any]:
        out = super().to_dict()
        if self.position is not None:
            out["position"] = self.position
        return out


class CapExceededError(QmatError):
    """A request exceeds the configured oracle or Hasse diagram cap."""


class CoinvariantError(QmatError):
    """Preimage requested for an element that is not a coinvariant."""
