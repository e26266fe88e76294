"""Structured verification results shared by every checker."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any


def _jsonable(value: Any) -> Any:
    if isinstance(value, (bool, type(None))):
        return value
    if isinstance(value, (int, Fraction)):
        return str(value)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if hasattr(value, "to_json"):
        return value.to_json()
    return str(value)


@dataclass
class VerificationReport:
    """Outcome of one identity check.

    ``equal`` records whether the two sides agree coefficient-wise after
    reduction to normal form.  ``integrality`` maps a label to whether that
    class has integer coefficients.  ``oracle`` is the result of an
    independent cross-check (``None`` when the check has none).  A report
    passes only when all three are satisfied.
    """

    name: str
    equal: bool
    left: Any = None
    right: Any = None
    integrality: dict[str, bool] = field(default_factory=dict)
    oracle: bool | None = None
    diagnostics: list[str] = field(default_factory=list)
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.equal and all(self.integrality.values()) and self.oracle is not False

    @property
    def status(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def to_json(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "status": self.status,
            "equal": self.equal,
            "oracle": self.oracle,
            "integrality": dict(sorted(self.integrality.items())),
            "left": _jsonable(self.left),
            "right": _jsonable(self.right),
            "diagnostics": list(self.diagnostics),
            "details": _jsonable(self.details),
        }

    def __str__(self) -> str:
        return f"{self.status} {self.name}"


class PreconditionError(ValueError):
    """Raised when an instance violates the hypothesis of the identity it
    is meant to test (for example a scaling level ``l`` that is too small).
    Distinct from a failed verification."""
