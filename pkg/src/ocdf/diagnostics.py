"""Diagnostic codes, records, and the exceptions that carry them.

Every code maps to exactly one rule; the message template for a code is the
single place that rule is worded.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum


class Code(str, Enum):
    """Stable identifiers for every rule a tool in this package can report."""

    # Flow and feature constraint violations (found by the validator).
    E_CF_ENDPOINT = "E_CF_ENDPOINT"
    E_DF_ENDPOINT = "E_DF_ENDPOINT"
    E_CONST_WRITE = "E_CONST_WRITE"
    E_IFACE_VIS = "E_IFACE_VIS"
    E_METHOD_VIS = "E_METHOD_VIS"
    # Structural rules (enforced on build/load, re-checked by the validator).
    E_DANGLING_REF = "E_DANGLING_REF"
    E_DUP_ID = "E_DUP_ID"
    E_BAD_ENUM = "E_BAD_ENUM"
    E_PARSE = "E_PARSE"
    # Source extraction rules.
    E_NO_CLASS = "E_NO_CLASS"
    E_RESOLVE = "E_RESOLVE"
    E_INHERIT_CYCLE = "E_INHERIT_CYCLE"

    def __str__(self) -> str:
        return self.value


class Severity(str, Enum):
    ERROR = "error"
    WARNING = "warning"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True, slots=True)
class Subject:
    """What a diagnostic is about: a class and the feature/flow ids involved."""

    class_name: str
    ids: tuple[str, ...] = ()

    def sort_key(self) -> tuple[str, tuple[str, ...]]:
        return (self.class_name, self.ids)


@dataclass(frozen=True, slots=True)
class Diagnostic:
    code: Code
    severity: Severity
    message: str
    subjects: tuple[Subject, ...] = ()

    def sort_key(self) -> tuple:
        first = self.subjects[0].class_name if self.subjects else ""
        return (first, self.code.value, tuple(s.sort_key() for s in self.subjects))

    def render_line(self) -> str:
        """One-line text form: ``CODE class=<name> subjects=<ids>: message``."""
        parts = [self.code.value]
        if self.subjects:
            parts.append(f"class={self.subjects[0].class_name}")
            ids = [i for s in self.subjects for i in s.ids]
            if ids:
                parts.append(f"subjects={','.join(ids)}")
        return f"{' '.join(parts)}: {self.message}"

    def to_dict(self) -> dict:
        return {
            "code": self.code.value,
            "severity": self.severity.value,
            "message": self.message,
            "subjects": [{"class": s.class_name, "ids": list(s.ids)} for s in self.subjects],
        }


@dataclass(frozen=True, slots=True)
class SourceError:
    """An error anchored to a source position (parsing or extraction)."""

    code: Code
    message: str
    line: int
    column: int

    def render_line(self) -> str:
        return f"{self.code.value} {self.line}:{self.column}: {self.message}"

    def to_dict(self) -> dict:
        return {
            "code": self.code.value,
            "message": self.message,
            "line": self.line,
            "column": self.column,
        }


class OcdfError(Exception):
    """Base class for all failures raised by this package."""


@dataclass
class ModelError(OcdfError):
    """Raised when a model cannot be built or loaded; carries all findings."""

    diagnostics: list[Diagnostic] = field(default_factory=list)

    def __str__(self) -> str:
        return "; ".join(d.render_line() for d in self.diagnostics) or "invalid model"


@dataclass
class MiniOoError(OcdfError):
    """Raised when MiniOO source fails to parse or resolve."""

    errors: list[SourceError] = field(default_factory=list)

    def __str__(self) -> str:
        return "; ".join(e.render_line() for e in self.errors) or "invalid source"
