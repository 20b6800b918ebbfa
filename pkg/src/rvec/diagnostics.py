"""Shared diagnostic model for the checker and the interpreter.

Both engines report findings as `Diagnostic` values drawn from a single
code catalog, so the differential harness can match static predictions
against runtime observations by code and span.  Message texts that mirror
R's own wording are frozen here and must not be edited casually.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum


@dataclass(frozen=True)
class SourceSpan:
    """A source region. Lines/columns are 1-based; end_col is exclusive."""

    start_line: int
    start_col: int
    end_line: int
    end_col: int

    def __post_init__(self) -> None:
        assert (self.start_line, self.start_col) <= (self.end_line, self.end_col)

    def contains(self, other: "SourceSpan") -> bool:
        return (self.start_line, self.start_col) <= (
            other.start_line,
            other.start_col,
        ) and (other.end_line, other.end_col) <= (self.end_line, self.end_col)

    def merge(self, other: "SourceSpan") -> "SourceSpan":
        start = min((self.start_line, self.start_col), (other.start_line, other.start_col))
        end = max((self.end_line, self.end_col), (other.end_line, other.end_col))
        return SourceSpan(start[0], start[1], end[0], end[1])


class Severity(str, Enum):
    ERROR = "error"
    WARNING = "warning"


class Phase(str, Enum):
    STATIC = "static"
    RUNTIME = "runtime"


class Code(str, Enum):
    E_NONNUMERIC = "E_NONNUMERIC"
    E_NONLOGICAL = "E_NONLOGICAL"
    W_NONMULTIPLE = "W_NONMULTIPLE"
    W_REPLACE_NONMULTIPLE = "W_REPLACE_NONMULTIPLE"
    E_NULLREPL = "E_NULLREPL"
    E_NULLDATA = "E_NULLDATA"
    E_NOTFUN = "E_NOTFUN"
    E_UNUSED_ARGS = "E_UNUSED_ARGS"
    E_MISSING_ARG = "E_MISSING_ARG"
    E_UNBOUND = "E_UNBOUND"
    E_MIXEDSIGNS = "E_MIXEDSIGNS"
    E_DIMS_MISMATCH = "E_DIMS_MISMATCH"
    E_BADDIMS = "E_BADDIMS"
    E_MATRIX_DIMS = "E_MATRIX_DIMS"
    W_MATRIX_TRUNC = "W_MATRIX_TRUNC"
    E_OOB_ASSIGN = "E_OOB_ASSIGN"
    W_OOB_READ = "W_OOB_READ"
    W_ZERO_INDEX = "W_ZERO_INDEX"
    E_NA_SUBASSIGN = "E_NA_SUBASSIGN"
    E_BADSUBSCRIPT = "E_BADSUBSCRIPT"
    E_BADCOMBINE = "E_BADCOMBINE"


# code -> (default severity, default message).  Messages marked "R wording"
# reproduce R's runtime text byte-for-byte and are load-bearing for the
# golden corpus.
CATALOG: dict[Code, tuple[Severity, str]] = {
    # R wording
    Code.E_NONNUMERIC: (Severity.ERROR, "non-numeric argument to binary operator"),
    # R wording
    Code.E_NONLOGICAL: (
        Severity.ERROR,
        "operations are possible only for numeric, logical or complex types",
    ),
    # R wording
    Code.W_NONMULTIPLE: (
        Severity.WARNING,
        "longer object length is not a multiple of shorter object length",
    ),
    # R wording
    Code.W_REPLACE_NONMULTIPLE: (
        Severity.WARNING,
        "number of items to replace is not a multiple of replacement length",
    ),
    # R wording
    Code.E_NULLREPL: (Severity.ERROR, "replacement has length zero"),
    # R wording
    Code.E_NULLDATA: (Severity.ERROR, "'data' must be of a vector type, was 'NULL'"),
    # R wording
    Code.E_NOTFUN: (Severity.ERROR, "attempt to apply non-function"),
    # R wording (argument list is appended at emission)
    Code.E_UNUSED_ARGS: (Severity.ERROR, "unused argument"),
    # R wording (parameter name substituted at emission)
    Code.E_MISSING_ARG: (Severity.ERROR, 'argument "{name}" is missing, with no default'),
    # R wording (variable name substituted at emission)
    Code.E_UNBOUND: (Severity.ERROR, "object '{name}' not found"),
    Code.E_MIXEDSIGNS: (Severity.ERROR, "can't mix positive and negative subscripts"),
    # R wording
    Code.E_DIMS_MISMATCH: (Severity.ERROR, "non-conformable arrays"),
    Code.E_BADDIMS: (Severity.ERROR, "invalid array dimensions"),
    Code.E_MATRIX_DIMS: (Severity.ERROR, "matrix shape must have exactly 2 elements"),
    Code.W_MATRIX_TRUNC: (
        Severity.WARNING,
        "matrix shape truncated to first two dimensions",
    ),
    Code.E_OOB_ASSIGN: (Severity.ERROR, "assignment subscript beyond vector length"),
    Code.W_OOB_READ: (Severity.WARNING, "subscript is out of bounds and yields NA"),
    Code.W_ZERO_INDEX: (Severity.WARNING, "zero subscript is dropped from the result"),
    # R wording
    Code.E_NA_SUBASSIGN: (
        Severity.ERROR,
        "NAs are not allowed in subscripted assignments",
    ),
    Code.E_BADSUBSCRIPT: (Severity.ERROR, "invalid subscript type"),
    Code.E_BADCOMBINE: (Severity.ERROR, "cannot combine function values"),
}


@dataclass(frozen=True)
class Diagnostic:
    code: Code
    severity: Severity
    span: SourceSpan
    message: str
    phase: Phase
    # Deparsed text of the offending call, used for R-style "In <call> :"
    # rendering.  Not part of the JSON contract.
    context: str | None = field(default=None, compare=False)


def make_diagnostic(
    code: Code,
    span: SourceSpan,
    phase: Phase,
    *,
    message: str | None = None,
    context: str | None = None,
    severity: Severity | None = None,
) -> Diagnostic:
    default_severity, default_message = CATALOG[code]
    return Diagnostic(
        code=code,
        severity=severity or default_severity,
        span=span,
        message=message if message is not None else default_message,
        phase=phase,
        context=context,
    )


def render_text(diag: Diagnostic, source: str) -> str:
    """One-line header plus a caret-underlined excerpt of the source."""
    span = diag.span
    header = (
        f"{diag.severity.value}[{diag.code.value}] "
        f"at {span.start_line}:{span.start_col}: {diag.message}"
    )
    lines = source.split("\n")
    if not 1 <= span.start_line <= len(lines):
        return header
    line = lines[span.start_line - 1]
    if span.end_line == span.start_line:
        width = max(1, span.end_col - span.start_col)
    else:
        width = max(1, len(line) - span.start_col + 1)
    gutter = f"{span.start_line} | "
    excerpt = gutter + line
    underline = " " * (len(gutter) + span.start_col - 1) + "^" * width
    return f"{header}\n{excerpt}\n{underline}"


def _span_obj(span: SourceSpan) -> dict:
    return {
        "start_line": span.start_line,
        "start_col": span.start_col,
        "end_line": span.end_line,
        "end_col": span.end_col,
    }


def diagnostic_obj(diag: Diagnostic) -> dict:
    return {
        "code": diag.code.value,
        "severity": diag.severity.value,
        "phase": diag.phase.value,
        "message": diag.message,
        "span": _span_obj(diag.span),
    }


def render_json(report: list[Diagnostic]) -> str:
    """Deterministic JSON array sorted by (start_line, start_col, code)."""
    ordered = sorted(
        report, key=lambda d: (d.span.start_line, d.span.start_col, d.code.value)
    )
    return json.dumps([diagnostic_obj(d) for d in ordered], indent=2)
