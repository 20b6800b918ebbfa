"""R-style console rendering of runtime values.

Implements what the golden corpus needs: numeric formatting with up to 7
significant digits (integers bare), quoted character values with NA left
bare, `TRUE`/`FALSE`, `NULL`, `numeric(0)`-style empty vectors, index
prefixes with 80-column wrapping, and the 2-D `[i,]` / `[,j]` matrix grid.
"""

from __future__ import annotations

import math

from .syntax import pretty_print
from .values import (
    Closure, Mode, Null, RArray, RValue, Scalar, Vector, is_na,
)

WIDTH = 80


def format_element(x: Scalar, mode: Mode) -> str:
    if is_na(x):
        return "NA"
    if mode is Mode.NUMERIC:
        return _format_numeric(x)
    if mode is Mode.LOGICAL:
        return "TRUE" if x else "FALSE"
    return f'"{x}"'


def _format_numeric(v: float) -> str:
    if math.isnan(v):
        return "NaN"
    if math.isinf(v):
        return "Inf" if v > 0 else "-Inf"
    if v == int(v) and abs(v) < 1e15:
        return str(int(v))
    return f"{v:.7g}"


def _wrap_with_indices(cells: list[str]) -> list[str]:
    """`[k]`-prefixed lines, elements right-aligned to a common width."""
    n = len(cells)
    width = max(len(c) for c in cells)
    label_width = len(f"[{n}]")
    per_line = max(1, (WIDTH - label_width) // (width + 1))
    lines = []
    for start in range(0, n, per_line):
        chunk = cells[start : start + per_line]
        label = f"[{start + 1}]".rjust(label_width)
        lines.append(label + "".join(" " + c.rjust(width) for c in chunk))
    return lines


def _render_vector(mode: Mode, elems: list[Scalar]) -> list[str]:
    if not elems:
        return [f"{mode.label}(0)"]
    return _wrap_with_indices([format_element(x, mode) for x in elems])


def _render_matrix(mode: Mode, nrow: int, ncol: int, elems: list[Scalar]) -> list[str]:
    cells = [[format_element(elems[i + j * nrow], mode) for j in range(ncol)]
             for i in range(nrow)]
    row_labels = [f"[{i + 1},]" for i in range(nrow)]
    label_width = max(len(r) for r in row_labels)
    col_headers = [f"[,{j + 1}]" for j in range(ncol)]
    col_widths = [
        max(len(col_headers[j]), max(len(cells[i][j]) for i in range(nrow)))
        for j in range(ncol)
    ]
    lines = [" " * label_width
             + "".join(" " + col_headers[j].rjust(col_widths[j]) for j in range(ncol))]
    for i in range(nrow):
        lines.append(
            row_labels[i].rjust(label_width)
            + "".join(" " + cells[i][j].rjust(col_widths[j]) for j in range(ncol))
        )
    return lines


def _render_array(v: RArray) -> list[str]:
    dims = v.dims
    if not v.elems:
        return [f"{v.mode.label}(0)"]
    if len(dims) == 1:
        return _render_vector(v.mode, v.elems)
    if len(dims) == 2:
        return _render_matrix(v.mode, dims[0], dims[1], v.elems)
    # Higher-rank arrays print as a stack of 2-D slabs.
    nrow, ncol = dims[0], dims[1]
    slab = nrow * ncol
    lines: list[str] = []
    outer = dims[2:]
    count = math.prod(outer)
    for k in range(count):
        idx = []
        rest = k
        for d in outer:
            idx.append(rest % d + 1)
            rest //= d
        lines.append(", , " + ", ".join(str(i) for i in idx))
        lines.append("")
        lines.extend(
            _render_matrix(v.mode, nrow, ncol, v.elems[k * slab : (k + 1) * slab])
        )
        if k != count - 1:
            lines.append("")
    return lines


def render_value(v: RValue) -> str:
    if isinstance(v, Null):
        return "NULL"
    if isinstance(v, Closure):
        head = f"function({', '.join(v.params)})"
        if len(v.body) == 1:
            return f"{head} {pretty_print(v.body[0])}"
        return f"{head} {{ {'; '.join(pretty_print(e) for e in v.body)} }}"
    if isinstance(v, RArray):
        return "\n".join(_render_array(v))
    return "\n".join(_render_vector(v.mode, v.elems))
