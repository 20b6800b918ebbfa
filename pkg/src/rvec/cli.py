"""Command-line driver: `rvec-check check | run | diff`.

Exit codes: 0 no diagnostics, 1 warnings only, 2 errors (static or
runtime), 3 lex/parse failure, 4 I/O failure.  `diff` exits 0 only when
no statement shows a checker/interpreter MISMATCH.
"""

from __future__ import annotations

import argparse
import json
import sys

from .corpus import (
    VERDICT_MISMATCH, diff_case, iter_case_paths, load_case,
)
from .diagnostics import (
    Code, Diagnostic, Severity, diagnostic_obj, render_json, render_text,
)
from .interp import EvalOutcome, run_program
from .rprint import render_value
from .shapecheck import check_program
from .syntax import LexError, ParseError, parse_source
from .values import length_of, mode_of

# Errors R reports without an "in <call>" context.
_BARE_ERRORS = (Code.E_NOTFUN, Code.E_UNBOUND)


def _severity_exit(diags: list[Diagnostic]) -> int:
    if any(d.severity is Severity.ERROR for d in diags):
        return 2
    if diags:
        return 1
    return 0


def _read_source(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _parse_failure(exc: LexError | ParseError, out) -> int:
    kind = "lex" if isinstance(exc, LexError) else "parse"
    span = exc.span
    print(
        f"error[{kind}] at {span.start_line}:{span.start_col}: {exc.message}",
        file=out,
    )
    return 3


def error_lines(diag: Diagnostic) -> list[str]:
    if diag.code in _BARE_ERRORS or diag.context is None:
        return [f"Error: {diag.message}"]
    return [f"Error in {diag.context} : {diag.message}"]


def warning_lines(warnings: list[Diagnostic]) -> list[str]:
    def body(d: Diagnostic, prefix: str = "") -> list[str]:
        ctx = d.context or ""
        one = f"{prefix}In {ctx} : {d.message}"
        if len(one) <= 80:
            return [one]
        return [f"{prefix}In {ctx} :", f"  {d.message}"]

    if not warnings:
        return []
    if len(warnings) == 1:
        return ["Warning message:"] + body(warnings[0])
    lines = ["Warning messages:"]
    for i, w in enumerate(warnings, start=1):
        lines.extend(body(w, prefix=f"{i}: "))
    return lines


def render_run_output(outcomes: list[EvalOutcome]) -> str:
    lines: list[str] = []
    for outcome in outcomes:
        if outcome.error is not None:
            lines.extend(warning_lines(outcome.warnings))
            lines.extend(error_lines(outcome.error))
            break
        if outcome.visible:
            lines.extend(render_value(outcome.result).split("\n"))
        lines.extend(warning_lines(outcome.warnings))
    return "\n".join(lines) + "\n" if lines else ""


def cmd_check(
    path: str,
    json_output: bool = False,
    show_types: bool = False,
    strict_recycle: bool = False,
    out=None,
) -> int:
    out = out or sys.stdout
    try:
        source = _read_source(path)
    except OSError as e:
        print(f"error: cannot read {path}: {e}", file=sys.stderr)
        return 4
    try:
        program = parse_source(source)
    except (LexError, ParseError) as e:
        return _parse_failure(e, out if json_output else sys.stderr)
    report = check_program(program, strict_recycle=strict_recycle)
    if json_output:
        if show_types:
            payload = {
                "diagnostics": json.loads(render_json(report.diagnostics)),
                "statement_types": [t.describe() for t in report.statement_types],
            }
            print(json.dumps(payload, indent=2), file=out)
        else:
            print(render_json(report.diagnostics), file=out)
    else:
        for diag in report.diagnostics:
            print(render_text(diag, source), file=out)
        if show_types:
            for i, t in enumerate(report.statement_types, start=1):
                print(f"#{i}: {t.describe()}", file=out)
    return _severity_exit(report.diagnostics)


def cmd_run(
    path: str, json_output: bool = False, growth: bool = False, out=None
) -> int:
    out = out or sys.stdout
    try:
        source = _read_source(path)
    except OSError as e:
        print(f"error: cannot read {path}: {e}", file=sys.stderr)
        return 4
    try:
        program = parse_source(source)
    except (LexError, ParseError) as e:
        return _parse_failure(e, sys.stderr)
    outcomes = run_program(program, growth=growth)
    diags: list[Diagnostic] = []
    for o in outcomes:
        diags.extend(o.warnings)
        if o.error is not None:
            diags.append(o.error)
    if json_output:
        payload = {
            "statements": [
                {
                    "index": i + 1,
                    "visible": o.visible,
                    "value": None if o.result is None else render_value(o.result),
                    "length": None if o.result is None else length_of(o.result),
                    "mode": None if o.result is None else mode_of(o.result),
                    "warnings": [diagnostic_obj(w) for w in o.warnings],
                    "error": None if o.error is None else diagnostic_obj(o.error),
                }
                for i, o in enumerate(outcomes)
            ]
        }
        print(json.dumps(payload, indent=2), file=out)
    else:
        text = render_run_output(outcomes)
        if text:
            out.write(text)
    return _severity_exit(diags)


def _fmt_size(n: int | None) -> str:
    return "?" if n is None else str(n)


def cmd_diff(path: str, self_test: bool = False, out=None) -> int:
    out = out or sys.stdout
    try:
        paths = iter_case_paths(path)
        cases = [load_case(p) for p in paths]
    except OSError as e:
        print(f"error: cannot read {path}: {e}", file=sys.stderr)
        return 4
    if not cases:
        print(f"error: no .R cases under {path}", file=sys.stderr)
        return 4
    mismatches = 0
    rows_total = 0
    print(f"{'case':<32} {'stmt':>4} {'static':>6} {'run':>5}  verdict", file=out)
    for case in cases:
        try:
            rows = diff_case(case)
        except (LexError, ParseError) as e:
            print(f"{case.path}: parse failure: {e.message}", file=out)
            return 3
        for row in rows:
            rows_total += 1
            if row.verdict == VERDICT_MISMATCH:
                mismatches += 1
            name = case.path.rsplit("/", 1)[-1]
            print(
                f"{name:<32} {row.statement:>4} {_fmt_size(row.static_size):>6} "
                f"{_fmt_size(row.runtime_length):>5}  {row.verdict}",
                file=out,
            )
    print(
        f"{len(cases)} cases, {rows_total} statements, {mismatches} mismatches",
        file=out,
    )
    if self_test:
        detected = 0
        for case in cases:
            try:
                detected += sum(
                    1 for r in diff_case(case, mutate=True)
                    if r.verdict == VERDICT_MISMATCH
                )
            except (LexError, ParseError):
                continue
        print(
            f"self-test: perturbed checker produced {detected} mismatches "
            f"({'ok' if detected else 'FAILED: harness blind'})",
            file=out,
        )
        if detected == 0:
            return 1
    return 0 if mismatches == 0 else 1


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="rvec-check",
        description="Static checker and reference interpreter for the R vector subset",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="statically check a file")
    p_check.add_argument("path")
    p_check.add_argument("--json", action="store_true")
    p_check.add_argument("--types", action="store_true")
    p_check.add_argument("--strict-recycle", action="store_true")

    p_run = sub.add_parser("run", help="evaluate a file")
    p_run.add_argument("path")
    p_run.add_argument("--json", action="store_true")
    p_run.add_argument(
        "--r-compat-growth", action="store_true",
        help="grow vectors on out-of-bounds assignment like real R",
    )

    p_diff = sub.add_parser("diff", help="compare checker and interpreter")
    p_diff.add_argument("path")
    p_diff.add_argument(
        "--self-test", action="store_true",
        help="also run with one checker rule deliberately broken",
    )

    args = parser.parse_args(argv)
    if args.command == "check":
        return cmd_check(
            args.path,
            json_output=args.json,
            show_types=args.types,
            strict_recycle=args.strict_recycle,
        )
    if args.command == "run":
        return cmd_run(args.path, json_output=args.json, growth=args.r_compat_growth)
    return cmd_diff(args.path, self_test=args.self_test)


if __name__ == "__main__":
    sys.exit(main())
