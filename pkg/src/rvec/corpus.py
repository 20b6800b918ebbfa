"""Golden-corpus format and the checker-vs-interpreter differential harness.

A corpus case is a single `.R` file: R source, then a `# ---` separator,
then expectation lines, all inside comments so the file stays valid input
for both engines:

    c(1, 2) + c(1, 2, 3)
    # ---
    # diag: W_NONMULTIPLE static 1
    # diag: W_NONMULTIPLE runtime 1
    # run:
    # [1] 2 4 4
    # Warning message:
    # In c(1, 2) + c(1, 2, 3) :
    #   longer object length is not a multiple of shorter object length

`# note:` lines carry free-form annotations (used for transcript errata).
The expected run output is the block after `# run:`, one `# `-prefixed
line per output line.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .diagnostics import Diagnostic, Severity
from .interp import EvalOutcome, run_program
from .shapecheck import CheckReport, check_program
from .syntax import Program, parse_source
from .values import length_of

SEPARATOR = "# ---"

VERDICT_AGREE = "agree"
VERDICT_WEAKER = "checker-weaker"
VERDICT_MISMATCH = "MISMATCH"


@dataclass
class CorpusCase:
    path: str
    source: str
    expected_output: str | None  # None when the case records no run block
    expected_diagnostics: list[tuple[str, str, int]]  # (code, phase, line)
    notes: list[str]


def parse_case(text: str, path: str = "<case>") -> CorpusCase:
    if SEPARATOR in text.split("\n"):
        lines = text.split("\n")
        cut = lines.index(SEPARATOR)
        source = "\n".join(lines[:cut]) + "\n"
        rest = lines[cut + 1 :]
    else:
        return CorpusCase(path, text, None, [], [])
    diags: list[tuple[str, str, int]] = []
    notes: list[str] = []
    run_lines: list[str] | None = None
    for line in rest:
        if run_lines is not None:
            if line == "#":
                run_lines.append("")
            elif line.startswith("# "):
                run_lines.append(line[2:])
            elif line == "":
                continue
            else:
                raise ValueError(f"{path}: bad run-block line {line!r}")
            continue
        if line.startswith("# diag:"):
            parts = line[len("# diag:") :].split()
            if len(parts) != 3:
                raise ValueError(f"{path}: bad diag line {line!r}")
            diags.append((parts[0], parts[1], int(parts[2])))
        elif line.startswith("# note:"):
            notes.append(line[len("# note:") :].strip())
        elif line == "# run:":
            run_lines = []
        elif line == "":
            continue
        else:
            raise ValueError(f"{path}: unexpected expectation line {line!r}")
    expected = None
    if run_lines is not None:
        expected = "\n".join(run_lines) + "\n" if run_lines else ""
    return CorpusCase(path, source, expected, diags, notes)


def load_case(path: str | Path) -> CorpusCase:
    p = Path(path)
    return parse_case(p.read_text(encoding="utf-8"), str(p))


def iter_case_paths(root: str | Path) -> list[Path]:
    p = Path(root)
    if p.is_dir():
        return sorted(p.glob("*.R"))
    return [p]


@dataclass
class DiffRow:
    case: str
    statement: int  # 1-based
    static_size: int | None
    runtime_length: int | None
    predicted: list[str]  # static diagnostic codes
    observed: list[str]  # runtime diagnostic codes
    verdict: str


def _covered(runtime_diag: Diagnostic, static_diags: list[Diagnostic]) -> bool:
    if any(
        s.code is runtime_diag.code and s.span == runtime_diag.span
        for s in static_diags
    ):
        return True
    # A static *error* on the statement means the checker rejected the
    # program outright; that subsumes any runtime finding there (the
    # checker is stricter, not wrong).
    return any(s.severity is Severity.ERROR for s in static_diags)


def diff_statements(
    program: Program, report: CheckReport, outcomes: list[EvalOutcome], case: str
) -> list[DiffRow]:
    rows: list[DiffRow] = []
    for i, outcome in enumerate(outcomes):
        stype = report.statement_types[i]
        sdiags = report.by_statement[i]
        fully = report.fully_known[i]
        runtime_diags = list(outcome.warnings)
        if outcome.error is not None:
            runtime_diags.append(outcome.error)
        runtime_length = None
        verdict = VERDICT_AGREE
        if outcome.error is None:
            runtime_length = length_of(outcome.compare_value)
            if stype.size is not None and stype.size != runtime_length:
                verdict = VERDICT_MISMATCH
        uncovered = [d for d in runtime_diags if not _covered(d, sdiags)]
        if verdict is VERDICT_AGREE and uncovered:
            verdict = VERDICT_MISMATCH if fully else VERDICT_WEAKER
        if verdict is VERDICT_AGREE and stype.size is None and outcome.error is None:
            verdict = VERDICT_WEAKER
        rows.append(
            DiffRow(
                case=case,
                statement=i + 1,
                static_size=stype.size,
                runtime_length=runtime_length,
                predicted=[d.code.value for d in sdiags],
                observed=[d.code.value for d in runtime_diags],
                verdict=verdict,
            )
        )
    return rows


def diff_case(case: CorpusCase, mutate: bool = False) -> list[DiffRow]:
    program = parse_source(case.source)
    report = check_program(program, _mutate_binop_size=mutate)
    outcomes = run_program(program)
    return diff_statements(program, report, outcomes, case.path)
