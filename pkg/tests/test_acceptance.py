"""Acceptance suite.

One test per criterion; each prints a PASS/FAIL line (visible with
`pytest -s tests/test_acceptance.py`).  The whole suite runs in seconds.

1. Golden transcripts reproduced byte-for-byte over the corpus.
2. Static catalog: 8 statically-reportable failures at the correct span,
   zero false positives on the clean corpus cases.
3. Length law, exhaustive over operand lengths [0,8]^2 x 4 operators.
4. Brute-force subscript oracles (negative and logical regimes).
5. Checker soundness fuzz over >= 1000 random literal programs.
6. Differential harness: zero mismatches, and the built-in mutation
   self-test proves the harness detects divergence.
"""

import itertools
import random
from pathlib import Path

import pytest

from rvec.cli import render_run_output
from rvec.corpus import (
    VERDICT_MISMATCH, diff_case, load_case,
)
from rvec.diagnostics import Code, Severity
from rvec.interp import index_get, run_program
from rvec.shapecheck import check_program
from rvec.syntax import (
    Assign, BinOp, Call, Index, IndexAssign, LogicalLit, NumLit, Program, Var,
    parse_source, pretty_print,
)
from rvec.diagnostics import SourceSpan
from rvec.values import NA, Mode, Vector, is_na, length_of

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


def report(criterion, ok, detail):
    marker = "PASS" if ok else "FAIL"
    print(f"\nACCEPTANCE {criterion}: {marker} - {detail}")
    assert ok, f"criterion {criterion}: {detail}"


# --- 1. golden transcripts ----------------------------------------------

REQUIRED_CASES = [
    "01_boxing",            # 5[1][1]... vector boxing
    "02_combine_pair",      # c() concatenation through a function
    "05_null_identity",     # NULL identities
    "07_array_recycle",     # 3x3 array recycling
    "08_matrix_1x4",        # matrix construction
    "09_pairwise_add",      # pair-wise ops
    "10_logical_coerce",    # TRUE & 0 / TRUE & -2
    "14_recycle_warning",   # non-multiple warning
    "16_index_positive",    # positive indexing
    "17_index_negative",    # negative indexing
    "18_index_logical",     # logical indexing
    "19_logical_extend",    # [1]  1  2  3 NA logical extension
    "20_assign_na",         # subscript-assignment transcript 1
    "21_assign_recycle",    # subscript-assignment transcript 2
    "22_assign_warning",    # subscript-assignment transcript 3
    "23_null_replacement",  # subscript-assignment transcript 4
    "25_pipeline_2na6",     # the 2 NA 6 program
]


def test_criterion_1_golden_transcripts():
    paths = sorted(CORPUS.glob("*.R"))
    names = {p.stem for p in paths}
    missing = [n for n in REQUIRED_CASES if n not in names]
    assert not missing, f"corpus lacks required transcripts: {missing}"
    failures = []
    compared = 0
    for path in paths:
        case = load_case(path)
        if case.expected_output is None:
            continue
        outcomes = run_program(parse_source(case.source))
        actual = render_run_output(outcomes)
        compared += 1
        if actual != case.expected_output:
            failures.append((path.stem, case.expected_output, actual))
    ok = compared >= 20 and not failures
    report(
        "1 golden-transcripts", ok,
        f"{compared - len(failures)}/{compared} cases byte-identical"
        + (f"; first failure: {failures[0]}" if failures else ""),
    )


# --- 2. static error catalog ---------------------------------------------

STATIC_CATALOG_CASES = [
    ('"cat" + 1', Code.E_NONNUMERIC, (1, 7)),
    ('"bar"(1,2)', Code.E_NOTFUN, (1, 1)),
    ("foo <- function(a,b) c(a, b)\nfoo(1,2,3)", Code.E_UNUSED_ARGS, (2, 1)),
    ("a <- 1\na[1] = NULL", Code.E_NULLREPL, (2, 1)),
    ("array(c(), c())", Code.E_NULLDATA, (1, 1)),
    ("matrix(c(1,2), c(1,2,9))", Code.E_MATRIX_DIMS, (1, 1)),
    ("c(1,2) + c(1,2,3)", Code.W_NONMULTIPLE, (1, 8)),
    (
        "a <- c(1, 2, 3, 4)\na[c(1,2)] = c(NA, NA, NA)",
        Code.W_REPLACE_NONMULTIPLE,
        (2, 1),
    ),
]


def test_criterion_2_static_catalog():
    hits = 0
    problems = []
    for source, code, (line, col) in STATIC_CATALOG_CASES:
        program = parse_source(source)
        diags = check_program(program).diagnostics
        found = [
            d for d in diags
            if d.code is code
            and (d.span.start_line, d.span.start_col) == (line, col)
        ]
        if found:
            hits += 1
        else:
            problems.append((source, code.value, [(d.code.value, d.span) for d in diags]))
    false_positives = []
    for path in sorted(CORPUS.glob("*.R")):
        case = load_case(path)
        expected_static = [d for d in case.expected_diagnostics if d[1] == "static"]
        if expected_static:
            continue
        diags = check_program(parse_source(case.source)).diagnostics
        if diags:
            false_positives.append((path.stem, [d.code.value for d in diags]))
    ok = hits == len(STATIC_CATALOG_CASES) and not false_positives
    report(
        "2 static-catalog", ok,
        f"{hits}/{len(STATIC_CATALOG_CASES)} codes at the right span, "
        f"{len(false_positives)} false positives on clean cases"
        + (f"; {problems or false_positives}" if not ok else ""),
    )


# --- 3. length law --------------------------------------------------------

def test_criterion_3_length_law():
    violations = []
    for op in ("+", "-", "*", "/"):
        for a, b in itertools.product(range(0, 9), repeat=2):
            lhs = Vector(Mode.NUMERIC, [float(i + 1) for i in range(a)])
            rhs = Vector(Mode.NUMERIC, [float(i + 1) for i in range(b)])
            warned = []
            from rvec.interp import elementwise_arith

            out = elementwise_arith(op, lhs, rhs, warned.append)
            expected_len = 0 if (a == 0 or b == 0) else max(a, b)
            expected_warn = a > 0 and b > 0 and max(a, b) % min(a, b) != 0
            if length_of(out) != expected_len or bool(warned) != expected_warn:
                violations.append((op, a, b, length_of(out), warned))
    report(
        "3 length-law", not violations,
        f"81 pairs x 4 operators exhaustive, {len(violations)} violations",
    )


# --- 4. subscript oracles ---------------------------------------------------


def oracle_negative(base, subs):
    """Ordered set-difference: keep positions not excluded."""
    excluded = {abs(s) for s in subs}
    return [x for pos, x in enumerate(base, start=1) if pos not in excluded]


def oracle_logical(base, mask):
    """Walk the mask laid cyclically over max(len(base), len(mask))."""
    span = max(len(base), len(mask))
    out = []
    for pos in range(span):
        flag = mask[pos % len(mask)]
        if flag is None:
            out.append(NA)
        elif flag:
            out.append(base[pos] if pos < len(base) else NA)
    return out


def same_elems(a, b):
    return len(a) == len(b) and all(
        (is_na(x) and is_na(y)) or x == y for x, y in zip(a, b)
    )


def test_criterion_4_subscript_oracles():
    checked = 0
    disagreements = []
    for n in range(1, 5):
        base = [float(10 + i) for i in range(n)]
        base_vec = Vector(Mode.NUMERIC, list(base))
        for k in range(1, 4):
            for subs in itertools.product([-4, -3, -2, -1], repeat=k):
                got = index_get(
                    base_vec, Vector(Mode.NUMERIC, [float(s) for s in subs])
                )
                want = oracle_negative(base, subs)
                checked += 1
                if not same_elems(got.elems, want):
                    disagreements.append(("neg", n, subs, got.elems, want))
        for k in range(1, 5):
            for mask in itertools.product([True, False, None], repeat=k):
                mask_vec = Vector(
                    Mode.LOGICAL, [NA if m is None else m for m in mask]
                )
                got = index_get(base_vec, mask_vec)
                want = oracle_logical(base, mask)
                checked += 1
                if not same_elems(got.elems, want):
                    disagreements.append(("lgl", n, mask, got.elems, want))
                expected_len = sum(
                    1
                    for pos in range(max(n, k))
                    if mask[pos % k] is None or mask[pos % k]
                )
                if length_of(got) != expected_len:
                    disagreements.append(("lgl-len", n, mask, length_of(got)))
    report(
        "4 subscript-oracles", not disagreements,
        f"{checked} exhaustive cases, {len(disagreements)} disagreements",
    )


# --- 5. soundness fuzz -------------------------------------------------------

_SPAN = SourceSpan(1, 1, 1, 2)


class _Gen:
    """Random literal-only programs over c/arithmetic/index/index-assign."""

    def __init__(self, rng):
        self.rng = rng

    def num_leaf(self):
        return NumLit(float(self.rng.randint(-4, 6)), span=_SPAN)

    def literal_vector(self, min_len=0):
        n = self.rng.randint(min_len, 4)
        args = [self.num_leaf() for _ in range(n)]
        return Call(Var("c", span=_SPAN), args, span=_SPAN)

    def subscript(self):
        roll = self.rng.random()
        if roll < 0.40:
            vals = [self.rng.randint(0, 6) for _ in range(self.rng.randint(1, 3))]
        elif roll < 0.70:
            vals = [-self.rng.randint(1, 5) for _ in range(self.rng.randint(1, 3))]
        else:
            args = [
                LogicalLit(self.rng.random() < 0.5, span=_SPAN)
                for _ in range(self.rng.randint(1, 4))
            ]
            return Call(Var("c", span=_SPAN), args, span=_SPAN)
        args = [NumLit(float(v), span=_SPAN) for v in vals]
        return Call(Var("c", span=_SPAN), args, span=_SPAN)

    def expr(self, depth, bound):
        options = ["leaf", "vector"]
        if depth > 0:
            options += ["binop", "binop", "index", "combine"]
        if bound:
            options.append("var")
        kind = self.rng.choice(options)
        if kind == "leaf":
            return self.num_leaf()
        if kind == "vector":
            return self.literal_vector()
        if kind == "var":
            return Var(self.rng.choice(bound), span=_SPAN)
        if kind == "binop":
            op = self.rng.choice("+-*/")
            return BinOp(
                op,
                self.expr(depth - 1, bound),
                self.expr(depth - 1, bound),
                span=_SPAN, op_span=_SPAN,
            )
        if kind == "index":
            return Index(self.expr(depth - 1, bound), self.subscript(), span=_SPAN)
        args = [self.expr(depth - 1, bound) for _ in range(self.rng.randint(0, 3))]
        return Call(Var("c", span=_SPAN), args, span=_SPAN)

    def program(self):
        stmts = []
        bound = []
        for i in range(self.rng.randint(1, 4)):
            roll = self.rng.random()
            if bound and roll < 0.25:
                stmts.append(
                    IndexAssign(
                        self.rng.choice(bound),
                        self.subscript(),
                        self.literal_vector(min_len=1),
                        "<-",
                        span=_SPAN,
                    )
                )
            elif roll < 0.55:
                name = f"v{len(bound)}"
                stmts.append(Assign(name, self.expr(3, bound), "<-", span=_SPAN))
                bound.append(name)
            else:
                stmts.append(self.expr(3, bound))
        return Program(stmts)


def test_criterion_5_soundness_fuzz():
    rng = random.Random(20260810)
    gen = _Gen(rng)
    total = 1200
    eligible = 0
    violations = []
    for i in range(total):
        source = pretty_print(gen.program())
        program = parse_source(source)
        report_ = check_program(program)
        clean = not report_.diagnostics
        all_known = all(t.size is not None for t in report_.statement_types)
        outcomes = run_program(program)  # must never crash
        if not (clean and all_known):
            continue
        eligible += 1
        runtime_diags = [w for o in outcomes for w in o.warnings]
        runtime_diags += [o.error for o in outcomes if o.error is not None]
        if runtime_diags:
            violations.append((source, [d.code.value for d in runtime_diags]))
            continue
        for stype, outcome in zip(report_.statement_types, outcomes):
            if length_of(outcome.compare_value) != stype.size:
                violations.append(
                    (source, stype.size, length_of(outcome.compare_value))
                )
                break
    ok = not violations and eligible >= 300
    report(
        "5 soundness-fuzz", ok,
        f"{total} programs, {eligible} accepted as diagnostic-free/all-Known, "
        f"{len(violations)} violations"
        + (f"; first: {violations[0]}" if violations else ""),
    )


# --- 6. differential harness -------------------------------------------------

def test_criterion_6_diff_harness():
    cases = [load_case(p) for p in sorted(CORPUS.glob("*.R"))]
    mismatch = [
        (case.path, row.statement)
        for case in cases
        for row in diff_case(case)
        if row.verdict == VERDICT_MISMATCH
    ]
    mutated = sum(
        1
        for case in cases
        for row in diff_case(case, mutate=True)
        if row.verdict == VERDICT_MISMATCH
    )
    ok = not mismatch and mutated >= 1
    report(
        "6 diff-harness", ok,
        f"{len(cases)} cases clean ({len(mismatch)} mismatches); "
        f"mutation self-test detected {mutated} divergences",
    )
