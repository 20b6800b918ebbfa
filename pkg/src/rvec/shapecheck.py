"""Flow-sensitive static checker over container kind, mode, size, and
subscript sign/content knowledge.

The size domain is two-point: `Known(n)` (every run yields length exactly
n) or `Unknown`.  Whenever a rule cannot guarantee an exact length it
falls back to Unknown rather than guessing, which keeps the key soundness
property: a program the checker passes with all-Known sizes runs without
warnings or errors, and every statement's runtime length equals the
prediction.

Element contents are tracked only for containers built entirely from
literals; they resolve logical-mask result sizes, exact negative-exclusion
counts, static bounds checks, and zero-index detection.  An NA literal
poisons the contents (but not the size) of the container it appears in.

Function calls are checked by re-analyzing the callee's body with the
actual argument types (call-site polymorphism), with a recursion budget
beyond which the result degrades to Top.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum

from .diagnostics import (
    Code, Diagnostic, Phase, Severity, SourceSpan, make_diagnostic,
)
from .syntax import (
    Assign, BinOp, Call, Expr, FunctionDef, Index, IndexAssign, LogicalLit,
    NaLit, NullLit, NumLit, Program, StrLit, Var, pretty_print,
)
from .values import NA, Mode, Scalar, is_na, mode_lub

BUILTINS = ("c", "array", "matrix", "mode", "length")

# Contents larger than this are not propagated; sizes still are.
_MAX_TRACKED = 256


class Kind(Enum):
    VECTOR = "vector"
    ARRAY = "array"
    CLOSURE = "closure"
    NULL = "NULL"
    TOP = "top"


class SignInfo(Enum):
    ALL_NONNEG = "all-nonneg"
    ALL_NONPOS = "all-nonpos"
    MIXED = "mixed"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class FunctionSummary:
    params: tuple[str, ...]
    body: tuple[Expr, ...] = field(compare=False)
    env: "AbsEnv" = field(compare=False)


@dataclass(frozen=True)
class AbsType:
    """Static abstraction of a runtime value.

    `size`/`dims` use None for Unknown; `contents` is None unless every
    element is statically known.  `sign` is meaningful for numeric
    containers only."""

    kind: Kind
    mode: Mode | None = None  # None = unknown (or absent, for NULL/TOP)
    size: int | None = None
    dims: tuple[int | None, ...] | None = None
    sign: SignInfo = SignInfo.UNKNOWN
    contents: tuple[Scalar, ...] | None = None
    summary: FunctionSummary | None = None

    def is_empty(self) -> bool:
        return self.size == 0

    def describe(self) -> str:
        if self.kind is Kind.TOP:
            return "top"
        if self.kind is Kind.NULL:
            return "NULL"
        if self.kind is Kind.CLOSURE:
            arity = len(self.summary.params) if self.summary else "?"
            return f"closure/{arity}"
        mode = self.mode.label if self.mode else "?"
        size = "?" if self.size is None else str(self.size)
        if self.kind is Kind.ARRAY:
            if self.dims is None:
                dims = "?"
            else:
                dims = "x".join("?" if d is None else str(d) for d in self.dims)
            return f"array[{mode}, dims={dims}, len={size}]"
        return f"vector[{mode}, len={size}]"


TOP = AbsType(Kind.TOP)
NULL_T = AbsType(Kind.NULL, size=0, contents=())


def _sign_of_contents(contents: tuple[Scalar, ...]) -> SignInfo:
    values = [x for x in contents if not is_na(x)]
    if any(is_na(x) for x in contents):
        return SignInfo.UNKNOWN
    nums = [float(x) for x in values]
    if any(math.isnan(v) for v in nums):
        return SignInfo.UNKNOWN
    if all(v >= 0 for v in nums):
        return SignInfo.ALL_NONNEG
    if all(v <= 0 for v in nums):
        return SignInfo.ALL_NONPOS
    return SignInfo.MIXED


def vec(
    mode: Mode | None,
    size: int | None,
    contents: tuple[Scalar, ...] | None = None,
    sign: SignInfo | None = None,
) -> AbsType:
    if contents is not None and any(is_na(x) for x in contents):
        contents = None  # NA poisons exact-content analyses
    if sign is None:
        if contents is not None and mode in (Mode.NUMERIC, Mode.LOGICAL):
            sign = _sign_of_contents(contents)
        else:
            sign = SignInfo.UNKNOWN
    return AbsType(Kind.VECTOR, mode=mode, size=size, sign=sign, contents=contents)


def _join_size(a: int | None, b: int | None) -> int | None:
    return a if a == b else None


def _join_sign(a: SignInfo, b: SignInfo) -> SignInfo:
    return a if a == b else SignInfo.UNKNOWN


def abs_join(a: AbsType, b: AbsType) -> AbsType:
    """Pointwise lattice join; any disagreement degrades to Unknown/Top."""
    if a == b:
        return a
    if a.kind is not b.kind:
        return TOP
    mode = a.mode if a.mode == b.mode else None
    size = _join_size(a.size, b.size)
    dims = a.dims if a.dims == b.dims else None
    contents = a.contents if a.contents == b.contents else None
    sign = _join_sign(a.sign, b.sign)
    summary = a.summary if a.summary == b.summary else None
    return AbsType(a.kind, mode, size, dims, sign, contents, summary)


class AbsEnv:
    """Flow-sensitive name-to-AbsType frames with lexical parents."""

    def __init__(self, parent: "AbsEnv | None" = None):
        self.parent = parent
        self.frame: dict[str, AbsType] = {}

    def child(self) -> "AbsEnv":
        return AbsEnv(self)

    def lookup(self, name: str) -> AbsType | None:
        env: AbsEnv | None = self
        while env is not None:
            if name in env.frame:
                return env.frame[name]
            env = env.parent
        return None

    def assign(self, name: str, t: AbsType) -> None:
        self.frame[name] = t


@dataclass
class CheckReport:
    diagnostics: list[Diagnostic]
    statement_types: list[AbsType]
    # Internal detail for the differential harness: diagnostics grouped by
    # top-level statement, and whether every participating size/content in
    # that statement was statically known.
    by_statement: list[list[Diagnostic]] = field(default_factory=list)
    fully_known: list[bool] = field(default_factory=list)

    @property
    def has_errors(self) -> bool:
        return any(d.severity is Severity.ERROR for d in self.diagnostics)


def _trunc_contents(contents: tuple[Scalar, ...]) -> list[int] | None:
    out: list[int] = []
    for s in contents:
        v = 1.0 if s is True else 0.0 if s is False else float(s)
        if math.isnan(v) or math.isinf(v):
            return None
        out.append(math.trunc(v))
    return out


def _fold_arith(op: str, a: float, b: float) -> float:
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    try:
        return a / b
    except ZeroDivisionError:
        if a == 0.0 or math.isnan(a):
            return math.nan
        return math.copysign(1.0, a) * math.copysign(1.0, b) * math.inf


class Checker:
    def __init__(
        self,
        strict_recycle: bool = False,
        recursion_limit: int = 8,
        _mutate_binop_size: bool = False,
    ):
        self.strict_recycle = strict_recycle
        self.recursion_limit = recursion_limit
        self._mutate = _mutate_binop_size
        self.diagnostics: list[Diagnostic] = []
        self._seen: set[tuple] = set()
        self._current: list[Diagnostic] = []
        self._fully_known = True

    # --- diagnostics ---------------------------------------------------

    def _emit(self, code: Code, span: SourceSpan, message: str | None = None) -> None:
        severity = None
        if self.strict_recycle and code in (
            Code.W_NONMULTIPLE, Code.W_REPLACE_NONMULTIPLE
        ):
            severity = Severity.ERROR
        diag = make_diagnostic(
            code, span, Phase.STATIC, message=message, severity=severity
        )
        key = (diag.code, diag.span, diag.message, diag.severity)
        if key in self._seen:
            return
        self._seen.add(key)
        self.diagnostics.append(diag)
        self._current.append(diag)

    def _note_precision(self, t: AbsType) -> AbsType:
        """Track whether this statement's analysis stayed fully concrete."""
        if t.kind is Kind.TOP or t.size is None:
            self._fully_known = False
        elif t.kind in (Kind.VECTOR, Kind.ARRAY) and t.contents is None:
            self._fully_known = False
        return t

    # --- entry point ----------------------------------------------------

    def check_program(self, program: Program) -> CheckReport:
        env = AbsEnv()
        report = CheckReport([], [])
        for stmt in program.exprs:
            self._current = []
            self._fully_known = True
            t = self._check(stmt, env, 0)
            report.statement_types.append(t)
            report.by_statement.append(self._current)
            report.fully_known.append(self._fully_known)
        report.diagnostics = list(self.diagnostics)
        return report

    # --- expression dispatch ---------------------------------------------

    def _check(self, expr: Expr, env: AbsEnv, depth: int) -> AbsType:
        match expr:
            case NumLit(value):
                t = vec(Mode.NUMERIC, 1, (float(value),))
            case StrLit(value):
                t = vec(Mode.CHARACTER, 1, (value,))
            case LogicalLit(value):
                t = vec(Mode.LOGICAL, 1, (bool(value),))
            case NaLit():
                t = vec(Mode.LOGICAL, 1, (NA,))
            case NullLit():
                t = NULL_T
            case Var(name):
                found = env.lookup(name)
                if found is None:
                    self._emit(
                        Code.E_UNBOUND, expr.span,
                        message=f"object '{name}' not found",
                    )
                    t = TOP
                else:
                    t = found
            case Assign(target, value_expr):
                t = self._check(value_expr, env, depth)
                env.assign(target, t)
            case FunctionDef(params, body):
                # Closures capture the defining environment by reference
                # (as at runtime): a captured name reassigned between the
                # definition and a call is seen with its current type.
                summary = FunctionSummary(tuple(params), tuple(body), env)
                t = AbsType(
                    Kind.CLOSURE, mode=Mode.FUNCTION, size=1, summary=summary
                )
            case BinOp(op, lhs_expr, rhs_expr):
                lhs = self._check(lhs_expr, env, depth)
                rhs = self._check(rhs_expr, env, depth)
                if op in ("+", "-", "*", "/"):
                    t = self.t_binop_arith(lhs, rhs, expr, op)
                else:
                    t = self.t_binop_logical(lhs, rhs, expr, op)
            case Index(base_expr, sub_expr):
                base = self._check(base_expr, env, depth)
                sub = self._check(sub_expr, env, depth)
                t = self.t_subscript(base, sub, expr)
            case IndexAssign():
                t = self._check_index_assign(expr, env, depth)
            case Call():
                t = self._check_call(expr, env, depth)
            case _:
                raise AssertionError(f"unhandled node {expr!r}")
        return self._note_precision(t)

    def _check_index_assign(self, expr: IndexAssign, env: AbsEnv, depth: int) -> AbsType:
        base = env.lookup(expr.base)
        if base is None:
            self._emit(
                Code.E_UNBOUND, expr.span,
                message=f"object '{expr.base}' not found",
            )
            base = TOP
        sub = self._check(expr.subscript, env, depth)
        repl = self._check(expr.replacement, env, depth)
        updated = self.t_subscript_assign(base, sub, repl, expr)
        env.assign(expr.base, updated)
        return updated

    def _check_call(self, expr: Call, env: AbsEnv, depth: int) -> AbsType:
        callee = expr.callee
        if isinstance(callee, Var):
            bound = env.lookup(callee.name)
            if bound is None and callee.name in BUILTINS:
                return self._check_builtin(expr, callee.name, env, depth)
            if bound is None:
                self._emit(
                    Code.E_UNBOUND, callee.span,
                    message=f"object '{callee.name}' not found",
                )
                for a in expr.args:
                    self._check(a, env, depth)
                return TOP
            if callee.name in BUILTINS:
                # A rebound core constructor no longer has its default
                # meaning; give up rather than guess.
                for a in expr.args:
                    self._check(a, env, depth)
                return TOP
            callee_t = bound
        else:
            callee_t = self._check(callee, env, depth)
        args = [self._check(a, env, depth) for a in expr.args]
        return self.t_apply(callee_t, args, expr, depth)

    def _check_builtin(self, expr: Call, name: str, env: AbsEnv, depth: int) -> AbsType:
        args = [self._check(a, env, depth) for a in expr.args]
        if name == "c":
            return self.t_combine(args, expr)
        if name in ("array", "matrix"):
            if not self._builtin_arity(expr, ("data", "dim"), len(args)):
                return AbsType(Kind.ARRAY)
            builder = self.t_array if name == "array" else self.t_matrix
            return builder(args[0], args[1], expr)
        if not self._builtin_arity(expr, ("x",), len(args)):
            return vec(Mode.CHARACTER if name == "mode" else Mode.NUMERIC, 1)
        if name == "mode":
            return self._t_mode(args[0])
        return self._t_length(args[0])

    def _builtin_arity(self, expr: Call, params: tuple[str, ...], nargs: int) -> bool:
        if nargs > len(params):
            extra = [pretty_print(a) for a in expr.args[len(params):]]
            noun = "argument" if len(extra) == 1 else "arguments"
            self._emit(
                Code.E_UNUSED_ARGS, expr.span,
                message=f"unused {noun} ({', '.join(extra)})",
            )
            return False
        if nargs < len(params):
            self._emit(
                Code.E_MISSING_ARG, expr.span,
                message=f'argument "{params[nargs]}" is missing, with no default',
            )
            return False
        return True

    def _t_mode(self, arg: AbsType) -> AbsType:
        if arg.kind is Kind.NULL:
            return vec(Mode.CHARACTER, 1, ("NULL",))
        if arg.kind is Kind.CLOSURE:
            return vec(Mode.CHARACTER, 1, ("function",))
        if arg.kind is Kind.TOP or arg.mode is None:
            return vec(Mode.CHARACTER, 1)
        return vec(Mode.CHARACTER, 1, (arg.mode.label,))

    def _t_length(self, arg: AbsType) -> AbsType:
        if arg.size is None:
            return vec(Mode.NUMERIC, 1, sign=SignInfo.ALL_NONNEG)
        return vec(Mode.NUMERIC, 1, (float(arg.size),))

    # --- rules ------------------------------------------------------------

    def t_combine(self, args: list[AbsType], expr: Call) -> AbsType:
        for a in args:
            if a.kind is Kind.CLOSURE or a.mode is Mode.FUNCTION:
                self._emit(Code.E_BADCOMBINE, expr.span)
                return vec(None, None)
        size: int | None = 0
        mode: Mode | None = None
        mode_unknown = False
        for a in args:
            if a.kind is Kind.TOP:
                size = None
                mode_unknown = True
                continue
            if a.size is None or size is None:
                size = None
            else:
                size += a.size
            if a.kind is Kind.NULL:
                continue
            if a.mode is None:
                mode_unknown = True
            else:
                mode = mode_lub(mode, a.mode)
        if mode_unknown:
            mode = None
        if size == 0:
            return NULL_T
        contents: tuple[Scalar, ...] | None = None
        if (
            mode is not None
            and size is not None
            and size <= _MAX_TRACKED
            and all(a.contents is not None for a in args)
        ):
            from .values import convert_scalar

            out: list[Scalar] = []
            for a in args:
                src = a.mode
                for x in a.contents:
                    out.append(x if src is None else convert_scalar(x, src, mode))
            contents = tuple(out)
        sign = SignInfo.UNKNOWN
        if contents is not None and mode in (Mode.NUMERIC, Mode.LOGICAL):
            sign = _sign_of_contents(contents)
        elif mode in (Mode.NUMERIC, Mode.LOGICAL):
            signs = []
            for a in args:
                if a.kind is Kind.NULL:
                    continue
                signs.append(
                    SignInfo.ALL_NONNEG if a.mode is Mode.LOGICAL else a.sign
                )
            if signs and all(s is SignInfo.ALL_NONNEG for s in signs):
                sign = SignInfo.ALL_NONNEG
            elif signs and all(s is SignInfo.ALL_NONPOS for s in signs):
                sign = SignInfo.ALL_NONPOS
        return vec(mode, size, contents, sign)

    def _binop_shape(
        self, lhs: AbsType, rhs: AbsType, expr: BinOp
    ) -> tuple[int | None, Kind, tuple[int | None, ...] | None, bool]:
        """Common size/kind logic; returns (size, kind, dims, warned)."""
        kind = Kind.VECTOR
        dims: tuple[int | None, ...] | None = None
        if lhs.kind is Kind.ARRAY and rhs.kind is Kind.ARRAY:
            kind = Kind.ARRAY
            if (
                lhs.dims is not None and rhs.dims is not None
                and None not in lhs.dims and None not in rhs.dims
                and lhs.dims != rhs.dims
            ):
                self._emit(Code.E_DIMS_MISMATCH, expr.op_span)
            dims = lhs.dims if lhs.dims is not None else rhs.dims
        elif lhs.kind is Kind.ARRAY or rhs.kind is Kind.ARRAY:
            kind = Kind.ARRAY
            arr, other = (lhs, rhs) if lhs.kind is Kind.ARRAY else (rhs, lhs)
            dims = arr.dims
            if (
                arr.size is not None and other.size is not None
                and other.size > arr.size
            ):
                self._emit(Code.E_DIMS_MISMATCH, expr.op_span)
        a, b = lhs.size, rhs.size
        warned = False
        if a is None or b is None:
            return None, kind, dims, warned
        if a == 0 or b == 0:
            return 0, Kind.VECTOR, None, warned
        hi, lo = max(a, b), min(a, b)
        if hi % lo != 0:
            self._emit(Code.W_NONMULTIPLE, expr.op_span)
            warned = True
        if self._mutate and a != b:
            return lo, kind, dims, warned  # deliberately wrong (harness self-test)
        return hi, kind, dims, warned

    def t_binop_arith(self, lhs: AbsType, rhs: AbsType, expr: BinOp, op: str = "+") -> AbsType:
        bad = False
        for side in (lhs, rhs):
            if side.kind is Kind.CLOSURE or side.mode in (Mode.CHARACTER, Mode.FUNCTION):
                self._emit(Code.E_NONNUMERIC, expr.op_span)
                bad = True
        size, kind, dims, _ = self._binop_shape(lhs, rhs, expr)
        if bad:
            return vec(Mode.NUMERIC, None)
        contents: tuple[Scalar, ...] | None = None
        sign = SignInfo.UNKNOWN
        if (
            size is not None
            and 0 < size <= 64
            and lhs.contents is not None
            and rhs.contents is not None
            and lhs.contents and rhs.contents
        ):
            la = [float(x) if not isinstance(x, bool) else (1.0 if x else 0.0)
                  for x in lhs.contents]
            rb = [float(x) if not isinstance(x, bool) else (1.0 if x else 0.0)
                  for x in rhs.contents]
            folded = tuple(
                _fold_arith(op, la[i % len(la)], rb[i % len(rb)])
                for i in range(size)
            )
            contents = folded
            sign = _sign_of_contents(folded)
        if kind is Kind.ARRAY:
            return AbsType(
                Kind.ARRAY, Mode.NUMERIC, size, dims, sign, contents
            )
        return vec(Mode.NUMERIC, size, contents, sign)

    def t_binop_logical(self, lhs: AbsType, rhs: AbsType, expr: BinOp, op: str = "&") -> AbsType:
        mask_op = op in ("&", "|")
        for side in (lhs, rhs):
            if side.kind is Kind.CLOSURE or side.mode is Mode.FUNCTION:
                self._emit(Code.E_NONLOGICAL, expr.op_span)
            elif mask_op and side.mode is Mode.CHARACTER:
                self._emit(Code.E_NONLOGICAL, expr.op_span)
        size, kind, dims, _ = self._binop_shape(lhs, rhs, expr)
        if kind is Kind.ARRAY:
            return AbsType(Kind.ARRAY, Mode.LOGICAL, size, dims)
        return vec(Mode.LOGICAL, size)

    def _shape_dims(self, shape: AbsType, expr: Call) -> tuple[int | None, ...] | None:
        """Validate a shape argument and return its dims when known."""
        if shape.kind is Kind.NULL or shape.size == 0:
            self._emit(Code.E_BADDIMS, expr.span)
            return None
        if shape.kind is Kind.CLOSURE or shape.mode in (Mode.CHARACTER, Mode.FUNCTION):
            self._emit(Code.E_BADDIMS, expr.span)
            return None
        if shape.sign is SignInfo.MIXED:
            self._emit(Code.E_BADDIMS, expr.span)
            return None
        if shape.contents is not None:
            ints = _trunc_contents(shape.contents)
            if ints is None:
                return None if shape.size is None else (None,) * shape.size
            if any(d < 0 for d in ints):
                self._emit(Code.E_BADDIMS, expr.span)
                return None
            return tuple(ints)
        if shape.size is not None:
            return (None,) * shape.size
        return None

    def _array_result(
        self, elems: AbsType, dims: tuple[int | None, ...] | None
    ) -> AbsType:
        size: int | None = None
        if dims is not None and None not in dims:
            size = math.prod(dims)
        contents: tuple[Scalar, ...] | None = None
        if (
            size is not None and size <= _MAX_TRACKED
            and elems.contents is not None and elems.contents
        ):
            contents = tuple(elems.contents[i % len(elems.contents)] for i in range(size))
        sign = elems.sign if contents is None else _sign_of_contents(contents)
        return AbsType(Kind.ARRAY, elems.mode, size, dims, sign, contents)

    def _check_data_arg(self, elems: AbsType, expr: Call) -> bool:
        if elems.kind is Kind.NULL or elems.size == 0:
            self._emit(Code.E_NULLDATA, expr.span)
            return False
        if elems.kind is Kind.CLOSURE or elems.mode is Mode.FUNCTION:
            self._emit(
                Code.E_NULLDATA, expr.span,
                message="'data' must be of a vector type, was 'function'",
            )
            return False
        return True

    def t_array(self, elems: AbsType, shape: AbsType, expr: Call) -> AbsType:
        ok = self._check_data_arg(elems, expr)
        dims = self._shape_dims(shape, expr)
        if not ok:
            return AbsType(Kind.ARRAY, elems.mode if elems.kind is not Kind.CLOSURE else None)
        return self._array_result(elems, dims)

    def t_matrix(self, elems: AbsType, shape: AbsType, expr: Call) -> AbsType:
        ok = self._check_data_arg(elems, expr)
        if shape.size is not None and shape.size != 2:
            # The runtime truncates extra dimensions (with a warning) and
            # rejects fewer; statically both are rejected outright.
            self._emit(Code.E_MATRIX_DIMS, expr.span)
        dims = self._shape_dims(shape, expr)
        if dims is not None:
            if len(dims) < 2:
                dims = None
            elif len(dims) > 2:
                dims = dims[:2]
        elif shape.size is None:
            dims = (None, None)
        if not ok:
            return AbsType(Kind.ARRAY, None, dims=dims)
        return self._array_result(elems, dims)

    def t_subscript(self, base: AbsType, sub: AbsType, expr: Index) -> AbsType:
        if base.kind is Kind.CLOSURE:
            self._emit(
                Code.E_BADSUBSCRIPT, expr.span,
                message="object of type 'closure' is not subsettable",
            )
            return TOP
        if base.kind is Kind.NULL:
            return NULL_T
        bmode = base.mode
        if sub.kind is Kind.CLOSURE or sub.mode is Mode.FUNCTION:
            self._emit(
                Code.E_BADSUBSCRIPT, expr.span,
                message="invalid subscript type 'closure'",
            )
            return vec(bmode, None)
        if sub.mode is Mode.CHARACTER:
            self._emit(
                Code.E_BADSUBSCRIPT, expr.span,
                message="character subscripts are not supported",
            )
            return vec(bmode, None)
        if sub.kind is Kind.NULL or sub.size == 0:
            # An empty subscript reads the whole container (as a vector).
            return vec(bmode, base.size, base.contents, base.sign)
        if sub.kind is Kind.TOP:
            return vec(bmode, None)

        if sub.mode is Mode.LOGICAL:
            if sub.contents is not None and base.size is not None:
                m = max(base.size, len(sub.contents))
                ext = [sub.contents[i % len(sub.contents)] for i in range(m)]
                picked = [p for p, flag in enumerate(ext, start=1) if flag]
                contents = None
                if base.contents is not None:
                    got = tuple(
                        base.contents[p - 1] if p <= base.size else NA for p in picked
                    )
                    contents = got
                return vec(bmode, len(picked), contents)
            return vec(bmode, None)

        if sub.mode not in (Mode.NUMERIC, None):
            return vec(bmode, None)

        if sub.contents is not None:
            ints = _trunc_contents(sub.contents)
            if ints is None:
                return vec(bmode, None)
            has_neg = any(t <= -1 for t in ints)
            has_pos = any(t >= 1 for t in ints)
            if has_neg and has_pos:
                self._emit(Code.E_MIXEDSIGNS, expr.span)
                return vec(bmode, None)
            if has_neg:
                if base.size is None:
                    return vec(bmode, None)
                excluded = {-t for t in ints if t <= -1}
                kept = [p for p in range(1, base.size + 1) if p not in excluded]
                contents = None
                if base.contents is not None:
                    contents = tuple(base.contents[p - 1] for p in kept)
                return vec(bmode, len(kept), contents)
            if any(t == 0 for t in ints):
                # R drops zero indices, breaking the result-length law;
                # warn and give up on the exact size.
                self._emit(Code.W_ZERO_INDEX, expr.span)
                return vec(bmode, None)
            if base.size is not None and any(t > base.size for t in ints):
                self._emit(Code.W_OOB_READ, expr.span)
            contents = None
            if base.contents is not None and base.size is not None:
                got = tuple(
                    base.contents[t - 1] if t <= base.size else NA for t in ints
                )
                contents = got
            return vec(bmode, len(ints), contents)

        if sub.sign is SignInfo.MIXED:
            self._emit(Code.E_MIXEDSIGNS, expr.span)
            return vec(bmode, None)
        # Without contents the exact size is not provable: a non-negative
        # subscript may still contain zeros, which R drops.
        return vec(bmode, None)

    def t_subscript_assign(
        self, base: AbsType, sub: AbsType, repl: AbsType, expr: IndexAssign
    ) -> AbsType:
        if repl.kind is Kind.NULL or repl.size == 0:
            self._emit(Code.E_NULLREPL, expr.span)
            return base
        if repl.kind is Kind.CLOSURE or repl.mode is Mode.FUNCTION:
            self._emit(Code.E_BADCOMBINE, expr.span)
            return base
        if base.kind is Kind.CLOSURE:
            self._emit(
                Code.E_BADSUBSCRIPT, expr.span,
                message="object of type 'closure' is not subsettable",
            )
            return TOP
        if base.kind is Kind.TOP:
            return TOP
        if sub.kind is Kind.CLOSURE or sub.mode is Mode.FUNCTION:
            self._emit(
                Code.E_BADSUBSCRIPT, expr.span,
                message="invalid subscript type 'closure'",
            )
            return replace(base, contents=None, sign=SignInfo.UNKNOWN)
        if sub.mode is Mode.CHARACTER:
            self._emit(
                Code.E_BADSUBSCRIPT, expr.span,
                message="character subscripts are not supported",
            )
            return replace(base, contents=None, sign=SignInfo.UNKNOWN)

        base_size = base.size if base.kind is not Kind.NULL else 0
        mode = repl.mode if base.kind is Kind.NULL else mode_lub_abs(base.mode, repl.mode)

        # Number of addressed positions, when statically known.
        targets: list[int] | None = None
        if sub.kind is Kind.NULL or sub.size == 0:
            targets = []
        elif sub.mode is Mode.LOGICAL:
            if sub.contents is not None and base_size is not None:
                m = max(base_size, len(sub.contents))
                ext = [sub.contents[i % len(sub.contents)] for i in range(m)]
                targets = [p for p, flag in enumerate(ext, start=1) if flag]
        elif sub.mode in (Mode.NUMERIC, None) and sub.contents is not None:
            ints = _trunc_contents(sub.contents)
            if ints is not None:
                has_neg = any(t <= -1 for t in ints)
                has_pos = any(t >= 1 for t in ints)
                if has_neg and has_pos:
                    self._emit(Code.E_MIXEDSIGNS, expr.span)
                elif has_neg:
                    if base_size is not None:
                        excluded = {-t for t in ints if t <= -1}
                        targets = [
                            p for p in range(1, base_size + 1) if p not in excluded
                        ]
                else:
                    targets = [t for t in ints if t >= 1]
        elif sub.sign is SignInfo.MIXED:
            self._emit(Code.E_MIXEDSIGNS, expr.span)

        oob = False
        if targets is not None and base_size is not None:
            beyond = [p for p in targets if p > base_size]
            if beyond:
                self._emit(Code.E_OOB_ASSIGN, expr.span)
                oob = True

        if (
            not oob
            and targets is not None
            and repl.size is not None
            and len(targets) > 0
        ):
            # Same condition the runtime evaluates: R warns whenever the
            # target count is not a multiple of the replacement length
            # (including a replacement longer than the target set).
            t, r = len(targets), repl.size
            if t % r != 0:
                self._emit(Code.W_REPLACE_NONMULTIPLE, expr.span)

        # Fixed-size world: a successful assignment preserves the length.
        contents: tuple[Scalar, ...] | None = None
        if (
            not oob
            and targets is not None
            and base.contents is not None
            and repl.contents is not None
            and base_size is not None
            and base_size <= _MAX_TRACKED
        ):
            from .values import convert_scalar

            new = [
                x if base.mode is None else convert_scalar(x, base.mode, mode)
                for x in base.contents
            ]
            if targets:
                conv = [
                    x if repl.mode is None else convert_scalar(x, repl.mode, mode)
                    for x in repl.contents
                ]
                for i, p in enumerate(targets):
                    new[p - 1] = conv[i % len(conv)]
            contents = tuple(new)

        kind = base.kind if base.kind is Kind.ARRAY else Kind.VECTOR
        sign = SignInfo.UNKNOWN
        if contents is not None and mode in (Mode.NUMERIC, Mode.LOGICAL):
            sign = _sign_of_contents(contents)
        if kind is Kind.ARRAY:
            return AbsType(Kind.ARRAY, mode, base_size, base.dims, sign, contents)
        return vec(mode, base_size, contents, sign)

    def t_apply(self, callee: AbsType, args: list[AbsType], expr: Call, depth: int) -> AbsType:
        if callee.kind is Kind.TOP:
            return TOP
        if callee.kind is not Kind.CLOSURE or callee.summary is None:
            self._emit(Code.E_NOTFUN, expr.span)
            return TOP
        summary = callee.summary
        params = summary.params
        if len(args) > len(params):
            extra = [pretty_print(a) for a in expr.args[len(params):]]
            noun = "argument" if len(extra) == 1 else "arguments"
            self._emit(
                Code.E_UNUSED_ARGS, expr.span,
                message=f"unused {noun} ({', '.join(extra)})",
            )
            return TOP
        if len(args) < len(params):
            self._emit(
                Code.E_MISSING_ARG, expr.span,
                message=f'argument "{params[len(args)]}" is missing, with no default',
            )
            return TOP
        if depth >= self.recursion_limit:
            return TOP
        call_env = summary.env.child()
        for param, arg in zip(params, args):
            call_env.assign(param, arg)
        result: AbsType = NULL_T
        for stmt in summary.body:
            result = self._check(stmt, call_env, depth + 1)
        return result


def mode_lub_abs(a: Mode | None, b: Mode | None) -> Mode | None:
    # None means "unknown" here, which is absorbing (unlike NULL's absent
    # mode, handled by callers).
    if a is None or b is None:
        return None
    return mode_lub(a, b)


def check_program(
    program: Program,
    strict_recycle: bool = False,
    recursion_limit: int = 8,
    _mutate_binop_size: bool = False,
) -> CheckReport:
    checker = Checker(
        strict_recycle=strict_recycle,
        recursion_limit=recursion_limit,
        _mutate_binop_size=_mutate_binop_size,
    )
    return checker.check_program(program)
