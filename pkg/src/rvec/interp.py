"""Reference interpreter for the R vector subset.

Implements the observable dynamic semantics: pair-wise binary operations
with recycling, mode coercion, NA propagation (Kleene truth tables for
`&`/`|`), the three one-dimensional indexing regimes, subscript-assignment
with replacement recycling, and the `c` / `array` / `matrix` / `mode` /
`length` built-ins.  Warnings and errors surface as catalog-coded
diagnostics so they can be matched against the static checker's output.

Vectors have a fixed size: assigning past the end of a vector is an error
unless the interpreter is constructed with `growth=True`, which switches
to R's extend-with-NA behavior for differential testing against real R.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

from .diagnostics import Code, Diagnostic, Phase, SourceSpan, make_diagnostic
from .syntax import (
    Assign, BinOp, Call, Expr, FunctionDef, Index, IndexAssign, LogicalLit,
    NaLit, NullLit, NumLit, Program, StrLit, Var, pretty_print,
)
from .values import (
    NA, Closure, CoercionError, Env, Mode, NULL, Null, RArray, RValue, Scalar,
    Vector, coerce_to_logical, coerce_to_numeric, container_mode,
    convert_scalar, elements, is_na, length_of, mode_lub, mode_of,
)

BUILTINS = ("c", "array", "matrix", "mode", "length")

WarnFn = Callable[[Code], None]


class InterpError(Exception):
    """Raised by the pure operations; the interpreter attaches span/context."""

    def __init__(self, code: Code, message: str | None = None):
        super().__init__(code.value)
        self.code = code
        self.message = message


class RRuntimeError(Exception):
    """An interpreter error already packaged as a diagnostic."""

    def __init__(self, diagnostic: Diagnostic):
        super().__init__(diagnostic.message)
        self.diagnostic = diagnostic


@dataclass
class RecycleResult:
    elems: list[Scalar]
    was_nonmultiple: bool


def recycle(elems: list[Scalar], target: int) -> RecycleResult:
    """Cyclic extension (or truncation) of `elems` to exactly `target`."""
    if not elems:
        if target == 0:
            return RecycleResult([], False)
        raise ValueError("cannot recycle an empty vector to a positive length")
    out = [elems[i % len(elems)] for i in range(target)]
    return RecycleResult(out, target % len(elems) != 0)


def combine(args: list[RValue]) -> Vector | Null:
    """The `c` built-in: concatenation with mode widening."""
    mode: Mode | None = None
    for arg in args:
        if isinstance(arg, Closure):
            raise InterpError(Code.E_BADCOMBINE)
        mode = mode_lub(mode, container_mode(arg))
    out: list[Scalar] = []
    for arg in args:
        arg_mode = container_mode(arg)
        for x in elements(arg):
            out.append(convert_scalar(x, arg_mode, mode))
    if not out:
        return NULL
    return Vector(mode, out)


def _scalar_arith(op: str, a: float, b: float) -> float:
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    # IEEE division: R yields Inf/-Inf/NaN instead of raising.
    try:
        return a / b
    except ZeroDivisionError:
        if a == 0.0 or math.isnan(a):
            return math.nan
        return math.copysign(1.0, a) * math.copysign(1.0, b) * math.inf


def _kleene(op: str, a: Scalar, b: Scalar) -> Scalar:
    if op == "&":
        if a is False or b is False:
            return False
        if is_na(a) or is_na(b):
            return NA
        return True
    if a is True or b is True:
        return True
    if is_na(a) or is_na(b):
        return NA
    return False


_CMP = {
    ">": lambda a, b: a > b,
    "<": lambda a, b: a < b,
    ">=": lambda a, b: a >= b,
    "<=": lambda a, b: a <= b,
    "==": lambda a, b: a == b,
    "!=": lambda a, b: a != b,
}


def _binop_frame(
    lhs: RValue, rhs: RValue, warn: WarnFn | None
) -> tuple[list[Scalar], list[Scalar], list[int] | None]:
    """Shared container/length logic for the pair-wise operations.

    Returns both operands' elements recycled to a common length plus the
    result dims (set when either operand is an array).  Empty operands
    absorb: the common length is then zero.
    """
    a, b = elements(lhs), elements(rhs)
    dims: list[int] | None = None
    if isinstance(lhs, RArray) and isinstance(rhs, RArray):
        if lhs.dims != rhs.dims:
            raise InterpError(Code.E_DIMS_MISMATCH)
        dims = list(lhs.dims)
    elif isinstance(lhs, RArray) or isinstance(rhs, RArray):
        arr, other = (lhs, rhs) if isinstance(lhs, RArray) else (rhs, lhs)
        if length_of(other) > length_of(arr):
            raise InterpError(Code.E_DIMS_MISMATCH)
        dims = list(arr.dims)
    if not a or not b:
        return [], [], None
    m = max(len(a), len(b))
    ra, rb = recycle(a, m), recycle(b, m)
    if (ra.was_nonmultiple or rb.was_nonmultiple) and warn is not None:
        warn(Code.W_NONMULTIPLE)
    return ra.elems, rb.elems, dims


def _pack(mode: Mode, elems: list[Scalar], dims: list[int] | None) -> RValue:
    if dims is not None:
        return RArray(mode, dims, elems)
    return Vector(mode, elems)


def _as_coerced(v: RValue, coerce, err: Code) -> Vector | RArray:
    if isinstance(v, Closure):
        raise InterpError(err)
    if isinstance(v, Null):
        return Vector(Mode.NUMERIC if err is Code.E_NONNUMERIC else Mode.LOGICAL, [])
    try:
        return coerce(v)
    except CoercionError as e:
        raise InterpError(e.code, e.message) from None


def elementwise_arith(op: str, lhs: RValue, rhs: RValue, warn: WarnFn | None = None) -> RValue:
    ln = _as_coerced(lhs, coerce_to_numeric, Code.E_NONNUMERIC)
    rn = _as_coerced(rhs, coerce_to_numeric, Code.E_NONNUMERIC)
    a, b, dims = _binop_frame(ln, rn, warn)
    out: list[Scalar] = []
    for x, y in zip(a, b):
        if is_na(x) or is_na(y):
            out.append(NA)
        else:
            out.append(_scalar_arith(op, x, y))
    return _pack(Mode.NUMERIC, out, dims)


def elementwise_logical(op: str, lhs: RValue, rhs: RValue, warn: WarnFn | None = None) -> RValue:
    if op in ("&", "|"):
        ll = _as_coerced(lhs, coerce_to_logical, Code.E_NONLOGICAL)
        rl = _as_coerced(rhs, coerce_to_logical, Code.E_NONLOGICAL)
        a, b, dims = _binop_frame(ll, rl, warn)
        return _pack(Mode.LOGICAL, [_kleene(op, x, y) for x, y in zip(a, b)], dims)

    # Comparison: character operands compare as strings; a character paired
    # with a numeric/logical operand widens the other side (R behavior).
    lm, rm = container_mode(lhs), container_mode(rhs)
    if Mode.FUNCTION in (lm, rm):
        raise InterpError(Code.E_NONLOGICAL)
    if Mode.CHARACTER in (lm, rm):
        lc = _to_character(lhs)
        rc = _to_character(rhs)
        a, b, dims = _binop_frame(lc, rc, warn)
        kernel = _cmp_chr
    else:
        ln = _as_coerced(lhs, coerce_to_numeric, Code.E_NONNUMERIC)
        rn = _as_coerced(rhs, coerce_to_numeric, Code.E_NONNUMERIC)
        a, b, dims = _binop_frame(ln, rn, warn)
        kernel = _cmp_num
    return _pack(Mode.LOGICAL, [kernel(op, x, y) for x, y in zip(a, b)], dims)


def _to_character(v: RValue) -> RValue:
    if isinstance(v, Null):
        return Vector(Mode.CHARACTER, [])
    mode = container_mode(v)
    elems = [convert_scalar(x, mode, Mode.CHARACTER) for x in elements(v)]
    return _pack(Mode.CHARACTER, elems, list(v.dims) if isinstance(v, RArray) else None)


def _cmp_num(op: str, a: Scalar, b: Scalar) -> Scalar:
    if is_na(a) or is_na(b) or math.isnan(a) or math.isnan(b):
        return NA
    return _CMP[op](a, b)


def _cmp_chr(op: str, a: Scalar, b: Scalar) -> Scalar:
    if is_na(a) or is_na(b):
        return NA
    return _CMP[op](a, b)


def _shape_to_dims(shape: RValue) -> list[int]:
    if isinstance(shape, Closure):
        raise InterpError(Code.E_BADDIMS)
    scalars = elements(shape)
    if not scalars:
        raise InterpError(Code.E_BADDIMS)
    mode = container_mode(shape)
    if mode is Mode.CHARACTER:
        raise InterpError(Code.E_BADDIMS)
    dims: list[int] = []
    for s in scalars:
        if is_na(s):
            raise InterpError(Code.E_BADDIMS)
        v = float(s) if mode is not Mode.LOGICAL else (1.0 if s else 0.0)
        if math.isnan(v) or math.isinf(v):
            raise InterpError(Code.E_BADDIMS)
        d = math.trunc(v)
        if d < 0:
            raise InterpError(Code.E_BADDIMS)
        dims.append(d)
    return dims


def _check_data(elems: RValue) -> tuple[list[Scalar], Mode]:
    if isinstance(elems, Closure):
        raise InterpError(
            Code.E_NULLDATA, "'data' must be of a vector type, was 'function'"
        )
    data = elements(elems)
    if not data:
        raise InterpError(Code.E_NULLDATA)
    return data, container_mode(elems)


def construct_array(shape: RValue, elems: RValue, warn: WarnFn | None = None) -> RArray:
    """The `array` built-in: data recycled (silently) to fill the shape."""
    data, mode = _check_data(elems)
    dims = _shape_to_dims(shape)
    filled = recycle(data, math.prod(dims)).elems
    return RArray(mode, dims, filled)


def construct_matrix(shape: RValue, elems: RValue, warn: WarnFn | None = None) -> RArray:
    data, mode = _check_data(elems)
    dims = _shape_to_dims(shape)
    if len(dims) < 2:
        raise InterpError(Code.E_BADDIMS)
    if len(dims) > 2:
        if warn is not None:
            warn(Code.W_MATRIX_TRUNC)
        dims = dims[:2]
    filled = recycle(data, math.prod(dims)).elems
    return RArray(mode, dims, filled)


# --- indexing ----------------------------------------------------------

_CLOSURE_BASE_MSG = "object of type 'closure' is not subsettable"
_CLOSURE_SUB_MSG = "invalid subscript type 'closure'"
_CHARACTER_SUB_MSG = "character subscripts are not supported"


def _numeric_subscript_ints(sub_elems: list[Scalar]) -> list[int | NAType]:
    out: list[int | NAType] = []
    for s in sub_elems:
        if is_na(s):
            out.append(NA)
        elif math.isnan(s):
            out.append(NA)
        else:
            out.append(math.trunc(s))
    return out


def index_get(base: RValue, sub: RValue) -> RValue:
    """One-dimensional read: positive / negative / logical subscripts.

    Arrays are read through their flat element vector; the result is
    always a plain vector.  An out-of-bounds positive index yields NA.
    """
    if isinstance(base, Null):
        return NULL
    if isinstance(base, Closure):
        raise InterpError(Code.E_BADSUBSCRIPT, _CLOSURE_BASE_MSG)
    if isinstance(sub, Closure):
        raise InterpError(Code.E_BADSUBSCRIPT, _CLOSURE_SUB_MSG)
    base_elems = base.elems
    bmode = base.mode
    n = len(base_elems)
    if isinstance(sub, Null) or not elements(sub):
        return Vector(bmode, list(base_elems))
    smode = container_mode(sub)
    if smode is Mode.CHARACTER:
        raise InterpError(Code.E_BADSUBSCRIPT, _CHARACTER_SUB_MSG)

    if smode is Mode.LOGICAL:
        mask = elements(sub)
        m = max(n, len(mask))
        ext = recycle(mask, m).elems
        out: list[Scalar] = []
        for p, flag in enumerate(ext, start=1):
            if is_na(flag):
                out.append(NA)
            elif flag:
                out.append(base_elems[p - 1] if p <= n else NA)
        return Vector(bmode, out)

    ts = _numeric_subscript_ints(elements(sub))
    has_neg = any(not is_na(t) and t <= -1 for t in ts)
    has_pos = any(not is_na(t) and t >= 1 for t in ts)
    has_na = any(is_na(t) for t in ts)
    if has_neg and (has_pos or has_na):
        raise InterpError(Code.E_MIXEDSIGNS)
    if has_neg:
        excluded = {-t for t in ts if not is_na(t) and t <= -1}
        kept = [base_elems[p - 1] for p in range(1, n + 1) if p not in excluded]
        return Vector(bmode, kept)
    out = []
    for t in ts:
        if is_na(t):
            out.append(NA)
        elif t == 0:
            continue  # zero indices are silently dropped
        elif 1 <= t <= n:
            out.append(base_elems[t - 1])
        else:
            out.append(NA)
    return Vector(bmode, out)


def _assignment_positions(
    base_len: int, sub: RValue
) -> list[int]:
    """1-based target positions for subscript-assignment.

    Unlike reads, NA subscripts are errors here, and logical masks are laid
    over the full vector (extending past the end addresses positions the
    fixed-size check will reject)."""
    if isinstance(sub, Closure):
        raise InterpError(Code.E_BADSUBSCRIPT, _CLOSURE_SUB_MSG)
    if isinstance(sub, Null) or not elements(sub):
        return []
    smode = container_mode(sub)
    if smode is Mode.CHARACTER:
        raise InterpError(Code.E_BADSUBSCRIPT, _CHARACTER_SUB_MSG)
    if smode is Mode.LOGICAL:
        mask = elements(sub)
        m = max(base_len, len(mask))
        ext = recycle(mask, m).elems
        if any(is_na(flag) for flag in ext):
            raise InterpError(Code.E_NA_SUBASSIGN)
        return [p for p, flag in enumerate(ext, start=1) if flag]
    ts = _numeric_subscript_ints(elements(sub))
    has_neg = any(not is_na(t) and t <= -1 for t in ts)
    has_pos = any(not is_na(t) and t >= 1 for t in ts)
    if any(is_na(t) for t in ts):
        if has_neg:
            raise InterpError(Code.E_MIXEDSIGNS)
        raise InterpError(Code.E_NA_SUBASSIGN)
    if has_neg and has_pos:
        raise InterpError(Code.E_MIXEDSIGNS)
    if has_neg:
        excluded = {-t for t in ts if t <= -1}
        return [p for p in range(1, base_len + 1) if p not in excluded]
    return [t for t in ts if t >= 1]


def index_assign(
    base: RValue,
    sub: RValue,
    repl: RValue,
    warn: WarnFn | None = None,
    growth: bool = False,
) -> RValue:
    """Replace the addressed positions of `base` with `repl`, recycled.

    Returns the new container value (bindings are rebound by the caller).
    The replacement's mode and the base's mode widen to their least upper
    bound, as in `c`."""
    if isinstance(repl, Closure):
        raise InterpError(Code.E_BADCOMBINE)
    repl_elems = elements(repl)
    if not repl_elems:
        raise InterpError(Code.E_NULLREPL)
    if isinstance(base, Closure):
        raise InterpError(Code.E_BADSUBSCRIPT, _CLOSURE_BASE_MSG)
    if isinstance(base, Null):
        base = Vector(container_mode(repl), [])
    n = len(base.elems)
    positions = _assignment_positions(n, sub)
    beyond = [p for p in positions if p > n]
    if beyond and not growth:
        raise InterpError(Code.E_OOB_ASSIGN)
    target_len = max([n] + positions)

    mode = mode_lub(base.mode, container_mode(repl))
    new = [convert_scalar(x, base.mode, mode) for x in base.elems]
    new.extend([NA] * (target_len - n))
    if positions:
        repl_conv = [convert_scalar(x, container_mode(repl), mode) for x in repl_elems]
        filled = recycle(repl_conv, len(positions))
        if filled.was_nonmultiple and warn is not None:
            warn(Code.W_REPLACE_NONMULTIPLE)
        for p, x in zip(positions, filled.elems):
            new[p - 1] = x
    if isinstance(base, RArray) and target_len == n:
        return RArray(mode, list(base.dims), new)
    return Vector(mode, new)


# --- program evaluation -------------------------------------------------

class _Missing:
    """Placeholder bound to parameters that were not supplied."""


MISSING = _Missing()


@dataclass
class EvalOutcome:
    expr: Expr
    result: RValue | None
    warnings: list[Diagnostic]
    error: Diagnostic | None
    visible: bool
    # Value the statement leaves bound (differs from `result` for
    # index-assignment, whose expression value is the replacement).
    bound_value: RValue | None = field(default=None)

    @property
    def compare_value(self) -> RValue | None:
        return self.bound_value if self.bound_value is not None else self.result


class Interpreter:
    def __init__(self, growth: bool = False):
        self.growth = growth
        self.global_env = Env()
        self._warnings: list[Diagnostic] = []
        self._call_sites: list[tuple[SourceSpan, str]] = []

    # diagnostics ---------------------------------------------------------

    def _warn(self, code: Code, span: SourceSpan, context: str) -> None:
        self._warnings.append(
            make_diagnostic(code, span, Phase.RUNTIME, context=context)
        )

    def _fail(self, err: InterpError, span: SourceSpan, context: str | None) -> RRuntimeError:
        return RRuntimeError(
            make_diagnostic(
                err.code, span, Phase.RUNTIME, message=err.message, context=context
            )
        )

    # evaluation ----------------------------------------------------------

    def eval_program(self, program: Program) -> list[EvalOutcome]:
        outcomes: list[EvalOutcome] = []
        for stmt in program.exprs:
            self._warnings = []
            invisible = isinstance(stmt, (Assign, IndexAssign))
            try:
                value = self._eval(stmt, self.global_env)
            except RRuntimeError as e:
                outcomes.append(
                    EvalOutcome(stmt, None, self._warnings, e.diagnostic, False)
                )
                break
            bound = None
            if isinstance(stmt, IndexAssign):
                bound = self.global_env.lookup(stmt.base)
            outcomes.append(
                EvalOutcome(stmt, value, self._warnings, None, not invisible, bound)
            )
        return outcomes

    def _eval(self, expr: Expr, env: Env) -> RValue:
        match expr:
            case NumLit(value):
                return Vector(Mode.NUMERIC, [float(value)])
            case StrLit(value):
                return Vector(Mode.CHARACTER, [value])
            case LogicalLit(value):
                return Vector(Mode.LOGICAL, [value])
            case NaLit():
                return Vector(Mode.LOGICAL, [NA])
            case NullLit():
                return NULL
            case Var(name):
                value = env.lookup(name)
                if value is MISSING:
                    span, context = (
                        self._call_sites[-1] if self._call_sites else (expr.span, None)
                    )
                    raise RRuntimeError(
                        make_diagnostic(
                            Code.E_MISSING_ARG, span, Phase.RUNTIME,
                            message=f'argument "{name}" is missing, with no default',
                            context=context,
                        )
                    )
                if value is None:
                    raise RRuntimeError(
                        make_diagnostic(
                            Code.E_UNBOUND, expr.span, Phase.RUNTIME,
                            message=f"object '{name}' not found",
                        )
                    )
                return value
            case Assign(target, value_expr):
                value = self._eval(value_expr, env)
                env.assign(target, value)
                return value
            case FunctionDef(params, body):
                return Closure(params, body, env)
            case BinOp(op, lhs_expr, rhs_expr):
                lhs = self._eval(lhs_expr, env)
                rhs = self._eval(rhs_expr, env)
                return self._eval_binop(expr, op, lhs, rhs)
            case Index(base_expr, sub_expr):
                base = self._eval(base_expr, env)
                sub = self._eval(sub_expr, env)
                try:
                    return index_get(base, sub)
                except InterpError as e:
                    raise self._fail(e, expr.span, pretty_print(expr)) from None
            case IndexAssign():
                return self._eval_index_assign(expr, env)
            case Call():
                return self._eval_call(expr, env)
        raise AssertionError(f"unhandled node {expr!r}")

    def _eval_binop(self, expr: BinOp, op: str, lhs: RValue, rhs: RValue) -> RValue:
        warn = lambda code: self._warn(code, expr.op_span, pretty_print(expr))
        try:
            if op in ("+", "-", "*", "/"):
                return elementwise_arith(op, lhs, rhs, warn)
            return elementwise_logical(op, lhs, rhs, warn)
        except InterpError as e:
            raise self._fail(e, expr.op_span, pretty_print(expr)) from None

    def _eval_index_assign(self, expr: IndexAssign, env: Env) -> RValue:
        base = env.lookup(expr.base)
        if base is None or base is MISSING:
            raise RRuntimeError(
                make_diagnostic(
                    Code.E_UNBOUND, expr.span, Phase.RUNTIME,
                    message=f"object '{expr.base}' not found",
                )
            )
        sub = self._eval(expr.subscript, env)
        repl = self._eval(expr.replacement, env)
        warn = lambda code: self._warn(code, expr.span, pretty_print(expr))
        try:
            updated = index_assign(base, sub, repl, warn, growth=self.growth)
        except InterpError as e:
            raise self._fail(e, expr.span, pretty_print(expr)) from None
        env.assign(expr.base, updated)
        return repl

    def _eval_call(self, expr: Call, env: Env) -> RValue:
        callee = expr.callee
        if isinstance(callee, Var) and not env.has(callee.name) and callee.name in BUILTINS:
            return self._eval_builtin(expr, callee.name, env)
        callee_value = self._eval(callee, env)
        args = [self._eval(a, env) for a in expr.args]
        return self._apply(expr, callee_value, args, env)

    def _check_arity(self, expr: Call, params: list[str], nargs: int) -> None:
        if nargs > len(params):
            extra = [pretty_print(a) for a in expr.args[len(params):]]
            noun = "argument" if len(extra) == 1 else "arguments"
            raise RRuntimeError(
                make_diagnostic(
                    Code.E_UNUSED_ARGS, expr.span, Phase.RUNTIME,
                    message=f"unused {noun} ({', '.join(extra)})",
                    context=pretty_print(expr),
                )
            )

    def _apply(self, expr: Call, callee: RValue, args: list[RValue], env: Env) -> RValue:
        if not isinstance(callee, Closure):
            raise RRuntimeError(
                make_diagnostic(Code.E_NOTFUN, expr.span, Phase.RUNTIME)
            )
        self._check_arity(expr, callee.params, len(args))
        call_env = callee.env.child()
        for i, param in enumerate(callee.params):
            if i < len(args):
                call_env.assign(param, args[i])
            else:
                # Missing arguments only fail when the body uses them.
                call_env.frame[param] = MISSING
        self._call_sites.append((expr.span, pretty_print(expr)))
        try:
            value: RValue = NULL
            for stmt in callee.body:
                value = self._eval(stmt, call_env)
            return value
        finally:
            self._call_sites.pop()

    def _eval_builtin(self, expr: Call, name: str, env: Env) -> RValue:
        args = [self._eval(a, env) for a in expr.args]
        warn = lambda code: self._warn(code, expr.span, pretty_print(expr))
        try:
            if name == "c":
                return combine(args)
            if name in ("array", "matrix"):
                self._check_arity(expr, ["data", "dim"], len(args))
                if len(args) < 2:
                    missing = ("data", "dim")[len(args)]
                    raise InterpError(
                        Code.E_MISSING_ARG,
                        f'argument "{missing}" is missing, with no default',
                    )
                build = construct_array if name == "array" else construct_matrix
                return build(args[1], args[0], warn)
            self._check_arity(expr, ["x"], len(args))
            if len(args) < 1:
                raise InterpError(
                    Code.E_MISSING_ARG, 'argument "x" is missing, with no default'
                )
            if name == "mode":
                return Vector(Mode.CHARACTER, [mode_of(args[0])])
            return Vector(Mode.NUMERIC, [float(length_of(args[0]))])
        except InterpError as e:
            raise self._fail(e, expr.span, pretty_print(expr)) from None


def run_program(program: Program, growth: bool = False) -> list[EvalOutcome]:
    return Interpreter(growth=growth).eval_program(program)
