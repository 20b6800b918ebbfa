"""Runtime value model: mode-tagged containers with NA, plus coercions.

Scalars are plain Python values (float / bool / str) or the NA singleton;
the containing vector's mode tag keeps elements homogeneous.  NA is a
distinct tag, never a floating NaN: NaN and the infinities are ordinary
numeric values.  Scalar literals evaluate to length-1 vectors, so there is
no separate scalar value at runtime.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Union

from .diagnostics import Code
from .syntax import Expr, format_number


class Mode(Enum):
    NUMERIC = "numeric"
    LOGICAL = "logical"
    CHARACTER = "character"
    FUNCTION = "function"

    @property
    def label(self) -> str:
        return self.value


class NAType:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "NA"


NA = NAType()

Scalar = Union[float, bool, str, NAType]


def is_na(x: Scalar) -> bool:
    return x is NA


@dataclass
class Vector:
    mode: Mode
    elems: list[Scalar]


@dataclass
class RArray:
    mode: Mode
    dims: list[int]
    elems: list[Scalar]

    def __post_init__(self) -> None:
        assert math.prod(self.dims) == len(self.elems), "array shape/element mismatch"
        assert all(d >= 0 for d in self.dims)


@dataclass
class Closure:
    params: list[str]
    body: list[Expr]
    env: "Env" = field(repr=False)


@dataclass(frozen=True)
class Null:
    pass


NULL = Null()

RValue = Union[Vector, RArray, Closure, Null]


def is_matrix(v: RValue) -> bool:
    return isinstance(v, RArray) and len(v.dims) == 2


def elements(v: RValue) -> list[Scalar]:
    """Flat element sequence; arrays contribute their column-major contents."""
    if isinstance(v, (Vector, RArray)):
        return v.elems
    return []


def container_mode(v: RValue) -> Mode | None:
    if isinstance(v, (Vector, RArray)):
        return v.mode
    if isinstance(v, Closure):
        return Mode.FUNCTION
    return None


def mode_of(v: RValue) -> str:
    if isinstance(v, Null):
        return "NULL"
    return container_mode(v).label


def length_of(v: RValue) -> int:
    if isinstance(v, (Vector, RArray)):
        return len(v.elems)
    if isinstance(v, Closure):
        return 1
    return 0


# Widening order used by c() and subscript-assignment.
_MODE_RANK = {Mode.LOGICAL: 0, Mode.NUMERIC: 1, Mode.CHARACTER: 2}


def mode_lub(a: Mode | None, b: Mode | None) -> Mode | None:
    if a is None:
        return b
    if b is None:
        return a
    return a if _MODE_RANK[a] >= _MODE_RANK[b] else b


def numeric_to_string(v: float) -> str:
    """Conversion used when a numeric widens to character (15 significant
    digits, matching R's as.character)."""
    if math.isnan(v):
        return "NaN"
    if math.isinf(v):
        return "Inf" if v > 0 else "-Inf"
    if v == int(v) and abs(v) < 1e15:
        return str(int(v))
    return f"{v:.15g}"


def convert_scalar(x: Scalar, src: Mode, dst: Mode) -> Scalar:
    if is_na(x) or src is dst:
        return x
    if dst is Mode.NUMERIC:
        assert src is Mode.LOGICAL
        return 1.0 if x else 0.0
    if dst is Mode.CHARACTER:
        if src is Mode.LOGICAL:
            return "TRUE" if x else "FALSE"
        return numeric_to_string(x)
    raise AssertionError(f"no conversion {src} -> {dst}")


class CoercionError(Exception):
    """Raised by the mode coercions; the interpreter attaches a span."""

    def __init__(self, code: Code, message: str | None = None):
        super().__init__(code.value)
        self.code = code
        self.message = message


def _rebuild(v: Vector | RArray, mode: Mode, elems: list[Scalar]) -> Vector | RArray:
    if isinstance(v, RArray):
        return RArray(mode, list(v.dims), elems)
    return Vector(mode, elems)


def coerce_to_numeric(v: Vector | RArray) -> Vector | RArray:
    if v.mode is Mode.NUMERIC:
        return v
    if v.mode is not Mode.LOGICAL:
        raise CoercionError(Code.E_NONNUMERIC)
    elems = [NA if is_na(x) else (1.0 if x else 0.0) for x in v.elems]
    return _rebuild(v, Mode.NUMERIC, elems)


def coerce_to_logical(v: Vector | RArray) -> Vector | RArray:
    if v.mode is Mode.LOGICAL:
        return v
    if v.mode is not Mode.NUMERIC:
        raise CoercionError(Code.E_NONLOGICAL)
    elems: list[Scalar] = []
    for x in v.elems:
        if is_na(x) or math.isnan(x):
            elems.append(NA)
        else:
            elems.append(x != 0.0)
    return _rebuild(v, Mode.LOGICAL, elems)


def copy_value(v: RValue) -> RValue:
    """Fresh container so bindings never alias element storage."""
    if isinstance(v, Vector):
        return Vector(v.mode, list(v.elems))
    if isinstance(v, RArray):
        return RArray(v.mode, list(v.dims), list(v.elems))
    return v


class Env:
    """Name-to-value frames with lexical parent links.

    Lookup walks innermost-out; assignment always writes the innermost
    frame.  Stored values are copied on the way in, so `b <- a` never
    aliases `a`.
    """

    def __init__(self, parent: "Env | None" = None):
        self.parent = parent
        self.frame: dict[str, RValue] = {}

    def child(self) -> "Env":
        return Env(self)

    def lookup(self, name: str) -> RValue | None:
        env: Env | None = self
        while env is not None:
            if name in env.frame:
                return env.frame[name]
            env = env.parent
        return None

    def has(self, name: str) -> bool:
        return self.lookup(name) is not None

    def assign(self, name: str, value: RValue) -> None:
        self.frame[name] = copy_value(value)


__all__ = [
    "Mode", "NA", "NAType", "Scalar", "is_na",
    "Vector", "RArray", "Closure", "Null", "NULL", "RValue",
    "is_matrix", "elements", "container_mode", "mode_of", "length_of",
    "mode_lub", "convert_scalar", "numeric_to_string",
    "CoercionError", "coerce_to_numeric", "coerce_to_logical",
    "copy_value", "Env", "format_number",
]
