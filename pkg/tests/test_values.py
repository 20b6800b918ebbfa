"""Value model tests: modes, lengths, NA, coercions, copy semantics."""

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rvec.diagnostics import Code
from rvec.interp import run_program
from rvec.syntax import parse_source
from rvec.values import (
    NA, NULL, Closure, CoercionError, Env, Mode, RArray, Vector,
    coerce_to_logical, coerce_to_numeric, is_na, length_of, mode_lub, mode_of,
)


def num(*xs):
    return Vector(Mode.NUMERIC, [float(x) if not is_na(x) else x for x in xs])


def lgl(*xs):
    return Vector(Mode.LOGICAL, list(xs))


def chr(*xs):
    return Vector(Mode.CHARACTER, list(xs))


class TestModeLength:
    def test_mode_of_numeric(self):
        assert mode_of(num(1)) == "numeric"

    def test_mode_of_closure(self):
        assert mode_of(Closure(["a"], [], Env())) == "function"

    def test_mode_of_null(self):
        assert mode_of(NULL) == "NULL"

    def test_length_of_null(self):
        assert length_of(NULL) == 0

    def test_length_of_vector(self):
        assert length_of(num(1, 2, 3, 4)) == 4

    def test_length_of_array_is_product(self):
        arr = RArray(Mode.NUMERIC, [2, 2], [1.0, 2.0, 3.0, 4.0])
        assert length_of(arr) == 4

    def test_length_of_closure(self):
        assert length_of(Closure([], [], Env())) == 1

    def test_array_invariant_enforced(self):
        with pytest.raises(AssertionError):
            RArray(Mode.NUMERIC, [2, 2], [1.0])


class TestNA:
    def test_na_is_not_nan(self):
        v = num(float("nan"), NA)
        assert math.isnan(v.elems[0]) and not is_na(v.elems[0])
        assert is_na(v.elems[1])

    def test_infinities_are_legal_numerics(self):
        v = num(float("inf"), float("-inf"))
        assert not any(is_na(x) for x in v.elems)


class TestCoercions:
    def test_logical_to_numeric(self):
        out = coerce_to_numeric(lgl(True, False, NA))
        assert out.mode is Mode.NUMERIC
        assert out.elems[0] == 1.0 and out.elems[1] == 0.0 and is_na(out.elems[2])

    def test_numeric_identity(self):
        v = num(5)
        assert coerce_to_numeric(v) is v

    def test_character_to_numeric_fails(self):
        with pytest.raises(CoercionError) as exc:
            coerce_to_numeric(chr("R"))
        assert exc.value.code is Code.E_NONNUMERIC

    def test_zero_is_falsey(self):
        assert coerce_to_logical(num(0)).elems == [False]

    def test_negative_is_truthy(self):
        assert coerce_to_logical(num(-2)).elems == [True]

    def test_na_logical_identity(self):
        out = coerce_to_logical(lgl(NA))
        assert is_na(out.elems[0])

    def test_nan_coerces_to_na_logical(self):
        assert is_na(coerce_to_logical(num(float("nan"))).elems[0])

    def test_character_to_logical_fails(self):
        with pytest.raises(CoercionError) as exc:
            coerce_to_logical(chr("a"))
        assert exc.value.code is Code.E_NONLOGICAL

    def test_dims_preserved(self):
        arr = RArray(Mode.LOGICAL, [2, 1], [True, False])
        out = coerce_to_numeric(arr)
        assert isinstance(out, RArray) and out.dims == [2, 1]

    @given(st.lists(st.sampled_from([0.0, 1.0, NA]), min_size=1, max_size=8))
    def test_roundtrip_idempotent_on_01_na(self, elems):
        v = Vector(Mode.NUMERIC, list(elems))
        once = coerce_to_numeric(coerce_to_logical(coerce_to_numeric(v)))
        twice = coerce_to_numeric(coerce_to_logical(once))
        assert once == twice == v

    def test_mode_lub_chain(self):
        assert mode_lub(Mode.LOGICAL, Mode.NUMERIC) is Mode.NUMERIC
        assert mode_lub(Mode.NUMERIC, Mode.CHARACTER) is Mode.CHARACTER
        assert mode_lub(None, Mode.LOGICAL) is Mode.LOGICAL


class TestEnvCopySemantics:
    def test_rebinding_does_not_alias(self):
        outcomes = run_program(parse_source("a <- c(1,2)\nb <- a\nb[1] <- 9\na\nb"))
        assert outcomes[3].result.elems == [1.0, 2.0]
        assert outcomes[4].result.elems == [9.0, 2.0]

    def test_lookup_innermost_out(self):
        env = Env()
        env.assign("x", num(1))
        child = env.child()
        assert child.lookup("x").elems == [1.0]
        child.assign("x", num(2))
        assert child.lookup("x").elems == [2.0]
        assert env.lookup("x").elems == [1.0]
