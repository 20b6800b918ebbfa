"""Checker tests: per-rule behavior, lattice laws, and checker/runtime
agreement properties."""

import itertools

import pytest

from rvec.diagnostics import Code, Severity
from rvec.shapecheck import (
    AbsType, Checker, Kind, NULL_T, SignInfo, TOP, abs_join, check_program, vec,
)
from rvec.syntax import parse_source
from rvec.values import NA, Mode

from rvec.interp import run_program
from rvec.values import length_of


def check(source, **kwargs):
    return check_program(parse_source(source), **kwargs)


def codes(report):
    return [d.code for d in report.diagnostics]


def analyze(source):
    """(diagnostic codes, statement type descriptions)"""
    report = check(source)
    return codes(report), [t.describe() for t in report.statement_types]


class TestCheckProgram:
    def test_warning_statically_predicted(self):
        report = check("a <- c(1,2)\na + c(1,2,3)")
        assert codes(report) == [Code.W_NONMULTIPLE]
        t = report.statement_types[1]
        assert t.kind is Kind.VECTOR and t.mode is Mode.NUMERIC and t.size == 3

    def test_character_arith_rejected(self):
        report = check('"cat" + 1')
        assert codes(report) == [Code.E_NONNUMERIC]

    def test_clean_assignment(self):
        report = check("a <- 1")
        assert codes(report) == []
        t = report.statement_types[0]
        assert (t.kind, t.mode, t.size) == (Kind.VECTOR, Mode.NUMERIC, 1)

    def test_collects_all_diagnostics(self):
        report = check('"a" + 1\nbb\nc(1,2) + c(1,2,3)')
        assert set(codes(report)) == {
            Code.E_NONNUMERIC, Code.E_UNBOUND, Code.W_NONMULTIPLE,
        }

    def test_unbound_variable_flagged(self):
        assert codes(check("zz")) == [Code.E_UNBOUND]

    def test_index_assign_updates_binding(self):
        _, types = analyze('a <- c(1, 2)\na[1] = "x"\na')
        assert types[2] == "vector[character, len=2]"


class TestCombineRule:
    def test_known_sizes_sum(self):
        _, types = analyze("c(c(1,2), c(3,4))")
        assert types == ["vector[numeric, len=4]"]

    def test_empty_is_null(self):
        _, types = analyze("c()")
        assert types == ["NULL"]

    def test_unknown_absorbs(self):
        report = check("f <- function(a) a\nc(1, f(1))")
        # calls through closures are precise, so force Top via rebinding
        report = check("c <- function(a,b) a\nx <- c(1,2)\n")
        t = report.statement_types[1]
        assert t.kind is Kind.TOP

    def test_mode_lub(self):
        report = check("c(1, TRUE)")
        t = report.statement_types[0]
        assert t.mode is Mode.NUMERIC and t.contents == (1.0, 1.0)

    def test_closure_argument_rejected(self):
        report = check("f <- function(a) a\nc(f)")
        assert Code.E_BADCOMBINE in codes(report)


class TestBinopRule:
    def test_nonmultiple_known(self):
        report = check("c(1,2) + c(1,2,3)")
        assert codes(report) == [Code.W_NONMULTIPLE]
        assert report.statement_types[0].size == 3

    def test_zero_absorbs(self):
        report = check("c() + c(1,2,3,4,5)")
        assert codes(report) == []
        assert report.statement_types[0].size == 0

    def test_multiple_silent(self):
        report = check("c(1,2,3,4) * c(0,1)")
        assert codes(report) == []
        assert report.statement_types[0].size == 4

    def test_known_pairs_max_symmetric(self):
        # result size is symmetric in operand order for all Known pairs
        for a, b in itertools.product(range(1, 9), repeat=2):
            va = "c(%s)" % ", ".join(["1"] * a)
            vb = "c(%s)" % ", ".join(["1"] * b)
            sa = check(f"{va} + {vb}").statement_types[0].size
            sb = check(f"{vb} + {va}").statement_types[0].size
            assert sa == sb == max(a, b)

    def test_logical_result_mode(self):
        report = check("TRUE & 0")
        t = report.statement_types[0]
        assert t.mode is Mode.LOGICAL and t.size == 1

    def test_character_and_rejected(self):
        assert codes(check('"s" & 1')) == [Code.E_NONLOGICAL]

    def test_comparison_uses_length_law(self):
        report = check("c(1,2,3,4) > c(1,2)")
        assert report.statement_types[0].size == 4
        assert report.statement_types[0].mode is Mode.LOGICAL

    def test_array_dims_mismatch(self):
        report = check("array(c(1,2),c(2)) + array(c(1,2,3),c(3))")
        assert Code.E_DIMS_MISMATCH in codes(report)

    def test_vector_longer_than_array(self):
        report = check("c(1,2,3) + array(c(1,2),c(2))")
        assert Code.E_DIMS_MISMATCH in codes(report)

    def test_array_side_sets_kind(self):
        report = check("1 + array(c(1,2),c(2))")
        assert report.statement_types[0].kind is Kind.ARRAY

    def test_strict_recycle_promotes(self):
        report = check("c(1,2) + c(1,2,3)", strict_recycle=True)
        assert report.diagnostics[0].severity is Severity.ERROR


class TestArrayRules:
    def test_shape_contents_give_dims(self):
        report = check("array(c(1,2), c(3,3))")
        t = report.statement_types[0]
        assert t.kind is Kind.ARRAY and t.dims == (3, 3) and t.size == 9

    def test_null_data(self):
        assert Code.E_NULLDATA in codes(check("array(c(), c())"))

    def test_unknown_elems_known_dims(self):
        report = check("f <- function(a) a\narray(f(c(1,2)), c(2,2))")
        t = report.statement_types[1]
        assert t.size == 4

    def test_negative_dim(self):
        assert Code.E_BADDIMS in codes(check("array(c(1), c(-2))"))

    def test_matrix_accepts_two_dims(self):
        report = check("matrix(c(1,2,3,4), c(1,4))")
        assert codes(report) == []
        assert report.statement_types[0].dims == (1, 4)

    def test_matrix_rejects_three_dims(self):
        assert Code.E_MATRIX_DIMS in codes(check("matrix(c(1,2), c(1,2,9))"))

    def test_matrix_rejects_one_dim(self):
        report = check("matrix(c(1,2), c(2))")
        assert Code.E_MATRIX_DIMS in codes(report)

    def test_matrix_unknown_shape_silent(self):
        # f(1) exceeds the recursion budget, so the shape is Top: the
        # dimension count cannot be decided statically.
        report = check("f <- function(a) f(a)\nmatrix(c(1,2), f(1))")
        assert Code.E_MATRIX_DIMS not in codes(report)
        t = report.statement_types[1]
        assert t.kind is Kind.ARRAY and t.dims == (None, None)


class TestSubscriptRule:
    def test_positive_known(self):
        report = check("c(1,2,3)[c(3,2,1)]")
        assert report.statement_types[0].size == 3
        assert report.statement_types[0].contents == (3.0, 2.0, 1.0)

    def test_negative_exact_count(self):
        report = check('c("a","b","c")[c(-1,-3)]')
        assert report.statement_types[0].size == 1

    def test_logical_extension_count(self):
        report = check("c(1,2,3)[c(TRUE,TRUE,TRUE,TRUE)]")
        assert report.statement_types[0].size == 4

    def test_logical_mask_count(self):
        report = check("c(1,2,3)[c(FALSE,TRUE,FALSE,FALSE)]")
        assert report.statement_types[0].size == 1

    def test_mixed_signs(self):
        report = check("c(1,2,3)[c(1,-1)]")
        assert codes(report) == [Code.E_MIXEDSIGNS]

    def test_oob_read_warning(self):
        report = check("c(1,2)[5]")
        assert codes(report) == [Code.W_OOB_READ]
        assert report.statement_types[0].size == 1

    def test_zero_index_warns_and_degrades(self):
        report = check("c(1,2)[c(0,1)]")
        assert codes(report) == [Code.W_ZERO_INDEX]
        assert report.statement_types[0].size is None

    def test_character_subscript(self):
        assert codes(check('c(1,2)["a"]')) == [Code.E_BADSUBSCRIPT]

    def test_unknown_contents_degrade_to_unknown(self):
        # A non-negative subscript of unknown contents may hide zeros,
        # which R drops; the size must not be claimed.
        checker = Checker()
        expr = parse_source("x[1]").exprs[0]
        base = vec(Mode.NUMERIC, 3)
        sub = vec(Mode.NUMERIC, 2, contents=None, sign=SignInfo.ALL_NONNEG)
        result = checker.t_subscript(base, sub, expr)
        assert result.size is None and not checker.diagnostics

    def test_identity_call_stays_precise(self):
        report = check("f <- function(a) a\nc(1,2,3)[f(c(1,2))]")
        assert report.statement_types[1].size == 2

    def test_na_poisons_exact_count_only(self):
        report = check("c(1,2,3)[c(1,NA)]")
        assert codes(report) == []
        assert report.statement_types[0].size is None

    def test_folded_negative_idiom(self):
        report = check("x <- c(5,6,7)\nx[-c(1,2)]")
        assert report.statement_types[1].size == 1


class TestSubscriptAssignRule:
    def test_nonmultiple_replacement_warns(self):
        report = check("a <- c(1,2,3,4)\na[c(1,2)] <- c(1,2,3)")
        assert codes(report) == [Code.W_REPLACE_NONMULTIPLE]
        assert report.statement_types[1].size == 4

    def test_replacement_longer_than_targets_warns(self):
        # one target, replacement of three: R warns, so must the checker
        report = check("a <- c(5)\na[1] <- c(1,2,3)")
        assert codes(report) == [Code.W_REPLACE_NONMULTIPLE]

    def test_exact_multiple_silent(self):
        report = check("a <- c(1,2,3,4)\na[c(1,2,3,4)] <- c(1,2)")
        assert codes(report) == []
        assert report.statement_types[1].size == 4

    def test_null_replacement(self):
        report = check("a <- c(1,2,3)\na[1] <- NULL")
        assert codes(report) == [Code.E_NULLREPL]

    def test_oob_assign(self):
        report = check("a <- c(1,2)\na[9] <- 5")
        assert codes(report) == [Code.E_OOB_ASSIGN]

    def test_result_preserves_base_size(self):
        report = check("a <- c(1,2,3)\na[-1] <- c(9,9)\na")
        assert report.statement_types[2].size == 3

    def test_logical_known_mask_multiplicity(self):
        report = check("a <- c(1,2,3,4)\na[c(TRUE,TRUE,FALSE,TRUE)] <- c(1,2)")
        assert codes(report) == [Code.W_REPLACE_NONMULTIPLE]

    def test_mixed_signs(self):
        report = check("a <- c(1,2,3)\na[c(1,-1)] <- 5")
        assert Code.E_MIXEDSIGNS in codes(report)

    def test_mode_widening_tracked(self):
        report = check('a <- c(1,2)\na[2] <- "s"\na')
        assert report.statement_types[2].mode is Mode.CHARACTER


class TestApplyRule:
    def test_notfun(self):
        assert codes(check('"bar"(1,2)')) == [Code.E_NOTFUN]

    def test_unused_args(self):
        report = check("foo <- function(a,b) c(a, b)\nfoo(1,2,3)")
        assert codes(report) == [Code.E_UNUSED_ARGS]

    def test_missing_arg(self):
        report = check("foo <- function(a,b) c(a, b)\nfoo(1)")
        assert codes(report) == [Code.E_MISSING_ARG]

    def test_callsite_polymorphism(self):
        report = check("foo <- function(a,b) c(a, b)\nfoo(1, c(NA,3))\nfoo(c(1,2),c(3,4))")
        assert report.statement_types[1].size == 3
        assert report.statement_types[2].size == 4

    def test_recursion_degrades_to_top(self):
        report = check("f <- function(a) f(a)\nf(1)")
        assert report.statement_types[1] is TOP

    def test_rebound_builtin_goes_top(self):
        report = check("c <- function(a,b) a\nc(1, 2)")
        assert codes(report) == []
        assert report.statement_types[1] is TOP

    def test_capture_is_live_not_snapshot(self):
        # x is rebound to a longer vector between definition and call; the
        # body must be re-analyzed against the current binding.
        src = "x <- 1\nf <- function(a) a[x]\nx <- c(1,2)\nf(c(5,6))"
        report = check(src)
        program = parse_source(src)
        outcomes = run_program(program)
        predicted = report.statement_types[-1].size
        actual = length_of(outcomes[-1].result)
        assert predicted is None or predicted == actual


class TestJoin:
    def test_idempotent(self):
        t = vec(Mode.NUMERIC, 3)
        assert abs_join(t, t) == t

    def test_size_disagreement(self):
        assert abs_join(vec(Mode.NUMERIC, 3), vec(Mode.NUMERIC, 4)).size is None

    def test_sign_disagreement(self):
        joined = abs_join(
            vec(Mode.NUMERIC, 1, sign=SignInfo.ALL_NONNEG),
            vec(Mode.NUMERIC, 1, sign=SignInfo.ALL_NONPOS),
        )
        assert joined.sign is SignInfo.UNKNOWN

    def test_mode_disagreement(self):
        assert abs_join(vec(Mode.NUMERIC, 1), vec(Mode.LOGICAL, 1)).mode is None

    def test_kind_disagreement_is_top(self):
        assert abs_join(vec(Mode.NUMERIC, 1), NULL_T).kind is Kind.TOP


def _degrade_size(t: AbsType) -> AbsType:
    from dataclasses import replace
    return replace(t, size=None, contents=None)


def _degrade_contents(t: AbsType) -> AbsType:
    from dataclasses import replace
    return replace(t, contents=None)


class TestMonotonicity:
    """Degrading an input (Known -> Unknown) never adds error diagnostics
    and never changes one Known size into a different Known size."""

    BINOP_SOURCES = [
        ("c(1,2)", "c(1,2,3)"),
        ("c(1,2,3,4)", "c(0,1)"),
        ("c()", "c(1,2)"),
        ("c(1)", "c(1)"),
    ]

    def _binop_with(self, lhs: AbsType, rhs: AbsType):
        checker = Checker()
        expr = parse_source("1 + 2").exprs[0]
        result = checker.t_binop_arith(lhs, rhs, expr, "+")
        errors = [d for d in checker.diagnostics if d.severity is Severity.ERROR]
        return result, errors

    @pytest.mark.parametrize("lhs_src,rhs_src", BINOP_SOURCES)
    def test_binop_degradation(self, lhs_src, rhs_src):
        base = check(f"{lhs_src} + {rhs_src}")
        lhs_t = check(lhs_src).statement_types[0]
        rhs_t = check(rhs_src).statement_types[0]
        precise, precise_errs = self._binop_with(lhs_t, rhs_t)
        for degrade in (_degrade_size, _degrade_contents):
            blurry, blurry_errs = self._binop_with(degrade(lhs_t), rhs_t)
            assert len(blurry_errs) <= len(precise_errs)
            if blurry.size is not None and precise.size is not None:
                assert blurry.size == precise.size

    def test_subscript_degradation(self):
        base_t = check("c(1,2,3)").statement_types[0]
        sub_t = check("c(3,2,1)").statement_types[0]
        checker = Checker()
        expr = parse_source("x[1]").exprs[0]
        precise = checker.t_subscript(base_t, sub_t, expr)
        errors_before = [d for d in checker.diagnostics if d.severity is Severity.ERROR]
        checker2 = Checker()
        blurry = checker2.t_subscript(base_t, _degrade_contents(sub_t), expr)
        errors_after = [d for d in checker2.diagnostics if d.severity is Severity.ERROR]
        assert not errors_before and not errors_after
        assert blurry.size in (None, precise.size)

    def test_subscript_assign_degradation(self):
        base_t = check("c(1,2,3,4)").statement_types[0]
        sub_t = check("c(1,2)").statement_types[0]
        repl_t = check("c(9,9,9)").statement_types[0]
        expr = parse_source("x[1] <- 2").exprs[0]
        checker = Checker()
        precise = checker.t_subscript_assign(base_t, sub_t, repl_t, expr)
        checker2 = Checker()
        blurry = checker2.t_subscript_assign(
            base_t, _degrade_contents(sub_t), repl_t, expr
        )
        errs = [d for d in checker2.diagnostics if d.severity is Severity.ERROR]
        assert not errs
        assert blurry.size == precise.size == 4


class TestStatementTypesOutput:
    def test_describe_forms(self):
        _, types = analyze("c(1,2)\narray(c(1,2),c(2,2))\nfunction(a) a\nNULL")
        assert types == [
            "vector[numeric, len=2]",
            "array[numeric, dims=2x2, len=4]",
            "closure/1",
            "NULL",
        ]
