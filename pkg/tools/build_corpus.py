# One-off generator for the golden corpus files.  Outputs were reviewed by
# hand against R's documented behavior before freezing.
from rvec.syntax import parse_source
from rvec.shapecheck import check_program
from rvec.interp import run_program
from rvec.cli import render_run_output

CASES = {
 "01_boxing": ("5\n5[1]\n5[1][1][1][1][1]\n", []),
 "02_combine_pair": ("foo <- function(a,b) c(a, b)\nfoo(3, 4)\n", []),
 "03_nested_index": ("foo <- function(a,b) c(a, b)\nfoo(c(3,4),c(5,6))[1][1]\n", []),
 "04_modes": ('mode(1)\nmode(TRUE)\nmode("foo")\nmode(function(a)a)\n', []),
 "05_null_identity": ("c() == NULL\nlength(NULL)\nmode(NULL)\n",
   ["comparing two empty vectors yields logical(0); the published transcript",
    "prints [1] TRUE, which elementwise == cannot produce (recorded as erratum)"]),
 "06_array_2x2": ("array(c(1,2,3,4), c(2,2))\n", []),
 "07_array_recycle": ("array(c(1,2), c(3,3))\n", []),
 "08_matrix_1x4": ("matrix(c(1,2,3,4),c(1,4))\n", []),
 "09_pairwise_add": ("1 + 1\nc(1, 2, 3) + c(1, 2, 3)\n",
   ["the published transcript prints '[1] c(2, 4, 6)'; R prints the bare",
    "elements (recorded as a transcript formatting artifact)"]),
 "10_logical_coerce": ("TRUE & 0\nTRUE & -2\n", []),
 "11_arith_coerce": ("1 + FALSE\n1 + TRUE\n",
   ["the published transcript shows 1+FALSE=2 and 1+TRUE=0, contradicting the",
    "stated rule TRUE->1 / FALSE->0; the rule-consistent values are recorded"]),
 "12_nonnumeric_err": ('1 + "R"\n', []),
 "13_recycle_multiple": ("c(1, 2, 3, 4) * c(0, 1)\nc(1, 2, 3, 4) * c(0, 1, 0, 1)\n", []),
 "14_recycle_warning": ("c(1,2) + c(1,2,3)\n", []),
 "15_flat_index": ("array(c(1,2,3,4), c(2,2))[3]\n", []),
 "16_index_positive": ('c("a", "b", "c")[c(3, 2, 1)]\n', []),
 "17_index_negative": ('c("a", "b", "c")[c(-1, -3)]\n', []),
 "18_index_logical": ('c("a", "b", "c")[c(TRUE, FALSE)]\n', []),
 "19_logical_extend": ("c(1,2,3)[c(TRUE,TRUE,TRUE,TRUE)]\nc(1,2,3)[c(FALSE,TRUE,FALSE,FALSE)]\n", []),
 "20_assign_na": ("a <- c(1, 2, 3, 4)\na[c(1,2)] = NA\na\n",
   ["the published transcript echoes '[1] 1 2 3' after the first assignment;",
    "assignments are invisible in R, so nothing is recorded for it (erratum)"]),
 "21_assign_recycle": ("a <- c(1, 2, 3, 4)\na[c(1,2,3,4)] = c(1, 2)\na\n", []),
 "22_assign_warning": ("a <- c(1, 2, 3, 4)\na[c(1,2)] = c(NA, NA, NA)\na\n",
   ["each assignment case starts from a fresh a <- c(1,2,3,4); the final value",
    "is NA NA 3 4 (the published '[1] NA NA  3' is inconsistent with its own",
    "session state)"]),
 "23_null_replacement": ("a <- c(1, 2, 3, 4)\na[1] = NULL\n", []),
 "24_null_data": ("array(c(), c())\n",
   ["the checker additionally flags the empty shape (E_BADDIMS); the runtime",
    "stops at the data check"]),
 "25_pipeline_2na6": ("foo <- function(a,b) c(a,b)\na <- foo(1,c(NA,3))\nb <- foo(c(1,NA),3)\na + b\n", []),
 "26_unused_arg": ("foo <- function(a,b) c(a, b)\nfoo(1,2,3)\n", []),
 "27_unused_args_plural": ("bar <- function(a) a\nbar(1, 2, 3)\n", []),
 "28_notfun": ('"bar"(1,2)\n', []),
 "29_nonnumeric_cat": ('"cat" + 1\n', []),
 "30_missing_arg": ("foo <- function(a,b) c(a, b)\nfoo(1)\n",
   ["missing arguments fail when the body uses them, matching R; the published",
    "transcript for foo(1) shows an unrelated unused-arguments message (erratum)"]),
 "31_matrix_trunc": ("matrix(c(1,2), c(1,2,9))\n",
   ["the runtime truncates extra matrix dimensions with a warning; the checker",
    "rejects the 3-element shape outright (E_MATRIX_DIMS)"]),
 "32_mixed_signs": ("c(1,2,3)[c(1,-1)]\n", []),
 "33_dims_mismatch": ("array(c(1,2),c(2)) + array(c(1,2,3),c(3))\n", []),
 "34_bad_dims": ("array(c(1), c(-2))\n", []),
 "35_oob_assign": ("a <- c(1,2)\na[9] = 5\n",
   ["fixed-size vectors: out-of-bounds assignment is an error here; real R",
    "grows the vector (use run --r-compat-growth for that behavior)"]),
 "36_oob_read": ("c(1,2)[5]\n",
   ["an out-of-bounds read yields NA silently at runtime; only the checker",
    "flags it"]),
 "37_zero_index": ("c(1,2)[c(0,1)]\n",
   ["zero indices are dropped silently at runtime; only the checker flags them"]),
 "38_na_subassign": ("a <- c(1,2)\na[NA] = 5\n",
   ["the NA literal poisons static content tracking, so only the runtime",
    "reports this one"]),
 "39_unbound": ("bb\n", []),
 "40_char_subscript": ('c(1,2)["a"]\n', []),
 "41_bad_combine": ("foo <- function(a) a\nc(foo)\n", []),
 "42_nonlogical": ('"a" & TRUE\n', []),
 "43_rebound_builtin": ("c <- function(a,b) a\nc(5, 6)\n",
   ["calls through a rebound core constructor are not analyzed statically",
    "(the checker reports Top; the diff verdict is checker-weaker)"]),
 "44_assign_mode_widen": ('a <- c(1, 2)\na[1] = "x"\na\n', []),
 "45_empty_absorb": ("c(1,2) + NULL\n", []),
}

for name, (src, notes) in CASES.items():
    prog = parse_source(src)
    rep = check_program(prog)
    outs = run_program(prog)
    out_text = render_run_output(outs)
    diags = [(d.code.value, "static", d.span.start_line) for d in rep.diagnostics]
    for o in outs:
        diags += [(w.code.value, "runtime", w.span.start_line) for w in o.warnings]
        if o.error:
            diags.append((o.error.code.value, "runtime", o.error.span.start_line))
    body = src + "# ---\n"
    for note in notes:
        body += f"# note: {note}\n"
    for code, phase, line in diags:
        body += f"# diag: {code} {phase} {line}\n"
    body += "# run:\n"
    for line in out_text.split("\n")[:-1] if out_text else []:
        body += f"# {line}\n" if line else "#\n"
    with open(f"corpus/{name}.R", "w", encoding="utf-8") as fh:
        fh.write(body)
    print(f"wrote corpus/{name}.R")
