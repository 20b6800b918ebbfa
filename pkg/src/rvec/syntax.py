"""Lexer, recursive-descent parser, and deparser for the R vector subset.

The grammar covers literals, calls, function definitions, assignment with
`<-` or `=`, one-dimensional indexing and index-assignment, and the
arithmetic / comparison / logical binary operators.  Control flow is
deliberately rejected: `if`, `for`, `while`, and `repeat` are outside the
supported subset and produce a parse error saying so.

Every token and AST node carries a `SourceSpan` (1-based, end-exclusive
columns).  `pretty_print` deparses an AST back to normalized R text; the
parser and deparser round-trip structurally.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, Union

from .diagnostics import SourceSpan


class TokenKind(Enum):
    NUMBER = "number"
    STRING = "string"
    TRUE = "TRUE"
    FALSE = "FALSE"
    NA = "NA"
    NULL = "NULL"
    IDENT = "identifier"
    FUNCTION = "function"
    ASSIGN = "assign"  # '<-' or '='
    ARITH_OP = "arith-op"  # + - * /
    LOGICAL_OP = "logical-op"  # & | > < >= <= == !=
    LPAREN = "("
    RPAREN = ")"
    LBRACKET = "["
    RBRACKET = "]"
    LBRACE = "{"
    RBRACE = "}"
    COMMA = ","
    SEP = "separator"  # newline or ';'
    RESERVED = "reserved"  # control-flow keywords outside the subset
    EOF = "end of input"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str
    span: SourceSpan
    # Byte offsets into the source, used by the round-trip invariant tests.
    start: int = field(compare=False, default=0)
    end: int = field(compare=False, default=0)


class LexError(Exception):
    def __init__(self, message: str, span: SourceSpan):
        super().__init__(message)
        self.message = message
        self.span = span


class ParseError(Exception):
    def __init__(self, message: str, span: SourceSpan, expected: list[str] | None = None):
        super().__init__(message)
        self.message = message
        self.span = span
        self.expected = expected or []


KEYWORDS = {
    "TRUE": TokenKind.TRUE,
    "FALSE": TokenKind.FALSE,
    "NA": TokenKind.NA,
    "NULL": TokenKind.NULL,
    "function": TokenKind.FUNCTION,
}

RESERVED_WORDS = {"if", "else", "for", "while", "repeat", "break", "next"}

ARITH_OPS = {"+", "-", "*", "/"}
COMPARISON_OPS = {">", "<", ">=", "<=", "==", "!="}
LOGICAL_OPS = {"&", "|"} | COMPARISON_OPS

_TWO_CHAR = ("<-", "<=", ">=", "==", "!=")


def _is_ident_start(c: str) -> bool:
    return c.isalpha() or c == "."


def _is_ident_char(c: str) -> bool:
    return c.isalnum() or c in "._"


class _Lexer:
    def __init__(self, source: str):
        self.src = source
        self.pos = 0
        self.line = 1
        self.col = 1
        self.depth = 0  # '(' / '[' nesting; newlines inside are insignificant
        self.tokens: list[Token] = []

    def error(self, message: str) -> LexError:
        span = SourceSpan(self.line, self.col, self.line, self.col + 1)
        return LexError(message, span)

    def peek(self, ahead: int = 0) -> str:
        i = self.pos + ahead
        return self.src[i] if i < len(self.src) else ""

    def advance(self) -> str:
        c = self.src[self.pos]
        self.pos += 1
        if c == "\n":
            self.line += 1
            self.col = 1
        else:
            self.col += 1
        return c

    def emit(self, kind: TokenKind, start: int, start_line: int, start_col: int) -> None:
        span = SourceSpan(start_line, start_col, self.line, self.col)
        self.tokens.append(Token(kind, self.src[start : self.pos], span, start, self.pos))

    def run(self) -> list[Token]:
        while self.pos < len(self.src):
            c = self.peek()
            if c == "#":
                while self.pos < len(self.src) and self.peek() != "\n":
                    self.advance()
                continue
            if c == "\n":
                start, line, col = self.pos, self.line, self.col
                self.advance()
                if self.depth == 0:
                    self.emit(TokenKind.SEP, start, line, col)
                continue
            if c in " \t\r":
                self.advance()
                continue
            start, line, col = self.pos, self.line, self.col
            if c == ";":
                self.advance()
                self.emit(TokenKind.SEP, start, line, col)
            elif c == '"':
                self._string(start, line, col)
            elif c.isdigit() or (c == "." and self.peek(1).isdigit()):
                self._number(start, line, col)
            elif _is_ident_start(c):
                self._word(start, line, col)
            else:
                self._operator(start, line, col)
        self.tokens.append(
            Token(TokenKind.EOF, "", SourceSpan(self.line, self.col, self.line, self.col + 1),
                  self.pos, self.pos)
        )
        return self.tokens

    def _string(self, start: int, line: int, col: int) -> None:
        self.advance()  # opening quote
        while True:
            if self.pos >= len(self.src) or self.peek() == "\n":
                raise LexError("unterminated string", SourceSpan(line, col, self.line, self.col))
            c = self.advance()
            if c == "\\":
                if self.pos >= len(self.src):
                    raise LexError("unterminated string", SourceSpan(line, col, self.line, self.col))
                esc = self.advance()
                if esc not in ('"', "\\", "n", "t"):
                    raise LexError(
                        f"unsupported escape sequence '\\{esc}'",
                        SourceSpan(self.line, self.col - 2, self.line, self.col),
                    )
            elif c == '"':
                break
        self.emit(TokenKind.STRING, start, line, col)

    def _number(self, start: int, line: int, col: int) -> None:
        while self.peek().isdigit():
            self.advance()
        if self.peek() == ".":
            self.advance()
            while self.peek().isdigit():
                self.advance()
        if self.peek() in ("e", "E"):
            if self.peek(1).isdigit() or (self.peek(1) in "+-" and self.peek(2).isdigit()):
                self.advance()
                if self.peek() in "+-":
                    self.advance()
                while self.peek().isdigit():
                    self.advance()
        self.emit(TokenKind.NUMBER, start, line, col)

    def _word(self, start: int, line: int, col: int) -> None:
        while self.pos < len(self.src) and _is_ident_char(self.peek()):
            self.advance()
        word = self.src[start : self.pos]
        if word in KEYWORDS:
            self.emit(KEYWORDS[word], start, line, col)
        elif word in RESERVED_WORDS:
            self.emit(TokenKind.RESERVED, start, line, col)
        else:
            self.emit(TokenKind.IDENT, start, line, col)

    def _operator(self, start: int, line: int, col: int) -> None:
        two = self.src[self.pos : self.pos + 2]
        if two in _TWO_CHAR:
            self.advance()
            self.advance()
            kind = TokenKind.ASSIGN if two == "<-" else TokenKind.LOGICAL_OP
            self.emit(kind, start, line, col)
            return
        c = self.peek()
        single = {
            "(": TokenKind.LPAREN,
            ")": TokenKind.RPAREN,
            "[": TokenKind.LBRACKET,
            "]": TokenKind.RBRACKET,
            "{": TokenKind.LBRACE,
            "}": TokenKind.RBRACE,
            ",": TokenKind.COMMA,
            "=": TokenKind.ASSIGN,
        }
        if c in single:
            if c in "([":
                self.depth += 1
            elif c in ")]":
                self.depth = max(0, self.depth - 1)
            self.advance()
            self.emit(single[c], start, line, col)
        elif c in ARITH_OPS:
            self.advance()
            self.emit(TokenKind.ARITH_OP, start, line, col)
        elif c in ("&", "|", "<", ">"):
            self.advance()
            self.emit(TokenKind.LOGICAL_OP, start, line, col)
        else:
            raise self.error(f"unrecognized character {c!r}")


def tokenize(source: str) -> list[Token]:
    return _Lexer(source).run()


# --- AST ---------------------------------------------------------------

@dataclass
class NumLit:
    value: float
    span: SourceSpan = field(compare=False)


@dataclass
class StrLit:
    value: str
    span: SourceSpan = field(compare=False)


@dataclass
class LogicalLit:
    value: bool
    span: SourceSpan = field(compare=False)


@dataclass
class NaLit:
    span: SourceSpan = field(compare=False)


@dataclass
class NullLit:
    span: SourceSpan = field(compare=False)


@dataclass
class Var:
    name: str
    span: SourceSpan = field(compare=False)


@dataclass
class Call:
    callee: "Expr"
    args: list["Expr"]
    span: SourceSpan = field(compare=False)


@dataclass
class FunctionDef:
    params: list[str]
    body: list["Expr"]
    span: SourceSpan = field(compare=False)


@dataclass
class Assign:
    target: str
    value: "Expr"
    op_text: str  # "<-" or "="
    span: SourceSpan = field(compare=False)


@dataclass
class Index:
    base: "Expr"
    subscript: "Expr"
    span: SourceSpan = field(compare=False)


@dataclass
class IndexAssign:
    base: str
    subscript: "Expr"
    replacement: "Expr"
    op_text: str  # "<-" or "="
    span: SourceSpan = field(compare=False)


@dataclass
class BinOp:
    op: str
    lhs: "Expr"
    rhs: "Expr"
    span: SourceSpan = field(compare=False)
    op_span: SourceSpan = field(compare=False)


Expr = Union[
    NumLit, StrLit, LogicalLit, NaLit, NullLit, Var, Call,
    FunctionDef, Assign, Index, IndexAssign, BinOp,
]


@dataclass
class Program:
    exprs: list[Expr]


def iter_children(expr: Expr) -> Iterator[Expr]:
    match expr:
        case Call(callee, args):
            yield callee
            yield from args
        case FunctionDef(_, body):
            yield from body
        case Assign(_, value):
            yield value
        case Index(base, subscript):
            yield base
            yield subscript
        case IndexAssign(_, subscript, replacement):
            yield subscript
            yield replacement
        case BinOp(_, lhs, rhs):
            yield lhs
            yield rhs
        case _:
            return


# --- Parser ------------------------------------------------------------

class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind is not TokenKind.EOF:
            self.pos += 1
        return tok

    def at(self, kind: TokenKind, text: str | None = None) -> bool:
        tok = self.peek()
        return tok.kind is kind and (text is None or tok.text == text)

    def expect(self, kind: TokenKind) -> Token:
        tok = self.peek()
        if tok.kind is not kind:
            raise self.error(f"expected {kind.value}", [kind.value])
        return self.advance()

    def error(self, message: str, expected: list[str] | None = None) -> ParseError:
        tok = self.peek()
        got = tok.text or tok.kind.value
        return ParseError(f"{message}, found {got!r}", tok.span, expected)

    def skip_seps(self) -> None:
        while self.at(TokenKind.SEP):
            self.advance()

    def parse_program(self) -> Program:
        exprs: list[Expr] = []
        self.skip_seps()
        while not self.at(TokenKind.EOF):
            exprs.append(self.parse_statement())
            if self.at(TokenKind.EOF):
                break
            if not self.at(TokenKind.SEP):
                raise self.error("expected end of statement", ["newline", ";"])
            self.skip_seps()
        return Program(exprs)

    def parse_statement(self) -> Expr:
        return self.parse_assign()

    def parse_assign(self) -> Expr:
        left = self.parse_or()
        if self.at(TokenKind.ASSIGN):
            op_tok = self.advance()
            value = self.parse_assign()  # right-associative
            span = left.span.merge(value.span)
            match left:
                case Var(name):
                    return Assign(name, value, op_tok.text, span=span)
                case Index(Var(name), subscript):
                    return IndexAssign(name, subscript, value, op_tok.text, span=span)
                case Index():
                    raise ParseError(
                        "index-assignment target must be a plain variable",
                        left.span,
                    )
                case _:
                    raise ParseError("invalid assignment target", left.span)
        return left

    def _binop_chain(self, sub, ops: set[str], kind: TokenKind) -> Expr:
        left = sub()
        while self.peek().kind is kind and self.peek().text in ops:
            op_tok = self.advance()
            right = sub()
            left = BinOp(
                op_tok.text, left, right,
                span=left.span.merge(right.span), op_span=op_tok.span,
            )
        return left

    def parse_or(self) -> Expr:
        return self._binop_chain(self.parse_and, {"|"}, TokenKind.LOGICAL_OP)

    def parse_and(self) -> Expr:
        return self._binop_chain(self.parse_comparison, {"&"}, TokenKind.LOGICAL_OP)

    def parse_comparison(self) -> Expr:
        return self._binop_chain(self.parse_addsub, COMPARISON_OPS, TokenKind.LOGICAL_OP)

    def parse_addsub(self) -> Expr:
        return self._binop_chain(self.parse_muldiv, {"+", "-"}, TokenKind.ARITH_OP)

    def parse_muldiv(self) -> Expr:
        return self._binop_chain(self.parse_unary, {"*", "/"}, TokenKind.ARITH_OP)

    def parse_unary(self) -> Expr:
        if self.at(TokenKind.ARITH_OP, "-"):
            op_tok = self.advance()
            operand = self.parse_unary()
            span = op_tok.span.merge(operand.span)
            if isinstance(operand, NumLit):
                # Fold so that c(-1, -3) has literal negative elements.
                return NumLit(-operand.value, span=span)
            zero = NumLit(0.0, span=op_tok.span)
            return BinOp("-", zero, operand, span=span, op_span=op_tok.span)
        return self.parse_postfix()

    def parse_postfix(self) -> Expr:
        expr = self.parse_primary()
        while True:
            if self.at(TokenKind.LPAREN):
                self.advance()
                args = self.parse_args()
                close = self.expect(TokenKind.RPAREN)
                expr = Call(expr, args, span=expr.span.merge(close.span))
            elif self.at(TokenKind.LBRACKET):
                self.advance()
                sub = self.parse_assign()
                if self.at(TokenKind.COMMA):
                    raise self.error("multi-dimensional indexing is not supported")
                close = self.expect(TokenKind.RBRACKET)
                expr = Index(expr, sub, span=expr.span.merge(close.span))
            else:
                return expr

    def parse_args(self) -> list[Expr]:
        args: list[Expr] = []
        if self.at(TokenKind.RPAREN):
            return args
        while True:
            arg = self.parse_or()
            if self.at(TokenKind.ASSIGN):
                raise ParseError(
                    "named arguments are not supported", self.peek().span
                )
            args.append(arg)
            if self.at(TokenKind.COMMA):
                self.advance()
                continue
            return args

    def parse_params(self) -> list[str]:
        params: list[str] = []
        self.expect(TokenKind.LPAREN)
        if not self.at(TokenKind.RPAREN):
            while True:
                tok = self.expect(TokenKind.IDENT)
                if tok.text in params:
                    raise ParseError(f"duplicate parameter '{tok.text}'", tok.span)
                params.append(tok.text)
                if self.at(TokenKind.COMMA):
                    self.advance()
                    continue
                break
        self.expect(TokenKind.RPAREN)
        return params

    def parse_function(self) -> Expr:
        fn_tok = self.expect(TokenKind.FUNCTION)
        params = self.parse_params()
        if self.at(TokenKind.LBRACE):
            self.advance()
            body: list[Expr] = []
            self.skip_seps()
            while not self.at(TokenKind.RBRACE):
                body.append(self.parse_statement())
                if self.at(TokenKind.RBRACE):
                    break
                if not self.at(TokenKind.SEP):
                    raise self.error("expected end of statement", ["newline", ";", "}"])
                self.skip_seps()
            close = self.expect(TokenKind.RBRACE)
            if not body:
                raise ParseError("empty function body", close.span)
            return FunctionDef(params, body, span=fn_tok.span.merge(close.span))
        body_expr = self.parse_assign()
        return FunctionDef(params, [body_expr], span=fn_tok.span.merge(body_expr.span))

    def parse_primary(self) -> Expr:
        tok = self.peek()
        match tok.kind:
            case TokenKind.NUMBER:
                self.advance()
                return NumLit(float(tok.text), span=tok.span)
            case TokenKind.STRING:
                self.advance()
                return StrLit(_unescape(tok.text), span=tok.span)
            case TokenKind.TRUE:
                self.advance()
                return LogicalLit(True, span=tok.span)
            case TokenKind.FALSE:
                self.advance()
                return LogicalLit(False, span=tok.span)
            case TokenKind.NA:
                self.advance()
                return NaLit(span=tok.span)
            case TokenKind.NULL:
                self.advance()
                return NullLit(span=tok.span)
            case TokenKind.IDENT:
                self.advance()
                return Var(tok.text, span=tok.span)
            case TokenKind.FUNCTION:
                return self.parse_function()
            case TokenKind.LPAREN:
                self.advance()
                inner = self.parse_assign()
                self.expect(TokenKind.RPAREN)
                return inner
            case TokenKind.RESERVED:
                raise ParseError(
                    f"'{tok.text}' is a construct not in supported subset", tok.span
                )
            case _:
                raise self.error("expected an expression", ["expression"])


def parse(tokens: list[Token]) -> Program:
    return _Parser(tokens).parse_program()


def parse_source(source: str) -> Program:
    return parse(tokenize(source))


# --- Deparser ----------------------------------------------------------

# Precedence levels for parenthesization when deparsing.
_PREC_ASSIGN = 1
_PREC_OR = 2
_PREC_AND = 3
_PREC_CMP = 4
_PREC_ADD = 5
_PREC_MUL = 6
_PREC_UNARY = 7
_PREC_POSTFIX = 8
_PREC_ATOM = 9

_BINOP_PREC = {
    "|": _PREC_OR, "&": _PREC_AND,
    ">": _PREC_CMP, "<": _PREC_CMP, ">=": _PREC_CMP, "<=": _PREC_CMP,
    "==": _PREC_CMP, "!=": _PREC_CMP,
    "+": _PREC_ADD, "-": _PREC_ADD, "*": _PREC_MUL, "/": _PREC_MUL,
}


def format_number(value: float) -> str:
    """Deparse a numeric literal so that it re-lexes to the same value."""
    if math.isnan(value):
        return "NaN"
    if math.isinf(value):
        return "Inf" if value > 0 else "-Inf"
    if value == int(value) and abs(value) < 2**53:
        return str(int(value))
    return repr(value)


def _escape(s: str) -> str:
    out = s.replace("\\", "\\\\").replace('"', '\\"')
    out = out.replace("\n", "\\n").replace("\t", "\\t")
    return f'"{out}"'


def _unescape(text: str) -> str:
    body = text[1:-1]
    out: list[str] = []
    i = 0
    while i < len(body):
        c = body[i]
        if c == "\\":
            nxt = body[i + 1]
            out.append({"n": "\n", "t": "\t", '"': '"', "\\": "\\"}[nxt])
            i += 2
        else:
            out.append(c)
            i += 1
    return "".join(out)


def _prec_of(expr: Expr) -> int:
    match expr:
        case NumLit(value):
            return _PREC_ATOM if value >= 0 or math.isnan(value) else _PREC_UNARY
        case BinOp(op, _, _):
            return _BINOP_PREC[op]
        case Assign() | IndexAssign() | FunctionDef():
            return _PREC_ASSIGN
        case Call() | Index():
            return _PREC_POSTFIX
        case _:
            return _PREC_ATOM


def _pp(expr: Expr, min_prec: int) -> str:
    text = _pp_bare(expr)
    if _prec_of(expr) < min_prec:
        return f"({text})"
    return text


def _pp_bare(expr: Expr) -> str:
    match expr:
        case NumLit(value):
            return format_number(value)
        case StrLit(value):
            return _escape(value)
        case LogicalLit(value):
            return "TRUE" if value else "FALSE"
        case NaLit():
            return "NA"
        case NullLit():
            return "NULL"
        case Var(name):
            return name
        case Call(callee, args):
            inner = ", ".join(_pp(a, _PREC_OR) for a in args)
            return f"{_pp(callee, _PREC_POSTFIX)}({inner})"
        case FunctionDef(params, body):
            head = f"function({', '.join(params)})"
            if len(body) == 1:
                return f"{head} {_pp(body[0], _PREC_ASSIGN)}"
            stmts = "; ".join(_pp(e, _PREC_ASSIGN) for e in body)
            return f"{head} {{ {stmts} }}"
        case Assign(target, value, op_text):
            return f"{target} {op_text} {_pp(value, _PREC_ASSIGN)}"
        case Index(base, subscript):
            return f"{_pp(base, _PREC_POSTFIX)}[{_pp(subscript, _PREC_ASSIGN)}]"
        case IndexAssign(base, subscript, replacement, op_text):
            sub = _pp(subscript, _PREC_ASSIGN)
            return f"{base}[{sub}] {op_text} {_pp(replacement, _PREC_ASSIGN)}"
        case BinOp(op, lhs, rhs):
            prec = _BINOP_PREC[op]
            left = _pp(lhs, prec)
            right = _pp(rhs, prec + 1)  # left-associative
            return f"{left} {op} {right}"
    raise AssertionError(f"unhandled node {expr!r}")


def pretty_print(node: Expr | Program) -> str:
    if isinstance(node, Program):
        return "\n".join(_pp(e, 0) for e in node.exprs)
    return _pp(node, 0)
