"""A small expression language naming test functions.

Grammar (lowest to highest precedence)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' INTEGER)?
    atom   := NUMBER | NUMBER 'i' | 'i' | 'z' | '(' expr ')'
            | 'exp' | 'sin' | 'cos'
            | NAME '(' args ')'
            | 'laurent' '(' [expr (',' expr)*] ';' [expr (',' expr)*] ')'

Calls: ``exp(e)``, ``sin(e)``, ``cos(e)`` (composition with the builtin),
``recip(e)``, ``root(e, p)``, ``compose(e1, e2)``, ``recenter(e, w)`` and
``derive(e)``.  In ``laurent(neg; pos)`` the first list holds ``a_-1, a_-2,
...`` and the second ``a_0, a_1, ...``; entries must be constant.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Union

from ..errors import DivisionAtCenterError, DomainError, SeriesError
from ..series import (
    ZERO_THRESHOLD,
    LaurentSeries,
    TruncatedSeries,
    binomial_root_series,
    cauchy_product,
    compose,
    derivative,
    power,
    principal_root,
    recenter,
    reciprocal,
    scale,
)


class ParseError(SeriesError):
    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column


class ElaborationError(SeriesError):
    pass


# -- AST --------------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: complex


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int


@dataclass(frozen=True)
class Builtin:
    name: str


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple


@dataclass(frozen=True)
class Laurent:
    neg: tuple
    pos: tuple


Node = Union[Num, Var, Neg, BinOp, Pow, Builtin, Call, Laurent]

BUILTINS = ("exp", "sin", "cos")
ARITY = {"exp": 1, "sin": 1, "cos": 1, "recip": 1, "root": 2, "compose": 2,
         "recenter": 2, "derive": 1}


# -- lexer ------------------------------------------------------------------------

_TOKEN = re.compile(r"""
    (?P<ws>[ \t]+)
  | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^(),;])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    column: int


def tokenize(text: str, line: int = 1) -> list:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos + 1)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append(Token(kind, m.group(), pos + 1))
        pos = m.end()
    tokens.append(Token("end", "", len(text) + 1))
    return tokens


# -- parser -----------------------------------------------------------------------

class _Parser:
    def __init__(self, text: str, line: int):
        self.tokens = tokenize(text, line)
        self.line = line
        self.i = 0

    def peek(self) -> Token:
        return self.tokens[self.i]

    def error(self, message: str, tok: Token = None):
        tok = tok or self.peek()
        return ParseError(message, self.line, tok.column)

    def take(self, text: str = None) -> Token:
        tok = self.peek()
        if text is not None and tok.text != text:
            shown = tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {shown!r}")
        self.i += 1
        return tok

    def parse(self) -> Node:
        node = self.expr()
        if self.peek().kind != "end":
            raise self.error(f"unexpected {self.peek().text!r}")
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.peek().text in ("+", "-"):
            op = self.take().text
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.peek().text in ("*", "/"):
            op = self.take().text
            node = BinOp(op, node, self.unary())
        return node

    def unary(self) -> Node:
        if self.peek().text == "-":
            self.take()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        if self.peek().text == "^":
            self.take()
            tok = self.peek()
            if tok.kind != "number" or not tok.text.isdigit() or int(tok.text) < 1:
                raise self.error("exponent must be a positive integer literal")
            self.take()
            if self.peek().text == "^":
                raise self.error("chained exponents need parentheses")
            return Pow(base, int(tok.text))
        return base

    def atom(self) -> Node:
        tok = self.peek()
        if tok.kind == "number":
            self.take()
            nxt = self.peek()
            if nxt.kind == "name" and nxt.text == "i" and nxt.column == tok.column + len(tok.text):
                self.take()
                return Num(complex(0.0, float(tok.text)))
            return Num(complex(float(tok.text), 0.0))
        if tok.text == "(":
            self.take()
            node = self.expr()
            self.take(")")
            return node
        if tok.kind == "name":
            self.take()
            name = tok.text
            if name == "z":
                return Var()
            if name == "i":
                return Num(1j)
            if name == "laurent":
                return self.laurent()
            if self.peek().text == "(":
                if name not in ARITY:
                    raise self.error(f"unknown function {name!r}", tok)
                return self.call(name, tok)
            if name in BUILTINS:
                return Builtin(name)
            raise self.error(f"unknown identifier {name!r}", tok)
        shown = tok.text or "end of input"
        raise self.error(f"unexpected {shown!r}")

    def arglist(self, stop: tuple) -> list:
        args = []
        if self.peek().text in stop:
            return args
        args.append(self.expr())
        while self.peek().text == ",":
            self.take()
            args.append(self.expr())
        return args

    def call(self, name: str, tok: Token) -> Node:
        self.take("(")
        args = self.arglist((")",))
        self.take(")")
        if len(args) != ARITY[name]:
            raise self.error(f"{name} takes {ARITY[name]} argument(s), got {len(args)}", tok)
        if name == "root":
            p = args[1]
            if not (isinstance(p, Num) and p.value.imag == 0 and p.value.real >= 1
                    and p.value.real == int(p.value.real)):
                raise self.error("root degree must be a positive integer literal", tok)
        return Call(name, tuple(args))

    def laurent(self) -> Node:
        self.take("(")
        neg = self.arglist((";",))
        self.take(";")
        pos = self.arglist((")",))
        self.take(")")
        return Laurent(tuple(neg), tuple(pos))


def parse_series_expr(text: str, line: int = 1) -> Node:
    """Parse one expression; errors carry line and column."""
    return _Parser(text, line).parse()


def parse_definitions(text: str) -> list:
    """``name = expression`` lines with ``#`` comments -> ``[(name, node, line)]``."""
    out = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        if "=" not in body:
            raise ParseError("expected 'name = expression'", lineno, 1)
        name, expr = body.split("=", 1)
        name = name.strip()
        if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9.\-]*", name):
            raise ParseError(f"invalid definition name {name!r}", lineno, 1)
        if name in seen:
            raise ParseError(f"duplicate definition {name!r}", lineno, 1)
        seen.add(name)
        offset = len(body) - len(body.split("=", 1)[1])
        try:
            node = parse_series_expr(expr, lineno)
        except ParseError as exc:
            raise ParseError(str(exc).split(": ", 1)[1], lineno, exc.column + offset) from None
        out.append((name, node, lineno))
    return out


# -- printer ----------------------------------------------------------------------

def _num(value: complex) -> str:
    if value.imag == 0:
        return repr(value.real)
    if value.real == 0:
        return repr(value.imag) + "i"
    return f"({value.real!r} + {value.imag!r}i)"


def to_source(node: Node) -> str:
    """Fully parenthesized source that parses back to ``node``."""
    if isinstance(node, Num):
        return _num(node.value)
    if isinstance(node, Var):
        return "z"
    if isinstance(node, Builtin):
        return node.name
    if isinstance(node, Neg):
        return f"(-{to_source(node.operand)})"
    if isinstance(node, BinOp):
        return f"({to_source(node.left)} {node.op} {to_source(node.right)})"
    if isinstance(node, Pow):
        base = to_source(node.base)
        if isinstance(node.base, Num) and node.base.value.real < 0:
            base = f"({base})"
        return f"{base}^{node.exponent}"
    if isinstance(node, Call):
        return f"{node.name}({', '.join(to_source(a) for a in node.args)})"
    if isinstance(node, Laurent):
        neg = ", ".join(to_source(a) for a in node.neg)
        pos = ", ".join(to_source(a) for a in node.pos)
        return f"laurent({neg}; {pos})"
    raise TypeError(f"not an expression node: {node!r}")


# -- elaboration --------------------------------------------------------------------

def _to_laurent(x) -> LaurentSeries:
    if isinstance(x, LaurentSeries):
        return x
    if x.center != 0:
        raise ElaborationError("only series about 0 combine with Laurent series")
    outer = math.inf if x.radius_hint is None else x.radius_hint
    return LaurentSeries((), x.coeffs, (0.0, outer))


def _laurent_op(op: str, a, b) -> LaurentSeries:
    A, B = _to_laurent(a), _to_laurent(b)
    annulus = (max(A.annulus[0], B.annulus[0]), min(A.annulus[1], B.annulus[1]))
    if not annulus[0] < annulus[1]:
        raise ElaborationError("Laurent operands have disjoint annuli")
    terms: dict = {}
    if op in "+-":
        sign = 1 if op == "+" else -1
        for j, c in A.indexed().items():
            terms[j] = terms.get(j, 0j) + c
        for j, c in B.indexed().items():
            terms[j] = terms.get(j, 0j) + sign * c
    else:
        for j, c in A.indexed().items():
            for k, d in B.indexed().items():
                terms[j + k] = terms.get(j + k, 0j) + c * d
    return LaurentSeries.from_terms(terms, annulus)


def _constant_value(x) -> complex:
    if isinstance(x, TruncatedSeries) and all(c == 0 for c in x.coeffs[1:]):
        return complex(x.coeffs[0])
    raise ElaborationError("expected a constant")


def _is_constant(x) -> bool:
    return isinstance(x, TruncatedSeries) and all(c == 0 for c in x.coeffs[1:])


def _series(x, what: str) -> TruncatedSeries:
    if not isinstance(x, TruncatedSeries):
        raise ElaborationError(f"{what} needs a power series, not a Laurent series")
    return x


def _root(f: TruncatedSeries, p: int) -> TruncatedSeries:
    c = complex(f.coeffs[0])
    if abs(c) <= ZERO_THRESHOLD:
        raise DomainError("root needs a nonzero constant term")
    g = scale(f, 1 / c) - 1
    body = compose(binomial_root_series(p, f.order), g.with_hint(f.radius_hint))
    return scale(body, principal_root(c, p))


def elaborate(node: Node, order: int = 32):
    """Evaluate the AST to a ``TruncatedSeries`` (or ``LaurentSeries``)."""
    if order < 1:
        raise ElaborationError("order must be at least 1")

    def go(n):
        if isinstance(n, Num):
            return TruncatedSeries.constant(n.value, order)
        if isinstance(n, Var):
            return TruncatedSeries.identity(order)
        if isinstance(n, Builtin):
            return getattr(TruncatedSeries, n.name)(order)
        if isinstance(n, Neg):
            x = go(n.operand)
            if isinstance(x, LaurentSeries):
                return _laurent_op("*", LaurentSeries((), (-1,)), x)
            return -x
        if isinstance(n, BinOp):
            a, b = go(n.left), go(n.right)
            if n.op == "/":
                if isinstance(b, LaurentSeries) or (isinstance(a, LaurentSeries) and not _is_constant(b)):
                    raise ElaborationError("Laurent series can only be divided by constants")
                if _is_constant(b):
                    c = _constant_value(b)
                    if c == 0:
                        raise DivisionAtCenterError("division by zero")
                    if isinstance(a, LaurentSeries):
                        return _laurent_op("*", a, LaurentSeries((), (1 / c,)))
                    return scale(a, 1 / c)
                return cauchy_product(a, reciprocal(b))
            if isinstance(a, LaurentSeries) or isinstance(b, LaurentSeries):
                return _laurent_op(n.op, a, b)
            if n.op == "+":
                return a + b
            if n.op == "-":
                return a - b
            return cauchy_product(a, b)
        if isinstance(n, Pow):
            x = go(n.base)
            if isinstance(x, LaurentSeries):
                out = x
                for _ in range(n.exponent - 1):
                    out = _laurent_op("*", out, x)
                return out
            return power(x, n.exponent)
        if isinstance(n, Laurent):
            neg = [_constant_value(go(a)) for a in n.neg]
            pos = [_constant_value(go(a)) for a in n.pos]
            return LaurentSeries(tuple(neg), tuple(pos) or (0j,))
        if isinstance(n, Call):
            args = [go(a) for a in n.args]
            if n.name in BUILTINS:
                outer = getattr(TruncatedSeries, n.name)(order)
                return compose(outer, _series(args[0], n.name))
            if n.name == "recip":
                return reciprocal(_series(args[0], "recip"))
            if n.name == "root":
                return _root(_series(args[0], "root"), int(n.args[1].value.real))
            if n.name == "compose":
                return compose(_series(args[0], "compose"), _series(args[1], "compose"))
            if n.name == "recenter":
                return recenter(_series(args[0], "recenter"), _constant_value(args[1]))
            if n.name == "derive":
                return derivative(_series(args[0], "derive"))
        raise ElaborationError(f"cannot elaborate {n!r}")

    return go(node)
