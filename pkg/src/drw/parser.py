"""Text syntax for de Rham-Witt expressions, rendering, and the JSON form.

Grammar::

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := INT | teich | 'V' ['^' INT] '(' expr ')' | 'F' ['^' INT] '(' expr ')'
            | 'd' '(' expr ')' | elit | '(' expr ')'
    teich  := '[' 'X' INT ']' ['^' INT]
    elit   := 'e' '(' INT ';' rational (',' rational)* ';' '{' [INT (',' INT)*] '}' ')'

Variables are numbered from 1 in text and JSON.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .core import Context, DRWElement
from .weights import Partition, PAdicRational, WeightFunction


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.line, self.col = line, col
        super().__init__(f"{message} at line {line}, column {col}" if line else message)


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "name", "op" or "end"
    text: str
    line: int
    col: int


_TOKEN = re.compile(r"(?P<ws>\s+)|(?P<int>\d+)|(?P<name>[A-Za-z])|(?P<op>[()\[\]{};,+\-*^/])")


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "ws":
            for k, ch in enumerate(m.group(), start=pos):
                if ch == "\n":
                    line, line_start = line + 1, k + 1
        else:
            tokens.append(Token(kind, m.group(), line, pos - line_start + 1))
        pos = m.end()
    tokens.append(Token("end", "", line, pos - line_start + 1))
    return tokens


# ---- syntax tree


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Teich:
    var: int  # 1-based
    power: int = 1


@dataclass(frozen=True)
class Basic:
    eta: int
    a: tuple[Fraction, ...]
    I: tuple[int, ...]  # 1-based


@dataclass(frozen=True)
class Apply:
    op: str  # "V", "F" or "d"
    arg: Expr
    times: int = 1


@dataclass(frozen=True)
class Neg:
    arg: Expr


@dataclass(frozen=True)
class BinOp:
    op: str  # "+", "-" or "*"
    left: Expr
    right: Expr


Expr = Union[Num, Teich, Basic, Apply, Neg, BinOp]


class _Parser:
    def __init__(self, text: str, nvars: int | None):
        self.tokens = tokenize(text)
        self.i = 0
        self.nvars = nvars

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, message: str, tok: Token | None = None):
        tok = tok or self.tok
        return ParseError(message, tok.line, tok.col)

    def accept(self, text: str) -> bool:
        if self.tok.kind in ("op", "name") and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        tok = self.tok
        if not self.accept(text):
            found = tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        return tok

    def integer(self) -> int:
        tok = self.tok
        if tok.kind != "int":
            raise self.error(f"expected an integer, found {tok.text or 'end of input'!r}")
        self.i += 1
        return int(tok.text)

    def signed_integer(self) -> int:
        return -self.integer() if self.accept("-") else self.integer()

    def rational(self) -> Fraction:
        num = self.integer()
        if self.accept("/"):
            tok = self.tok
            den = self.integer()
            if den == 0:
                raise self.error("zero denominator", tok)
            return Fraction(num, den)
        return Fraction(num)

    def variable(self, tok: Token) -> int:
        k = self.integer()
        if k < 1 or (self.nvars is not None and k > self.nvars):
            raise self.error(f"unknown variable X{k}", tok)
        return k

    def parse(self) -> Expr:
        node = self.expr()
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.text!r}")
        return node

    def expr(self) -> Expr:
        node = Neg(self.term()) if self.accept("-") else self.term()
        while True:
            if self.accept("+"):
                node = BinOp("+", node, self.term())
            elif self.accept("-"):
                node = BinOp("-", node, self.term())
            else:
                return node

    def term(self) -> Expr:
        node = self.factor()
        while self.accept("*"):
            node = BinOp("*", node, self.factor())
        return node

    def factor(self) -> Expr:
        tok = self.tok
        if tok.kind == "int":
            return Num(self.integer())
        if self.accept("("):
            node = self.expr()
            self.expect(")")
            return node
        if self.accept("["):
            xtok = self.expect("X")
            var = self.variable(xtok)
            self.expect("]")
            power = self.integer() if self.accept("^") else 1
            return Teich(var, power)
        if tok.text in ("V", "F") and tok.kind == "name":
            self.i += 1
            times = self.integer() if self.accept("^") else 1
            self.expect("(")
            node = self.expr()
            self.expect(")")
            return Apply(tok.text, node, times)
        if self.accept("d"):
            self.expect("(")
            node = self.expr()
            self.expect(")")
            return Apply("d", node)
        if self.accept("e"):
            return self.basic(tok)
        raise self.error(f"unexpected {tok.text or 'end of input'!r}")

    def basic(self, start: Token) -> Basic:
        self.expect("(")
        eta = self.signed_integer()
        self.expect(";")
        values = [self.rational()]
        while self.accept(","):
            values.append(self.rational())
        if self.nvars is not None and len(values) != self.nvars:
            raise self.error(f"basic element has {len(values)} weights, expected {self.nvars}", start)
        self.expect(";")
        self.expect("{")
        idx = []
        if self.tok.kind == "int":
            idx.append(self.variable(self.tok))
            while self.accept(","):
                idx.append(self.variable(self.tok))
        self.expect("}")
        self.expect(")")
        if len(set(idx)) != len(idx):
            raise self.error("repeated index in partition", start)
        return Basic(eta, tuple(values), tuple(idx))


def parse(text: str, nvars: int | None = None) -> Expr:
    """Parse an expression; with ``nvars`` given, variable indices are range-checked."""
    return _Parser(text, nvars).parse()


def evaluate(node: Expr, ctx: Context) -> DRWElement:
    if isinstance(node, Num):
        return ctx.scalar(node.value)
    if isinstance(node, Teich):
        if node.var > ctx.n:
            raise ValueError(f"unknown variable X{node.var} with {ctx.n} variables")
        exps = [0] * ctx.n
        exps[node.var - 1] = node.power
        return ctx.teich(exps)
    if isinstance(node, Basic):
        if len(node.a) != ctx.n:
            raise ValueError(f"basic element has {len(node.a)} weights, expected {ctx.n}")
        if any(i > ctx.n for i in node.I):
            raise ValueError(f"partition index out of range 1..{ctx.n}")
        return ctx.basic(node.eta, node.a, [i - 1 for i in node.I])
    if isinstance(node, Apply):
        x = evaluate(node.arg, ctx)
        if node.op == "d":
            return x.d()
        return x.V(node.times) if node.op == "V" else x.F(node.times)
    if isinstance(node, Neg):
        return -evaluate(node.arg, ctx)
    if isinstance(node, BinOp):
        left, right = evaluate(node.left, ctx), evaluate(node.right, ctx)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        return left * right
    raise TypeError(f"not an expression node: {node!r}")


def parse_element(text: str, ctx: Context) -> DRWElement:
    return evaluate(parse(text, ctx.n), ctx)


# ---- output


def render_term(key: Partition, eta: int) -> str:
    vals = ", ".join(str(v) for v in key.base.values())
    idx = ",".join(str(i + 1) for i in key.indices)
    return f"e({eta}; {vals}; {{{idx}}})"


def render(x: DRWElement) -> str:
    """Canonical text form; parsing it back gives ``x``."""
    if not x:
        return "0"
    if x.ctx.n == 0:
        return str(x.terms[next(iter(x.terms))])
    return " + ".join(render_term(k, c) for k, c in x)


def to_json(x: DRWElement) -> dict:
    ctx = x.ctx
    return {
        "p": ctx.p,
        "n": ctx.n,
        "M": ctx.M,
        "terms": [
            {
                "eta": c,
                "a": [[e.mantissa, e.vexp] for e in key.base.entries],
                "I": [i + 1 for i in key.indices],
            }
            for key, c in x
        ],
    }


def dumps(x: DRWElement) -> str:
    return json.dumps(to_json(x))


def from_json(obj: dict | str) -> DRWElement:
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        ctx = Context(obj["p"], obj["n"], obj["M"])
        raw = {}
        for t in obj["terms"]:
            entries = []
            for m, v in t["a"]:
                e = PAdicRational(m, v) if m else PAdicRational(0, 0)
                if m < 0 or (m and m % ctx.p == 0):
                    raise ValueError(f"mantissa {m} is not a positive unit at p={ctx.p}")
                entries.append(e)
            if len(entries) != ctx.n:
                raise ValueError(f"term has {len(entries)} weights, expected {ctx.n}")
            a = WeightFunction(ctx.p, tuple(entries))
            key = Partition.of(a, [i - 1 for i in t["I"]])
            if key in raw:
                raise ValueError("repeated term")
            raw[key] = int(t["eta"])
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed element JSON: {exc}") from exc
    return ctx.element(raw)
