"""Recursive-descent parser for element expressions.

Grammar (whitespace ignored)::

    expr    = term { ("+" | "-") term } ;
    term    = unary { ("*" | "/") unary } ;
    unary   = ("+" | "-") unary | power ;
    power   = atom [ ("^" | "**") integer ] ;
    atom    = integer | symbol | "(" expr ")" ;
    integer = digit { digit } ;
    symbol  = "x"                               (polynomials)
            | "i" | "sqrt(" ["-"] integer ")"
            | "√" ["-"] integer                 (quadratic integers)

Division is only allowed by a nonzero constant, so ``3/2*x^2`` is a
rational coefficient. The parser yields a small AST; :func:`to_poly`
evaluates it to a polynomial in the single symbol.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .. import polynomial as P


class ParseError(ValueError):
    def __init__(self, message: str, pos: int | None = None):
        super().__init__(message if pos is None else f"{message} at position {pos}")
        self.message = message
        self.pos = pos


# AST nodes are plain tuples: ("num", Fraction), ("sym",), ("add"|"sub"|"mul"|"div", l, r),
# ("neg", e), ("pow", e, k)

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<sqrt>(?:sqrt\(\s*(?P<sd>-?\s*\d+)\s*\))|(?:√\s*(?P<rd>-?\d+)))"
    r"|(?P<pow>\*\*|\^)|(?P<op>[-+*/()])|(?P<name>[A-Za-z_]\w*))"
)


@dataclass
class _Tok:
    kind: str
    text: str
    pos: int
    radicand: int | None = None


def tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastgroup) if m.lastgroup else pos
        if m.group("num") is not None:
            toks.append(_Tok("num", m.group("num"), start))
        elif m.group("sqrt") is not None:
            rad = m.group("sd") if m.group("sd") is not None else m.group("rd")
            toks.append(_Tok("sym", m.group("sqrt"), m.start("sqrt"), int(rad.replace(" ", ""))))
        elif m.group("pow") is not None:
            toks.append(_Tok("^", m.group("pow"), start))
        elif m.group("op") is not None:
            toks.append(_Tok(m.group("op"), m.group("op"), start))
        else:
            toks.append(_Tok("sym", m.group("name"), m.start("name")))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, symbols: set[str]):
        self.toks = tokenize(text)
        self.i = 0
        self.symbols = symbols

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, kind: str) -> _Tok:
        t = self.take()
        if t.kind != kind:
            raise ParseError(f"expected {kind!r}, found {t.text or 'end of input'!r}", t.pos)
        return t

    def parse(self):
        node = self.expr()
        t = self.peek()
        if t.kind != "end":
            raise ParseError(f"unexpected {t.text!r}", t.pos)
        return node

    def expr(self):
        node = self.term()
        while self.peek().kind in ("+", "-"):
            op = self.take().kind
            node = ("add" if op == "+" else "sub", node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek().kind in ("*", "/"):
            op = self.take().kind
            node = ("mul" if op == "*" else "div", node, self.unary())
        return node

    def unary(self):
        t = self.peek()
        if t.kind == "-":
            self.take()
            return ("neg", self.unary())
        if t.kind == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek().kind == "^":
            self.take()
            t = self.expect("num")
            return ("pow", base, int(t.text))
        return base

    def atom(self):
        t = self.take()
        if t.kind == "num":
            return ("num", Fraction(int(t.text)))
        if t.kind == "sym":
            key = t.text if t.radicand is None else f"sqrt({t.radicand})"
            if key not in self.symbols:
                raise ParseError(f"unknown symbol {t.text!r}", t.pos)
            return ("sym",)
        if t.kind == "(":
            node = self.expr()
            self.expect(")")
            return node
        raise ParseError(f"unexpected {t.text or 'end of input'!r}", t.pos)


def parse_ast(text: str, symbols=()) -> tuple:
    if not text.strip():
        raise ParseError("empty expression")
    return _Parser(text, set(symbols)).parse()


def to_poly(node) -> P.Poly:
    kind = node[0]
    if kind == "num":
        return P.poly([node[1]])
    if kind == "sym":
        return P.X
    if kind == "neg":
        return P.neg(to_poly(node[1]))
    if kind == "pow":
        return P.power(to_poly(node[1]), node[2])
    left, right = to_poly(node[1]), to_poly(node[2])
    if kind == "add":
        return P.add(left, right)
    if kind == "sub":
        return P.sub(left, right)
    if kind == "mul":
        return P.mul(left, right)
    if not right or len(right) > 1:
        raise ParseError("division only by a nonzero constant")
    return P.scale(left, 1 / right[0])


def top_level_factors(node) -> tuple[Fraction, list[tuple[tuple, int]]]:
    """Split an AST into ``(sign/constant, [(factor_ast, multiplicity), ...])``
    along top-level products, powers and negations."""
    const = Fraction(1)
    out: list[tuple[tuple, int]] = []

    def walk(n, mult):
        nonlocal const
        kind = n[0]
        if kind == "mul":
            walk(n[1], mult)
            walk(n[2], mult)
        elif kind == "neg":
            const *= (-1) ** mult
            walk(n[1], mult)
        elif kind == "pow":
            walk(n[1], mult * n[2])
        elif kind == "num":
            const *= n[1] ** mult
        elif kind == "div":
            d = to_poly(n[2])
            if len(d) != 1:
                raise ParseError("division only by a nonzero constant")
            const /= d[0] ** mult
            walk(n[1], mult)
        else:
            out.append((n, mult))

    walk(node, 1)
    return const, out


def parse_rational(text: str) -> Fraction:
    p = to_poly(parse_ast(text))
    if len(p) > 1:
        raise ParseError("expected a constant")
    return p[0] if p else Fraction(0)
