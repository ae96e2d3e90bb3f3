"""Concrete formula syntax for every stack.

Grammar, innermost layer delimited by braces::

    PL        f ::= ident | ~f | f & f | f | f | f -> f | (f)
    L(..)     f ::= {inner} | ~f | f & f | X f | f U f | (f)
    P(..)     f ::= t < t | ~f | f & f | (f)
              t ::= number | Int{inner} | t + t | t * t | (t)
    H(..)     f ::= nom i | {inner} | ~f | f & f | @ i f | <l> f | [l] f
                  | E x . f | (f)

Precedence, tightest first: prefix operators, ``&``, ``|``, ``->`` (right
associative), ``U`` (right associative).  ``E x .`` scopes as far right as
possible.  ``|``, ``->`` and ``[l]`` are sugar for ``~``/``&``/``<l>``
combinations and are restored by the printer, so ``parse(show(s)) == s``.
Numbers are integers, decimals or ``n/d`` fractions, read exactly.
"""

from __future__ import annotations

import re
from decimal import Decimal
from fractions import Fraction
from typing import Optional

from .core import LayerKind, LogicStack
from .errors import ParseError
from .syntax import (
    Add,
    And,
    At,
    Atom,
    BaseAtom,
    Const,
    Diamond,
    Exists,
    Integral,
    Less,
    Mul,
    Next,
    Nominal,
    Not,
    Until,
    box,
    disj,
    implies,
)

_TOKEN = re.compile(
    r"\s*(?:(?P<num>-?\d+/\d+|-?\d+(?:\.\d+)?)|(?P<ident>[A-Za-z_][A-Za-z0-9_']*)|(?P<sym>->|[(){}\[\]<>~&|.@+*]))"
)

UNTIL, IMP, OR, AND, PREFIX = 1, 2, 3, 4, 5


def tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = len(text) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", text, start)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


def parse_number(text: str) -> Fraction:
    if "/" in text:
        num, den = text.split("/")
        return Fraction(int(num), int(den))
    return Fraction(Decimal(text))


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    # token helpers

    def peek(self, value: Optional[str] = None) -> bool:
        kind, tok, _ = self.tokens[self.i]
        return tok == value and kind != "end" if value is not None else kind != "end"

    def error(self, message: str) -> ParseError:
        kind, tok, pos = self.tokens[self.i]
        found = "end of input" if kind == "end" else repr(tok)
        return ParseError(f"{message}, found {found}", self.text, pos)

    def expect(self, value: str) -> None:
        if not self.peek(value):
            raise self.error(f"expected {value!r}")
        self.i += 1

    def ident(self) -> str:
        kind, tok, _ = self.tokens[self.i]
        if kind != "ident":
            raise self.error("expected an identifier")
        self.i += 1
        return tok

    def accept(self, value: str) -> bool:
        if self.peek(value):
            self.i += 1
            return True
        return False

    # formulas

    def formula(self, stack: LogicStack):
        if stack.layers and stack.outer is LayerKind.TEMPORAL:
            left = self.implication(stack)
            if self.accept("U"):
                return Until(left, self.formula(stack))
            return left
        return self.implication(stack)

    def implication(self, stack):
        left = self.disjunction(stack)
        if self.accept("->"):
            return implies(left, self.implication(stack))
        return left

    def disjunction(self, stack):
        left = self.conjunction(stack)
        while self.accept("|"):
            left = disj(left, self.conjunction(stack))
        return left

    def conjunction(self, stack):
        left = self.unary(stack)
        while self.accept("&"):
            left = And(left, self.unary(stack))
        return left

    def braced(self, stack):
        self.expect("{")
        inner = self.formula(stack.inner)
        self.expect("}")
        return inner

    def parenthesised(self, stack):
        self.expect("(")
        f = self.formula(stack)
        self.expect(")")
        return f

    def unary(self, stack):
        if self.accept("~"):
            return Not(self.unary(stack))
        if not stack.layers:
            if self.peek("("):
                return self.parenthesised(stack)
            return Atom(self.ident())
        kind = stack.outer
        if kind is LayerKind.PROB:
            return self.prob_unary(stack)
        if self.peek("("):
            return self.parenthesised(stack)
        if self.peek("{"):
            return BaseAtom(self.braced(stack))
        if kind is LayerKind.TEMPORAL:
            if self.accept("X"):
                return Next(self.unary(stack))
            raise self.error("expected a temporal formula")
        if self.accept("nom"):
            return Nominal(self.ident())
        if self.accept("@"):
            name = self.ident()
            return At(name, self.unary(stack))
        if self.accept("<"):
            lam = self.ident()
            self.expect(">")
            return Diamond(lam, self.unary(stack))
        if self.accept("["):
            lam = self.ident()
            self.expect("]")
            return box(lam, self.unary(stack))
        if self.accept("E"):
            var = self.ident()
            self.expect(".")
            return Exists(var, self.formula(stack))
        raise self.error("expected a hybrid formula")

    def prob_unary(self, stack):
        if self.peek("("):
            mark = self.i
            try:
                return self.comparison(stack)
            except ParseError:
                self.i = mark
            return self.parenthesised(stack)
        return self.comparison(stack)

    def comparison(self, stack):
        left = self.term(stack)
        self.expect("<")
        return Less(left, self.term(stack))

    def term(self, stack):
        left = self.product(stack)
        while self.accept("+"):
            left = Add(left, self.product(stack))
        return left

    def product(self, stack):
        left = self.term_atom(stack)
        while self.accept("*"):
            left = Mul(left, self.term_atom(stack))
        return left

    def term_atom(self, stack):
        kind, tok, _ = self.tokens[self.i]
        if kind == "num":
            self.i += 1
            return Const(parse_number(tok))
        if self.accept("Int"):
            return Integral(self.braced(stack))
        if self.accept("("):
            t = self.term(stack)
            self.expect(")")
            return t
        raise self.error("expected a term")


def parse_formula(text: str, stack: LogicStack | str):
    """Parse ``text`` as a sentence of ``stack``; raises :class:`ParseError`."""
    if isinstance(stack, str):
        stack = LogicStack.parse(stack)
    p = _Parser(text)
    f = p.formula(stack)
    if p.peek():
        raise p.error("unexpected trailing input")
    return f


def parse_term(text: str, stack: LogicStack | str):
    if isinstance(stack, str):
        stack = LogicStack.parse(stack)
    p = _Parser(text)
    t = p.term(stack)
    if p.peek():
        raise p.error("unexpected trailing input")
    return t


# printing


def format_number(q: Fraction) -> str:
    q = Fraction(q)
    den = q.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return f"{q.numerator}/{q.denominator}"
    places = max(twos, fives)
    if places == 0:
        return str(q.numerator)
    scaled = abs(q.numerator) * 10**places // q.denominator
    digits = str(scaled).rjust(places + 1, "0")
    sign = "-" if q < 0 else ""
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


def _wrap(text: str, level: int, open_right: bool, need: int, closed: bool) -> str:
    if level < need or (open_right and closed):
        return f"({text})"
    return text


def _binary(op: str, level: int, right_assoc: bool, left, right):
    lt, ll, lo = _show(left)
    rt, rl, ro = _show(right)
    lt = _wrap(lt, ll, lo, level + 1 if right_assoc else level, True)
    rt_wrapped = _wrap(rt, rl, False, level if right_assoc else level + 1, False)
    ro = ro and rt_wrapped == rt
    return f"{lt} {op} {rt_wrapped}", level, ro


def _prefix(head: str, arg, sep: str = " "):
    text, level, open_right = _show(arg)
    if level < PREFIX:
        return f"{head}{sep}({text})", PREFIX, False
    return f"{head}{sep}{text}", PREFIX, open_right


def _show(rho) -> tuple[str, int, bool]:
    """Text, binding level and whether the text ends in an open ``E x .`` scope."""
    if isinstance(rho, Atom):
        return rho.name, PREFIX, False
    if isinstance(rho, BaseAtom):
        return "{" + show(rho.sentence) + "}", PREFIX, False
    if isinstance(rho, Nominal):
        return f"nom {rho.name}", PREFIX, False
    if isinstance(rho, Not):
        a = rho.arg
        if isinstance(a, Diamond) and isinstance(a.arg, Not):
            return _prefix(f"[{a.modality}]", a.arg.arg)
        if isinstance(a, And) and isinstance(a.right, Not):
            if isinstance(a.left, Not):
                return _binary("|", OR, False, a.left.arg, a.right.arg)
            return _binary("->", IMP, True, a.left, a.right.arg)
        return _prefix("~", a, "")
    if isinstance(rho, And):
        return _binary("&", AND, False, rho.left, rho.right)
    if isinstance(rho, Until):
        return _binary("U", UNTIL, True, rho.left, rho.right)
    if isinstance(rho, Next):
        return _prefix("X", rho.arg)
    if isinstance(rho, At):
        return _prefix(f"@ {rho.nominal}", rho.arg)
    if isinstance(rho, Diamond):
        return _prefix(f"<{rho.modality}>", rho.arg)
    if isinstance(rho, Exists):
        return f"E {rho.var} . {show(rho.arg)}", PREFIX, True
    if isinstance(rho, Less):
        return f"{show_term(rho.left)} < {show_term(rho.right)}", PREFIX, False
    raise TypeError(f"cannot print {rho!r}")


def show(rho) -> str:
    return _show(rho)[0]


def _term(t) -> tuple[str, int]:
    if isinstance(t, Const):
        return format_number(t.value), 3
    if isinstance(t, Integral):
        return "Int{" + show(t.sentence) + "}", 3
    if isinstance(t, (Add, Mul)):
        op, level = ("+", 1) if isinstance(t, Add) else ("*", 2)
        lt, ll = _term(t.left)
        rt, rl = _term(t.right)
        if ll < level:
            lt = f"({lt})"
        if rl <= level:
            rt = f"({rt})"
        return f"{lt} {op} {rt}", level
    raise TypeError(f"cannot print term {t!r}")


def show_term(t) -> str:
    return _term(t)[0]
