"""Expression grammar shared by every element syntax in the package.

    expr    := ['+'|'-'] term (('+'|'-') term)*
    term    := factor (('*'|'/') factor)*
    factor  := atom ['^' ['-'] INT]
    atom    := INT | NAME | '(' expr ')'

Names are looked up in a caller-supplied environment (``g``, ``pi``, ``t``,
``T`` ...).  Integer literals become ``k * one``.  Evaluation uses the
ordinary Python operators of the target type, so the same parser builds
finite-field elements, local-field elements, coefficient-ring elements
and twisted polynomials.  Products are evaluated left to right, which
matters for twisted polynomials.
"""

from __future__ import annotations

import re

from .errors import ParseError

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def tokenize(text: str):
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # pragma: no cover - the pattern always matches non-space
            raise ParseError("unexpected input", text, pos + 1)
        col = m.start(m.lastindex) + 1
        if m.group(1) is not None:
            tokens.append(("int", int(m.group(1)), col))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), col))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", text, col)
            tokens.append(("op", ch, col))
        pos = m.end()
    tokens.append(("end", None, len(text) + 1))
    return tokens


class _Parser:
    def __init__(self, text, env, one):
        self.text = text
        self.env = env
        self.one = one
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def _is_op(self, chars):
        kind, val, _ = self.peek()
        return kind == "op" and val in chars

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.text, tok[2])

    def parse(self):
        if self.peek()[0] == "end":
            self.fail("empty expression")
        value = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"unexpected token {self.peek()[1]!r}")
        return value

    def expr(self):
        sign = None
        if self._is_op("+-"):
            sign = self.take()[1]
        value = self.term()
        if sign == "-":
            value = -value
        while self._is_op("+-"):
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while self._is_op("*/"):
            op = self.take()
            rhs = self.factor()
            if op[1] == "*":
                value = value * rhs
            else:
                try:
                    value = value / rhs
                except ZeroDivisionError:
                    self.fail("division by zero", op)
        return value

    def factor(self):
        value = self.atom()
        if self._is_op("^"):
            self.take()
            negative = False
            if self._is_op("-"):
                self.take()
                negative = True
            tok = self.take()
            if tok[0] != "int":
                self.fail("expected an integer exponent", tok)
            k = -tok[1] if negative else tok[1]
            try:
                value = value ** k
            except ZeroDivisionError:
                self.fail("negative power of zero", tok)
            except TypeError:
                self.fail("exponent not supported for this value", tok)
        return value

    def atom(self):
        tok = self.take()
        kind, val, _ = tok
        if kind == "int":
            return self.one * val
        if kind == "name":
            if val not in self.env:
                self.fail(f"unknown symbol {val!r}", tok)
            return self.env[val]
        if kind == "op" and val == "(":
            inner = self.expr()
            if self.take()[1] != ")":
                self.fail("expected ')'")
            return inner
        self.fail(f"unexpected token {val!r}", tok)


def parse_expression(text: str, env: dict, one):
    """Evaluate ``text`` with names bound by ``env``; ``one`` is the unit."""
    return _Parser(text, env, one).parse()


def wrap(s: str) -> str:
    """Parenthesise a printed coefficient when it is a sum or a fraction."""
    body = s[1:] if s.startswith("-") else s
    if any(ch in body for ch in "+-/") or " " in body:
        return f"({s})"
    return s
