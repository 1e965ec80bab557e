"""A small arithmetic-expression language for user-supplied metrics.

Supports ``+ - * / ^`` (with ``^`` right-associative), unary minus,
parenthesized grouping, numeric literals, the constant ``pi``, the
functions ``sin cos exp sqrt log``, and free variables (typically
``x1 .. xn`` for chart coordinates).

Expressions evaluate over anything with arithmetic dunders -- floats,
numpy arrays, or jets -- so a parsed metric entry can be differentiated
by the same hyper-dual machinery as the built-in ones.
"""

from __future__ import annotations

import math
import re

from . import jets as J

__all__ = ["parse_expression", "Expression"]

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+\.\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?|\d+(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>\*\*|[-+*/^(),]))"
)

_FUNCTIONS = {
    "sin": J.sin,
    "cos": J.cos,
    "exp": J.exp,
    "sqrt": J.sqrt,
    "log": J.log,
}

_CONSTANTS = {"pi": math.pi}


def _tokenize(text):
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            rest = text[pos:].strip()
            if not rest:
                break
            raise ValueError("cannot tokenize expression at %r" % rest[:20])
        pos = m.end()
        if m.lastgroup == "num":
            tokens.append(("num", float(m.group("num"))))
        elif m.lastgroup == "name":
            tokens.append(("name", m.group("name")))
        else:
            op = m.group("op")
            tokens.append(("op", "^" if op == "**" else op))
    tokens.append(("end", None))
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, op):
        kind, val = self.next()
        if kind != "op" or val != op:
            raise ValueError("expected %r, found %r" % (op, val))

    def parse(self):
        node = self.expr()
        kind, val = self.peek()
        if kind != "end":
            raise ValueError("unexpected trailing input near %r" % (val,))
        return node

    def expr(self):
        node = self.term()
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                rhs = self.term()
                node = ("add" if val == "+" else "sub", node, rhs)
            else:
                return node

    def term(self):
        node = self.unary()
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "*/":
                self.next()
                rhs = self.unary()
                node = ("mul" if val == "*" else "div", node, rhs)
            else:
                return node

    def unary(self):
        # exponentiation binds tighter than unary minus: -x^2 == -(x^2)
        kind, val = self.peek()
        if kind == "op" and val == "-":
            self.next()
            return ("neg", self.unary())
        if kind == "op" and val == "+":
            self.next()
            return self.unary()
        return self.power()

    def power(self):
        node = self.atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.next()
            return ("pow", node, self.unary())  # right-associative, signed exponents
        return node

    def atom(self):
        kind, val = self.next()
        if kind == "num":
            return ("const", val)
        if kind == "name":
            k2, v2 = self.peek()
            if k2 == "op" and v2 == "(":
                if val not in _FUNCTIONS:
                    raise ValueError("unknown function %r" % val)
                self.next()
                args = [self.expr()]
                while True:
                    k3, v3 = self.peek()
                    if k3 == "op" and v3 == ",":
                        self.next()
                        args.append(self.expr())
                    else:
                        break
                self.expect(")")
                if len(args) != 1:
                    raise ValueError("function %r takes one argument" % val)
                return ("call", val, args[0])
            if val in _CONSTANTS:
                return ("const", _CONSTANTS[val])
            return ("var", val)
        if kind == "op" and val == "(":
            node = self.expr()
            self.expect(")")
            return node
        raise ValueError("unexpected token %r" % (val,))


def _eval(node, env):
    tag = node[0]
    if tag == "const":
        return node[1]
    if tag == "var":
        try:
            return env[node[1]]
        except KeyError:
            raise ValueError("unbound variable %r" % node[1]) from None
    if tag == "neg":
        return -_eval(node[1], env)
    if tag == "call":
        return _FUNCTIONS[node[1]](_eval(node[2], env))
    a = _eval(node[1], env)
    b = _eval(node[2], env)
    if tag == "add":
        return a + b
    if tag == "sub":
        return a - b
    if tag == "mul":
        return a * b
    if tag == "div":
        return a / b
    if tag == "pow":
        if isinstance(b, float) and b == int(b):
            return a ** int(b)
        return a**b
    raise AssertionError("unreachable node %r" % tag)


def _free_variables(node, out):
    if node[0] == "var":
        out.add(node[1])
    elif node[0] in ("neg",):
        _free_variables(node[1], out)
    elif node[0] == "call":
        _free_variables(node[2], out)
    elif node[0] in ("add", "sub", "mul", "div", "pow"):
        _free_variables(node[1], out)
        _free_variables(node[2], out)


class Expression:
    """A parsed expression; call it with an environment dict."""

    def __init__(self, text):
        self.text = text
        self._ast = _Parser(_tokenize(text)).parse()
        vs = set()
        _free_variables(self._ast, vs)
        self.variables = frozenset(vs)

    def __call__(self, env):
        return _eval(self._ast, env)

    def __repr__(self):
        return "Expression(%r)" % self.text


def parse_expression(text):
    return Expression(text)
