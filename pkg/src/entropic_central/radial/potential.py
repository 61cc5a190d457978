"""Central potentials given as one-line arithmetic expressions in ``r``.

Grammar (``^`` binds tighter than unary minus and is right associative)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" unary)?
    atom   := NUMBER | "r" | FUNC "(" expr ("," expr)* ")" | "(" expr ")"
    FUNC   := exp | ln | sqrt | pow

Expressions compile to closures over numpy, so the result evaluates on
arrays of radii.
"""

from dataclasses import dataclass
import re

import numpy as np

from ..errors import ExpressionError

__all__ = ["PotentialSpec", "parse_expression", "parse_potential"]

_FUNCTIONS = {
    "exp": (1, np.exp),
    "ln": (1, np.log),
    "sqrt": (1, np.sqrt),
    "pow": (2, np.power),
}

_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*/^(),]))"
)


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            col = pos + len(text[pos:]) - len(text[pos:].lstrip()) + 1
            raise ExpressionError(f"unexpected character {text[col - 1]!r}", col)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start + 1))
        pos = m.end()
    tokens.append(("end", "", len(text) + 1))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, text, col = self.take()
        if text != value or kind not in ("op",):
            found = "end of input" if kind == "end" else repr(text)
            raise ExpressionError(f"expected {value!r}, found {found}", col)

    def parse(self):
        node = self.expr()
        kind, text, col = self.peek()
        if kind != "end":
            raise ExpressionError(f"unexpected {text!r} after complete expression", col)
        return node

    def expr(self):
        node = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            node = _binary(np.add if op == "+" else np.subtract, node, rhs)
        return node

    def term(self):
        node = self.unary()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.unary()
            node = _binary(np.multiply if op == "*" else np.divide, node, rhs)
        return node

    def unary(self):
        kind, text, _ = self.peek()
        if kind == "op" and text in ("+", "-"):
            self.take()
            inner = self.unary()
            return inner if text == "+" else (lambda r, f=inner: -f(r))
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            exponent = self.unary()
            return _binary(np.power, base, exponent)
        return base

    def atom(self):
        kind, text, col = self.take()
        if kind == "num":
            value = float(text)
            return lambda r, v=value: np.full(np.shape(r), v)
        if kind == "name":
            if text == "r":
                return lambda r: np.asarray(r, dtype=float)
            if text not in _FUNCTIONS:
                raise ExpressionError(f"unknown identifier {text!r}", col)
            arity, fn = _FUNCTIONS[text]
            self.expect("(")
            args = [self.expr()]
            while self.peek()[:2] == ("op", ","):
                self.take()
                args.append(self.expr())
            if len(args) != arity:
                raise ExpressionError(f"{text} takes {arity} argument(s), got {len(args)}", col)
            self.expect(")")
            return lambda r, fn=fn, args=args: fn(*(a(r) for a in args))
        if kind == "op" and text == "(":
            node = self.expr()
            self.expect(")")
            return node
        found = "end of input" if kind == "end" else repr(text)
        raise ExpressionError(f"expected a number, 'r', a function or '(', found {found}", col)


def _binary(fn, lhs, rhs):
    return lambda r: fn(lhs(r), rhs(r))


def parse_expression(text):
    """Compile ``text`` into a vectorized function of ``r``.

    Raises
    ------
    ExpressionError
        On any syntax error; ``exc.column`` is 1-based.
    """
    if not text or not text.strip():
        raise ExpressionError("empty expression", 1)
    node = _Parser(text).parse()

    def evaluate(r):
        with np.errstate(all="ignore"):
            return np.asarray(node(np.asarray(r, dtype=float)), dtype=float)

    return evaluate


@dataclass(frozen=True)
class PotentialSpec:
    """A central potential ``V_D(r)``.

    ``r_max`` is only a starting hint for the radial box; the solver grows
    or shrinks it until the wavefunction has decayed.
    """

    evaluator: object
    D: int = 3
    description: str = ""
    r_max: float = 40.0

    def __post_init__(self):
        if int(self.D) != self.D or self.D < 2:
            raise ValueError(f"D must be an integer >= 2, got {self.D!r}")
        if not self.r_max > 0:
            raise ValueError("r_max must be positive")

    def __call__(self, r):
        return self.evaluator(r)


def parse_potential(text, D=3, r_max=40.0):
    """``PotentialSpec`` from an expression such as ``"-1/r"`` or ``"0.5*r^2"``."""
    return PotentialSpec(parse_expression(text), D, text.strip(), r_max)
