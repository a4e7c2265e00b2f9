"""Recursive-descent parser for operator expressions.

Grammar::

    expr   := term (("+" | "-") term)*
    term   := factor ("*" factor)*
    factor := atom ("^" uint)?
    atom   := number | "i" | "Id" | gen "(" uint ")" | "(" expr ")" | "-" atom
    gen    := Sx | Sy | Sz | Sp | Sm | X | Y | Z

Subsystem indices are 1-based. Parentheses do not produce AST nodes, so
``pretty`` may add or drop them freely as long as the tree is preserved.
"""

import math
import re
from dataclasses import dataclass

from ..errors import ParseError

GENERATORS = ("Sx", "Sy", "Sz", "Sp", "Sm", "X", "Y", "Z")
PAULI = ("X", "Y", "Z")


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class ImagUnit:
    pass


@dataclass(frozen=True)
class Identity:
    pass


@dataclass(frozen=True)
class Gen:
    name: str
    index: int


@dataclass(frozen=True)
class Neg:
    operand: object


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int


_TOKEN = re.compile(
    r"(?P<ws>\s+)"
    r"|(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<sym>[-+*^()])"
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text):
    tokens = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = match.lastgroup
        if kind == "ws":
            chunk = match.group()
            newlines = chunk.count("\n")
            if newlines:
                line += newlines
                line_start = pos + chunk.rindex("\n") + 1
        else:
            tokens.append(Token(kind, match.group(), line, pos - line_start + 1))
        pos = match.end()
    tokens.append(Token("end", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text, n_subsystems=None, dims=None):
        self.tokens = tokenize(text)
        self.pos = 0
        self.n_subsystems = n_subsystems
        self.dims = dims

    @property
    def tok(self):
        return self.tokens[self.pos]

    def advance(self):
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def error(self, message, tok=None):
        tok = tok or self.tok
        return ParseError(message, tok.line, tok.column)

    def expect(self, text):
        if self.tok.text != text or self.tok.kind == "end":
            found = "end of input" if self.tok.kind == "end" else repr(self.tok.text)
            raise self.error(f"expected {text!r}, found {found}")
        return self.advance()

    def uint(self, what):
        tok = self.tok
        if tok.kind != "num" or not tok.text.isdigit():
            found = "end of input" if tok.kind == "end" else repr(tok.text)
            raise self.error(f"expected unsigned integer {what}, found {found}")
        self.advance()
        return int(tok.text), tok

    def parse(self):
        node = self.expr()
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.text!r} after expression")
        return node

    def expr(self):
        node = self.term()
        while self.tok.text in ("+", "-") and self.tok.kind == "sym":
            op = self.advance().text
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.tok.text == "*":
            self.advance()
            node = BinOp("*", node, self.factor())
        return node

    def factor(self):
        node = self.atom()
        if self.tok.text == "^":
            self.advance()
            exponent, _ = self.uint("exponent")
            node = Pow(node, exponent)
        return node

    def atom(self):
        tok = self.tok
        if tok.kind == "num":
            self.advance()
            value = float(tok.text)
            if not math.isfinite(value):
                raise self.error(f"number {tok.text!r} is not finite", tok)
            return Num(value)
        if tok.kind == "ident":
            self.advance()
            if tok.text == "i":
                return ImagUnit()
            if tok.text == "Id":
                return Identity()
            if tok.text in GENERATORS:
                self.expect("(")
                index, idx_tok = self.uint("subsystem index")
                self.check_index(tok.text, index, idx_tok)
                self.expect(")")
                return Gen(tok.text, index)
            raise self.error(f"unknown identifier {tok.text!r}", tok)
        if tok.text == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        if tok.text == "-":
            self.advance()
            return Neg(self.atom())
        found = "end of input" if tok.kind == "end" else repr(tok.text)
        raise self.error(f"expected an operand, found {found}")

    def check_index(self, name, index, tok):
        if self.n_subsystems is None:
            return
        if not 1 <= index <= self.n_subsystems:
            raise self.error(
                f"subsystem index {index} out of range 1..{self.n_subsystems}", tok
            )
        if name in PAULI and self.dims is not None and self.dims[index - 1] != 2:
            raise self.error(
                f"Pauli alias {name} needs a dim-2 subsystem, subsystem {index} has dim "
                f"{self.dims[index - 1]}",
                tok,
            )


def parse_operator_expr(text, layout=None):
    """Parse ``text`` into an AST, index-checking against ``layout`` if given."""
    if layout is None:
        return _Parser(text).parse()
    return _Parser(text, len(layout.subsystems), layout.dims).parse()


def _fmt_num(value):
    if value == int(value) and abs(value) < 1e15:
        return str(int(value))
    return repr(value)


def pretty(node):
    """Render an AST back to text that reparses to the same tree."""
    if isinstance(node, Num):
        return _fmt_num(node.value)
    if isinstance(node, ImagUnit):
        return "i"
    if isinstance(node, Identity):
        return "Id"
    if isinstance(node, Gen):
        return f"{node.name}({node.index})"
    if isinstance(node, Neg):
        return "-" + _atomic(node.operand)
    if isinstance(node, Pow):
        return f"{_atomic(node.base)}^{node.exponent}"
    if isinstance(node, BinOp):
        if node.op == "*":
            left = pretty(node.left) if _is_term(node.left) else f"({pretty(node.left)})"
            right = _factor(node.right)
            return f"{left}*{right}"
        right = pretty(node.right)
        if isinstance(node.right, BinOp) and node.right.op in "+-":
            right = f"({right})"
        return f"{pretty(node.left)} {node.op} {right}"
    raise TypeError(f"not an expression node: {node!r}")


def _is_term(node):
    return not (isinstance(node, BinOp) and node.op in "+-")


def _factor(node):
    return f"({pretty(node)})" if isinstance(node, BinOp) else pretty(node)


def _atomic(node):
    return f"({pretty(node)})" if isinstance(node, (BinOp, Pow)) else pretty(node)


def subsystems_of(node):
    """Set of 1-based subsystem indices referenced by generator leaves."""
    if isinstance(node, Gen):
        return {node.index}
    if isinstance(node, Neg):
        return subsystems_of(node.operand)
    if isinstance(node, Pow):
        return subsystems_of(node.base)
    if isinstance(node, BinOp):
        return subsystems_of(node.left) | subsystems_of(node.right)
    return set()
