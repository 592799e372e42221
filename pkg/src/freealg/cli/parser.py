"""Tokenizer and precedence-climbing parser for polynomial and bracket expressions.

Grammar (lowest to highest binding)::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/' | <juxtaposition>) unary)*
    unary   := ('-' | '+') unary | power
    power   := atom ('^' INT)?
    atom    := INT | NAME | '(' expr ')' | '[' expr ',' expr ']'

Division is only allowed by a scalar.  Brackets expand eagerly to
``ab - ba`` when evaluated; the tree is kept on the AST for display.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from ..exactalg import QQ, Field, NcPoly, default_name
from ..freelie import bracket

TOKEN_RE = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z][A-Za-z0-9_]*)|(?P<op>[-+*/^\[\](),]))")


class ParseError(ValueError):
    """Syntax or evaluation error with a source position."""

    def __init__(self, message: str, text: str = "", pos: int = 0):
        self.text = text
        self.pos = pos
        self.line = text.count("\n", 0, pos) + 1
        self.column = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{message} at line {self.line}, column {self.column}")


@dataclass(frozen=True)
class Token:
    kind: str  # "num", "name", "op", "end"
    text: str
    pos: int


def tokenize(text: str) -> List[Token]:
    out = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        out.append(Token(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    out.append(Token("end", "", len(text)))
    return out


# -- AST ---------------------------------------------------------------------

@dataclass(frozen=True)
class ExprAst:
    """Expression node.

    ``op`` is one of ``num``, ``name``, ``neg``, ``add``, ``sub``, ``mul``,
    ``div``, ``pow``, ``bracket``; ``span`` is ``(start, end)`` in the source.
    """

    op: str
    args: Tuple = ()
    value: object = None
    span: Tuple[int, int] = (0, 0)

    def names(self) -> List[str]:
        if self.op == "name":
            return [self.value]
        out = []
        for a in self.args:
            out.extend(a.names())
        return out

    def has_bracket(self) -> bool:
        return self.op == "bracket" or any(a.has_bracket() for a in self.args)

    def to_text(self) -> str:
        """Render with explicit brackets kept (the ``--keep-lie`` display)."""
        return _render(self, 0)


_PREC = {"add": 1, "sub": 1, "neg": 2, "mul": 3, "div": 3, "pow": 4}


def _render(node: ExprAst, outer: int) -> str:
    op = node.op
    if op == "num":
        return str(node.value)
    if op == "name":
        return node.value
    if op == "bracket":
        return f"[{_render(node.args[0], 0)},{_render(node.args[1], 0)}]"
    prec = _PREC[op]
    if op == "neg":
        s = "-" + _render(node.args[0], prec + 1)
    elif op == "pow":
        s = f"{_render(node.args[0], prec + 1)}^{node.value}"
    else:
        sym = {"add": " + ", "sub": " - ", "mul": "*", "div": "/"}[op]
        s = _render(node.args[0], prec) + sym + _render(node.args[1], prec + 1)
    return f"({s})" if prec < outer else s


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect(self, text: str) -> Token:
        if self.tok.text != text or self.tok.kind != "op":
            found = self.tok.text or "end of input"
            raise ParseError(f"expected {text!r}, found {found!r}", self.text, self.tok.pos)
        return self.advance()

    def parse(self) -> ExprAst:
        node = self.expr()
        if self.tok.kind != "end":
            raise ParseError(f"unexpected {self.tok.text!r}", self.text, self.tok.pos)
        return node

    def expr(self) -> ExprAst:
        node = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = "add" if self.advance().text == "+" else "sub"
            rhs = self.term()
            node = ExprAst(op, (node, rhs), span=(node.span[0], rhs.span[1]))
        return node

    def _starts_atom(self) -> bool:
        t = self.tok
        return t.kind in ("num", "name") or (t.kind == "op" and t.text in "([")

    def term(self) -> ExprAst:
        node = self.unary()
        while True:
            t = self.tok
            if t.kind == "op" and t.text in "*/":
                self.advance()
                op = "mul" if t.text == "*" else "div"
            elif self._starts_atom():
                op = "mul"
            else:
                return node
            rhs = self.unary()
            node = ExprAst(op, (node, rhs), span=(node.span[0], rhs.span[1]))

    def unary(self) -> ExprAst:
        t = self.tok
        if t.kind == "op" and t.text in "+-":
            self.advance()
            inner = self.unary()
            if t.text == "+":
                return inner
            return ExprAst("neg", (inner,), span=(t.pos, inner.span[1]))
        return self.power()

    def power(self) -> ExprAst:
        base = self.atom()
        if self.tok.kind == "op" and self.tok.text == "^":
            self.advance()
            t = self.tok
            if t.kind != "num":
                raise ParseError("exponent must be a non-negative integer", self.text, t.pos)
            self.advance()
            return ExprAst("pow", (base,), int(t.text), span=(base.span[0], t.pos + len(t.text)))
        return base

    def atom(self) -> ExprAst:
        t = self.tok
        if t.kind == "num":
            self.advance()
            return ExprAst("num", (), int(t.text), span=(t.pos, t.pos + len(t.text)))
        if t.kind == "name":
            self.advance()
            return ExprAst("name", (), t.text, span=(t.pos, t.pos + len(t.text)))
        if t.kind == "op" and t.text == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        if t.kind == "op" and t.text == "[":
            self.advance()
            a = self.expr()
            self.expect(",")
            b = self.expr()
            end = self.expect("]")
            return ExprAst("bracket", (a, b), span=(t.pos, end.pos + 1))
        found = t.text or "end of input"
        raise ParseError(f"expected an operand, found {found!r}", self.text, t.pos)


def parse_ast(text: str) -> ExprAst:
    return _Parser(text).parse()


# -- evaluation --------------------------------------------------------------

def _natural_key(name: str):
    return [int(part) if part.isdigit() else part for part in re.split(r"(\d+)", name)]


class Alphabet:
    """Bidirectional map between generator names and indices."""

    def __init__(self, names: Sequence[str], strict: bool = False):
        if len(set(names)) != len(names):
            raise ValueError("generator names must be distinct")
        self.names = list(names)
        self.index = {n: i for i, n in enumerate(self.names)}
        self.strict = strict

    @classmethod
    def infer(cls, texts: Sequence[str]) -> Alphabet:
        """Names in natural order: the default names ``x, y, z`` first, then the rest."""
        seen = set()
        for t in texts:
            seen.update(parse_ast(t).names())
        defaults = [default_name(i) for i in range(3)]
        ordered = [n for n in defaults if n in seen]
        ordered += sorted(seen - set(defaults), key=_natural_key)
        return cls(ordered)

    def lookup(self, name: str, text: str = "", pos: int = 0) -> int:
        if name not in self.index:
            if self.strict:
                raise ParseError(f"unknown generator {name!r}", text, pos)
            self.index[name] = len(self.names)
            self.names.append(name)
        return self.index[name]


def evaluate(node: ExprAst, alphabet: Alphabet, field: Field = QQ, text: str = "") -> NcPoly:
    """Expand an AST into a polynomial over ``field``."""
    op = node.op
    if op == "num":
        return NcPoly.constant(node.value, field)
    if op == "name":
        return NcPoly.gen(alphabet.lookup(node.value, text, node.span[0]), field)
    if op == "neg":
        return -evaluate(node.args[0], alphabet, field, text)
    if op == "pow":
        return evaluate(node.args[0], alphabet, field, text) ** node.value
    a = evaluate(node.args[0], alphabet, field, text)
    b = evaluate(node.args[1], alphabet, field, text)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "bracket":
        if field.characteristic:
            return a * b - b * a
        return bracket(a, b)
    # division by a scalar
    if b.letters:
        raise ParseError("division is only allowed by a scalar", text, node.args[1].span[0])
    c = b.coeff(())
    if not c:
        raise ParseError("division by zero", text, node.args[1].span[0])
    return a.scale(field.one / c)


def parse(text: str, alphabet: Optional[Alphabet] = None, field: Field = QQ) -> NcPoly:
    """Parse ``text`` into a polynomial (names resolved through ``alphabet``)."""
    if alphabet is None:
        alphabet = Alphabet.infer([text])
    return evaluate(parse_ast(text), alphabet, field, text)


def format_poly(p: NcPoly, alphabet: Optional[Alphabet] = None) -> str:
    names = alphabet.names if alphabet is not None else None
    if names is not None and p.letters and max(p.letters) >= len(names):
        names = list(names) + [default_name(i) for i in range(len(names), max(p.letters) + 1)]
    return p.format(names)


def split_top_level(text: str, sep: str = ",") -> List[str]:
    """Split on ``sep`` outside brackets and parentheses."""
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == sep and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    parts.append(text[start:])
    return [p.strip() for p in parts if p.strip()]
