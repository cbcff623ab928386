# cli/parser.py - Recursive-descent parser for element expressions
#
# expr   := term (("+" | "-") term)*
# term   := factor ("*" factor)*
# factor := int | "T(" int "," int ")" | "V^" int "(" expr ")" | "dV^" int "(" expr ")"
#         | "F(" expr ")" | "R(" expr ")" | "p_(" expr ")" | "d(" expr ")" | "dlogt" | "(" expr ")"
import logging
import re
from dataclasses import dataclass

from core.exceptions import DegreeError, ParseError, ValidationError
from drw_forms.utils import FormArithmetic, FormConstructors, FormOperators

logger = logging.getLogger(__name__)

TOKEN_REGEXP = re.compile(r"""
    (?P<space>\s+)
  | (?P<int>\d+)
  | (?P<dlogt>dlogt)
  | (?P<dv>dV\^)
  | (?P<v>V\^)
  | (?P<pline>p_\()
  | (?P<call>[TFRd]\()
  | (?P<op>[-+*(),])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(source):
    tokens = []
    position = 0
    line, line_start = 1, 0
    while position < len(source):
        match = TOKEN_REGEXP.match(source, position)
        if match is None:
            raise ParseError(f"Unexpected character {source[position]!r}", line, position - line_start + 1)
        kind, text = match.lastgroup, match.group()
        if kind == 'space':
            for offset, char in enumerate(text):
                if char == '\n':
                    line, line_start = line + 1, position + offset + 1
        else:
            tokens.append(Token(kind, text, line, position - line_start + 1))
        position = match.end()
    tokens.append(Token('end', '', line, position - line_start + 1))
    return tokens


# Syntax tree

@dataclass(frozen=True)
class Node:
    line: int
    column: int


@dataclass(frozen=True)
class Integer(Node):
    value: int


@dataclass(frozen=True)
class Teichmuller(Node):
    coeff: int
    exponent: int


@dataclass(frozen=True)
class DlogT(Node):
    pass


@dataclass(frozen=True)
class Apply(Node):
    """One of V^k, dV^k, F, R, p_ and d applied to a subexpression"""
    op: str
    power: int
    arg: Node


@dataclass(frozen=True)
class BinOp(Node):
    op: str
    left: Node
    right: Node


class ElementParser:
    """Recursive descent over the token list"""

    def __init__(self, source):
        self.tokens = tokenize(source)
        self.index = 0

    @property
    def current(self):
        return self.tokens[self.index]

    def _advance(self):
        token = self.current
        self.index += 1
        return token

    def _error(self, message, token=None):
        token = token or self.current
        return ParseError(message, token.line, token.column)

    def _expect(self, text):
        if self.current.text != text:
            found = self.current.text or 'end of input'
            raise self._error(f"Expected {text!r}, found {found!r}")
        return self._advance()

    def _integer(self, signed=False):
        negative = False
        if signed and self.current.text == '-':
            self._advance()
            negative = True
        if self.current.kind != 'int':
            raise self._error("Expected an integer")
        value = int(self._advance().text)
        return -value if negative else value

    def parse(self):
        node = self.expr()
        if self.current.kind != 'end':
            raise self._error(f"Unexpected {self.current.text!r}")
        return node

    def expr(self):
        node = self.term()
        while self.current.text in ('+', '-'):
            token = self._advance()
            node = BinOp(token.line, token.column, token.text, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.current.text == '*':
            token = self._advance()
            node = BinOp(token.line, token.column, '*', node, self.factor())
        return node

    def _wrapped(self):
        node = self.expr()
        self._expect(')')
        return node

    def factor(self):
        token = self.current
        if token.kind == 'int':
            return Integer(token.line, token.column, self._integer())
        if token.kind == 'dlogt':
            self._advance()
            return DlogT(token.line, token.column)
        if token.kind in ('v', 'dv'):
            self._advance()
            power = self._integer()
            self._expect('(')
            return Apply(token.line, token.column, 'V' if token.kind == 'v' else 'dV', power, self._wrapped())
        if token.kind == 'pline':
            self._advance()
            return Apply(token.line, token.column, 'p_', 1, self._wrapped())
        if token.kind == 'call':
            self._advance()
            name = token.text[0]
            if name == 'T':
                coeff = self._integer(signed=True)
                self._expect(',')
                exponent = self._integer(signed=True)
                self._expect(')')
                return Teichmuller(token.line, token.column, coeff, exponent)
            return Apply(token.line, token.column, name, 1, self._wrapped())
        if token.text == '(':
            self._advance()
            return self._wrapped()
        raise self._error(f"Unexpected {token.text or 'end of input'!r}")


def parse(source):
    """Source text -> syntax tree"""
    return ElementParser(source).parse()


def degree_of(node):
    """Static degree check: products of 1-forms, d of 1-forms and mixed sums are rejected"""
    where = f"at line {node.line}, column {node.column}"
    if isinstance(node, (Integer, Teichmuller)):
        return 0
    if isinstance(node, DlogT):
        return 1
    if isinstance(node, Apply):
        inner = degree_of(node.arg)
        if node.op in ('d', 'dV'):
            if inner != 0:
                raise DegreeError(f"{node.op} of a 1-form has degree 2 {where}")
            return 1
        return inner
    left, right = degree_of(node.left), degree_of(node.right)
    if node.op == '*':
        if left + right > 1:
            raise DegreeError(f"Product of two 1-forms has degree 2 {where}")
        return left + right
    if left != right:
        raise DegreeError(f"Cannot {'add' if node.op == '+' else 'subtract'} forms of degrees {left} and {right} {where}")
    return left


def _level(ctx, level, node):
    if level < 1:
        raise ValidationError(f"{node.op} at line {node.line}, column {node.column} needs a level above {ctx.n}")
    return ctx.at_level(level)


def evaluate(node, ctx):
    """Normal form of an expression at the level of ctx; operator arguments live at shifted levels"""
    if isinstance(node, Integer):
        return FormConstructors.constant(ctx, node.value)
    if isinstance(node, Teichmuller):
        if node.coeff % ctx.p == 0:
            return FormConstructors.constant(ctx, 0)
        return FormConstructors.teich_form(ctx, node.coeff % ctx.p, node.exponent)
    if isinstance(node, DlogT):
        return FormConstructors.dlog_t(ctx)
    if isinstance(node, Apply):
        if node.op in ('V', 'dV'):
            inner = evaluate(node.arg, _level(ctx, ctx.n - node.power, node))
            lifted = FormOperators.iterate(FormOperators.verschiebung, inner, node.power)
            return FormOperators.d(lifted) if node.op == 'dV' else lifted
        if node.op == 'F':
            return FormOperators.frobenius(evaluate(node.arg, ctx.at_level(ctx.n + 1)))
        if node.op == 'R':
            return FormOperators.restriction(evaluate(node.arg, ctx.at_level(ctx.n + 1)))
        if node.op == 'p_':
            return FormOperators.pline(evaluate(node.arg, _level(ctx, ctx.n - 1, node)))
        return FormOperators.d(evaluate(node.arg, ctx))
    left, right = evaluate(node.left, ctx), evaluate(node.right, ctx)
    if node.op == '+':
        return FormArithmetic.add(left, right)
    if node.op == '-':
        return FormArithmetic.sub(left, right)
    return FormArithmetic.mul(left, right)


def unparse(node):
    """Syntax tree -> source text accepted by parse"""
    if isinstance(node, Integer):
        return str(node.value)
    if isinstance(node, Teichmuller):
        return f"T({node.coeff},{node.exponent})"
    if isinstance(node, DlogT):
        return 'dlogt'
    if isinstance(node, Apply):
        prefix = f"{node.op}^{node.power}" if node.op in ('V', 'dV') else node.op
        return f"{prefix}({unparse(node.arg)})"
    right = unparse(node.right)
    if isinstance(node.right, BinOp) and (node.op == '*' or node.right.op != '*'):
        right = f"({right})"
    left = unparse(node.left)
    if node.op == '*' and isinstance(node.left, BinOp) and node.left.op != '*':
        left = f"({left})"
    return f"{left} {node.op} {right}"


def parse_element(source, ctx):
    """Parse, degree-check and evaluate an element expression"""
    node = parse(source)
    degree_of(node)
    element = evaluate(node, ctx)
    logger.debug(f"Parsed {source!r} at {ctx}")
    return element
