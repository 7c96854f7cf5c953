"""Trigger-condition expressions for dialog nodes.

Grammar (whitespace insignificant between tokens)::

    expr  := or
    or    := and ("||" and)*
    and   := unary ("&&" unary)*
    unary := "!" unary | "(" expr ")" | prim
    prim  := "#" ident
           | "@" ident [":" ident]
           | "$" ident ("==" | "!=") quoted-string
           | "welcome" | "anything_else" | "true" | "false"

``&&`` binds tighter than ``||`` and ``!`` binds tighter than both.
Identifiers match ``[A-Za-z_][A-Za-z0-9_]*``; string literals are double
quoted and may not contain a double quote.
"""

from __future__ import annotations

import re
from dataclasses import dataclass


class ConditionError(ValueError):
    """Raised when a condition string cannot be parsed."""

    def __init__(self, message: str, expression: str, position: int):
        super().__init__(f"{message} at position {position} in {expression!r}")
        self.expression = expression
        self.position = position


@dataclass(frozen=True)
class IntentRef:
    name: str


@dataclass(frozen=True)
class EntityRef:
    name: str
    value: str | None = None


@dataclass(frozen=True)
class ContextCompare:
    variable: str
    op: str  # "==" or "!="
    value: str


@dataclass(frozen=True)
class Welcome:
    pass


@dataclass(frozen=True)
class AnythingElse:
    pass


@dataclass(frozen=True)
class BoolLit:
    value: bool


@dataclass(frozen=True)
class And:
    left: Condition
    right: Condition


@dataclass(frozen=True)
class Or:
    left: Condition
    right: Condition


@dataclass(frozen=True)
class Not:
    operand: Condition


Condition = (
    IntentRef | EntityRef | ContextCompare | Welcome | AnythingElse | BoolLit | And | Or | Not
)

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_KEYWORDS = {
    "welcome": Welcome(),
    "anything_else": AnythingElse(),
    "true": BoolLit(True),
    "false": BoolLit(False),
}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def fail(self, message: str) -> ConditionError:
        return ConditionError(message, self.text, self.pos)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, literal: str) -> bool:
        self.skip_ws()
        if self.text.startswith(literal, self.pos):
            self.pos += len(literal)
            return True
        return False

    def ident(self, what: str) -> str:
        self.skip_ws()
        m = _IDENT.match(self.text, self.pos)
        if not m:
            raise self.fail(f"expected {what}")
        self.pos = m.end()
        return m.group()

    def quoted(self) -> str:
        self.skip_ws()
        if self.peek() != '"':
            raise self.fail("expected quoted string")
        end = self.text.find('"', self.pos + 1)
        if end < 0:
            raise self.fail("unterminated string literal")
        value = self.text[self.pos + 1 : end]
        self.pos = end + 1
        return value

    def expr(self) -> Condition:
        node = self.and_expr()
        while self.take("||"):
            node = Or(node, self.and_expr())
        return node

    def and_expr(self) -> Condition:
        node = self.unary()
        while self.take("&&"):
            node = And(node, self.unary())
        return node

    def unary(self) -> Condition:
        if self.take("!"):
            return Not(self.unary())
        if self.take("("):
            node = self.expr()
            if not self.take(")"):
                raise self.fail("expected ')'")
            return node
        return self.prim()

    def prim(self) -> Condition:
        self.skip_ws()
        ch = self.peek()
        if ch == "#":
            self.pos += 1
            return IntentRef(self.ident("intent name after '#'"))
        if ch == "@":
            self.pos += 1
            name = self.ident("entity name after '@'")
            if self.take(":"):
                return EntityRef(name, self.ident("entity value after ':'"))
            return EntityRef(name)
        if ch == "$":
            self.pos += 1
            variable = self.ident("variable name after '$'")
            if self.take("=="):
                op = "=="
            elif self.take("!="):
                op = "!="
            else:
                raise self.fail("expected '==' or '!=' after context variable")
            return ContextCompare(variable, op, self.quoted())
        m = _IDENT.match(self.text, self.pos)
        if m and m.group() in _KEYWORDS:
            self.pos = m.end()
            return _KEYWORDS[m.group()]
        raise self.fail("expected a condition term")


def parse_condition(text: str) -> Condition:
    """Parse a condition string into its AST, or raise ConditionError."""
    parser = _Parser(text)
    node = parser.expr()
    parser.skip_ws()
    if parser.pos != len(text):
        raise parser.fail("unexpected trailing input")
    return node


# Higher value = binds tighter.
_PRECEDENCE = {Or: 1, And: 2, Not: 3}


def _level(node: Condition) -> int:
    return _PRECEDENCE.get(type(node), 4)


def condition_to_source(node: Condition) -> str:
    """Render an AST back to surface syntax; parse(render(ast)) == ast."""
    if isinstance(node, IntentRef):
        return f"#{node.name}"
    if isinstance(node, EntityRef):
        return f"@{node.name}:{node.value}" if node.value else f"@{node.name}"
    if isinstance(node, ContextCompare):
        return f'${node.variable} {node.op} "{node.value}"'
    if isinstance(node, Welcome):
        return "welcome"
    if isinstance(node, AnythingElse):
        return "anything_else"
    if isinstance(node, BoolLit):
        return "true" if node.value else "false"
    if isinstance(node, Not):
        return f"!{_wrap(node.operand, _level(node))}"
    if isinstance(node, (And, Or)):
        op = "&&" if isinstance(node, And) else "||"
        # Left side may share this level (left associativity); the right
        # side must bind tighter or be parenthesized to round-trip.
        left = _wrap(node.left, _level(node), allow_equal=True)
        right = _wrap(node.right, _level(node))
        return f"{left} {op} {right}"
    raise TypeError(f"not a condition node: {node!r}")


def _wrap(node: Condition, outer: int, allow_equal: bool = False) -> str:
    inner = _level(node)
    text = condition_to_source(node)
    if inner > outer or (allow_equal and inner == outer):
        return text
    return f"({text})"


def referenced_intents(node: Condition) -> set[str]:
    return {n.name for n in walk(node) if isinstance(n, IntentRef)}


def referenced_entities(node: Condition) -> set[str]:
    return {n.name for n in walk(node) if isinstance(n, EntityRef)}


def walk(node: Condition):
    """Yield the node and all of its descendants."""
    yield node
    if isinstance(node, (And, Or)):
        yield from walk(node.left)
        yield from walk(node.right)
    elif isinstance(node, Not):
        yield from walk(node.operand)
