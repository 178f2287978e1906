"""Recursive-descent parser for the concrete formula syntax.

Precedence, tightest first: prefix operators (``!``, ``K``, ``E``, ``C``,
strategic and next-step modalities, ``mu``/``nu``), then ``&``, ``|`` and
finally ``->`` (right associative).  ``&`` and ``|`` associate to the left.
"""

from __future__ import annotations

import re
from typing import Iterable

from ..errors import ParseError
from .formula import (
    FALSE, TRUE, And, Atom, Common, Diamond, Everybody, Formula, Implies, Know,
    Mu, Not, Nu, Or, Steadfast, Strategic, Var,
)

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+|\#[^\n]*)
  | (?P<op><<|>>_IR|>>|->|[<>*~!&|(){},.])
  | (?P<word>[A-Za-z0-9_]+)
    """,
    re.VERBOSE,
)

KEYWORDS = {"X", "G", "F", "U", "K", "E", "C", "mu", "nu", "true", "false"}


class _Token:
    __slots__ = ("kind", "text", "pos")

    def __init__(self, kind, text, pos):
        self.kind, self.text, self.pos = kind, text, pos


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise _error(text, pos, f"unexpected character {text[pos]!r}")
        if m.lastgroup != "ws":
            tokens.append(_Token(m.lastgroup, m.group(), pos))
        pos = m.end()
    tokens.append(_Token("end", "", len(text)))
    return tokens


def _error(text: str, pos: int, message: str) -> ParseError:
    line = text.count("\n", 0, pos) + 1
    column = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return ParseError(message, line, column)


class _Parser:
    def __init__(self, text: str, free_vars: Iterable[str]):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.bound = list(free_vars)

    @property
    def tok(self) -> _Token:
        return self.tokens[self.i]

    def at(self, text: str) -> bool:
        return self.tok.text == text and self.tok.kind != "end"

    def take(self) -> _Token:
        t = self.tok
        self.i += 1
        return t

    def expect(self, text: str) -> _Token:
        if not self.at(text):
            found = self.tok.text or "end of input"
            raise _error(self.text, self.tok.pos, f"expected {text!r}, found {found!r}")
        return self.take()

    def word(self, what: str) -> str:
        if self.tok.kind != "word":
            found = self.tok.text or "end of input"
            raise _error(self.text, self.tok.pos, f"expected {what}, found {found!r}")
        return self.take().text

    def agents(self, close: str) -> tuple[str, ...]:
        names = []
        if not self.at(close):
            names.append(self.word("agent name"))
            while self.at(","):
                self.take()
                names.append(self.word("agent name"))
        self.expect(close)
        return tuple(names)

    # precedence levels

    def formula(self) -> Formula:
        left = self.disjunction()
        if self.at("->"):
            self.take()
            return Implies(left, self.formula())
        return left

    def disjunction(self) -> Formula:
        f = self.conjunction()
        while self.at("|"):
            self.take()
            f = Or(f, self.conjunction())
        return f

    def conjunction(self) -> Formula:
        f = self.unary()
        while self.at("&"):
            self.take()
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        t = self.tok
        if t.kind == "end":
            raise _error(self.text, t.pos, "unexpected end of input")
        if self.at("!"):
            self.take()
            return Not(self.unary())
        if self.at("("):
            self.take()
            f = self.formula()
            self.expect(")")
            return f
        if self.at("<<"):
            self.take()
            names = []
            if not (self.at(">>") or self.at(">>_IR")):
                names.append(self.word("agent name"))
                while self.at(","):
                    self.take()
                    names.append(self.word("agent name"))
            if not (self.at(">>") or self.at(">>_IR")):
                raise _error(self.text, self.tok.pos, f"expected '>>', found {self.tok.text!r}")
            semantics = "IR" if self.take().text == ">>_IR" else "ir"
            return self.strategic(tuple(names), semantics)
        if self.at("<"):
            self.take()
            coalition = self.agents(">")
            if self.at("*"):
                self.take()
                return Steadfast(coalition, self.unary(), "C")
            if self.at("~"):
                self.take()
                return Steadfast(coalition, self.unary(), "E")
            return Diamond(coalition, self.unary())
        if t.kind != "word":
            raise _error(self.text, t.pos, f"unexpected {t.text!r}")
        self.take()
        if t.text == "true":
            return TRUE
        if t.text == "false":
            return FALSE
        if t.text == "K":
            agent = self.word("agent name")
            return Know(agent, self.unary())
        if t.text in ("E", "C"):
            self.expect("{")
            coalition = self.agents("}")
            cls = Everybody if t.text == "E" else Common
            return cls(coalition, self.unary())
        if t.text in ("mu", "nu"):
            var = self.word("variable name")
            if var in KEYWORDS:
                raise _error(self.text, self.tokens[self.i - 1].pos, f"reserved word {var!r}")
            self.expect(".")
            self.bound.append(var)
            try:
                body = self.unary()
            finally:
                self.bound.pop()
            return Mu(var, body) if t.text == "mu" else Nu(var, body)
        if t.text in KEYWORDS:
            raise _error(self.text, t.pos, f"unexpected keyword {t.text!r}")
        if t.text in self.bound:
            return Var(t.text)
        return Atom(t.text)

    def strategic(self, coalition, semantics) -> Formula:
        if self.tok.kind == "word" and self.tok.text in ("X", "G", "F"):
            temporal = self.take().text
            return Strategic(coalition, temporal, self.unary(), semantics=semantics)
        if self.at("("):
            self.take()
            inner = self.formula()
            if self.at("U"):
                self.take()
                goal = self.formula()
                self.expect(")")
                return Strategic(coalition, "U", goal, inner, semantics)
            self.expect(")")
            hold = inner
        else:
            hold = self.unary()
        self.expect("U")
        goal = self.unary()
        return Strategic(coalition, "U", goal, hold, semantics)


def parse(text: str, free_vars: Iterable[str] = ()) -> Formula:
    """Parse one formula.  Identifiers bound by an enclosing ``mu``/``nu`` or
    listed in ``free_vars`` become variables; all others are atoms."""
    p = _Parser(text, free_vars)
    f = p.formula()
    if p.tok.kind != "end":
        raise _error(text, p.tok.pos, f"unexpected {p.tok.text!r} after formula")
    return f
