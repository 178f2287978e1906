"""Fixpoint translations of strategic formulas.

``tr1``/``tr2``/``tr3`` are the reachability-only candidates for a lower
bound of ``<<A>> F goal``.  ``tr`` and ``TR`` are the lower and upper
approximations of a whole ATL_ir formula; they call each other through
negation.  Fresh variables are named ``Z0, Z1, ...`` per call.
"""

from __future__ import annotations

from itertools import count
from typing import Iterable

from ..errors import FormulaError
from .formula import (
    TRUE, And, Atom, Common, Const, Diamond, Everybody, Formula, Implies, Know,
    Mu, Not, Nu, Or, Steadfast, Strategic, Var, _coalition, names_used,
    subformulas,
)


class _Fresh:
    def __init__(self, *formulas: Formula):
        self.taken = set()
        for f in formulas:
            self.taken |= names_used(f)
        self.counter = count()

    def __call__(self) -> str:
        while True:
            name = f"Z{next(self.counter)}"
            if name not in self.taken:
                self.taken.add(name)
                return name


def _everybody_or_know(coalition: tuple[str, ...], f: Formula) -> Formula:
    if len(coalition) == 1:
        return Know(coalition[0], f)
    return Everybody(coalition, f)


def tr1(coalition: Iterable[str], goal: Formula) -> Formula:
    """``mu Z . (goal | <A> Z)``."""
    z = _Fresh(goal)()
    return Mu(z, Or(goal, Diamond(_coalition(coalition), Var(z))))


def tr2(coalition: Iterable[str], goal: Formula) -> Formula:
    """``mu Z . (E_A goal | <A> Z)``, with ``K_a`` for a single agent."""
    a = _coalition(coalition)
    z = _Fresh(goal)()
    return Mu(z, Or(_everybody_or_know(a, goal), Diamond(a, Var(z))))


def tr3(coalition: Iterable[str], goal: Formula) -> Formula:
    """``mu Z . (E_A goal | <A>* Z)`` with the common-knowledge steadfast step."""
    a = _coalition(coalition)
    z = _Fresh(goal)()
    return Mu(z, Or(_everybody_or_know(a, goal), Steadfast(a, Var(z), "C")))


def expand_eventually(f: Formula) -> Formula:
    """Rewrite every ``<<A>>_x F g`` as ``<<A>>_x (true U g)``."""
    if isinstance(f, Strategic):
        goal = expand_eventually(f.goal)
        if f.temporal == "F":
            return Strategic(f.coalition, "U", goal, TRUE, f.semantics)
        hold = None if f.hold is None else expand_eventually(f.hold)
        return Strategic(f.coalition, f.temporal, goal, hold, f.semantics)
    return _map_children(f, expand_eventually)


def _map_children(f: Formula, fn) -> Formula:
    if isinstance(f, (Const, Atom, Var)):
        return f
    if isinstance(f, Not):
        return Not(fn(f.arg))
    if isinstance(f, (And, Or, Implies)):
        return type(f)(fn(f.left), fn(f.right))
    if isinstance(f, Know):
        return Know(f.agent, fn(f.arg))
    if isinstance(f, (Everybody, Common, Diamond)):
        return type(f)(f.coalition, fn(f.arg))
    if isinstance(f, Steadfast):
        return Steadfast(f.coalition, fn(f.arg), f.neighborhood)
    if isinstance(f, (Mu, Nu)):
        return type(f)(f.var, fn(f.body))
    if isinstance(f, Strategic):
        hold = None if f.hold is None else fn(f.hold)
        return Strategic(f.coalition, f.temporal, fn(f.goal), hold, f.semantics)
    raise FormulaError(f"unknown node {type(f).__name__}")


def _require_atl_ir(f: Formula) -> None:
    for g in subformulas(f):
        if isinstance(g, (Var, Mu, Nu, Diamond, Steadfast)):
            raise FormulaError(f"not an ATL_ir formula: contains {type(g).__name__}")
        if isinstance(g, Strategic) and g.semantics != "ir":
            raise FormulaError("not an ATL_ir formula: contains a perfect-information modality")


def tr(f: Formula) -> Formula:
    """Lower approximation: its truth implies the truth of ``f``."""
    _require_atl_ir(f)
    fresh = _Fresh(f)
    return _Translator(fresh).lower(expand_eventually(f))


def TR(f: Formula) -> Formula:  # noqa: N802 - name mirrors tr
    """Upper approximation: implied by the truth of ``f``."""
    _require_atl_ir(f)
    fresh = _Fresh(f)
    return _Translator(fresh).upper(expand_eventually(f))


class _Translator:
    def __init__(self, fresh: _Fresh):
        self.fresh = fresh

    def lower(self, f: Formula) -> Formula:
        if isinstance(f, (Const, Atom)):
            return f
        if isinstance(f, Not):
            return Not(self.upper(f.arg))
        if isinstance(f, (And, Or)):
            return type(f)(self.lower(f.left), self.lower(f.right))
        if isinstance(f, Implies):
            return Implies(self.upper(f.left), self.lower(f.right))
        if isinstance(f, Know):
            return Know(f.agent, self.lower(f.arg))
        if isinstance(f, (Everybody, Common)):
            return type(f)(f.coalition, self.lower(f.arg))
        if isinstance(f, Strategic):
            a = f.coalition
            if f.temporal == "X":
                return Diamond(a, self.lower(f.goal))
            z = self.fresh()
            if f.temporal == "G":
                return Nu(z, And(Common(a, self.lower(f.goal)), Steadfast(a, Var(z), "C")))
            # U; F was expanded beforehand
            return Mu(z, Or(
                Everybody(a, self.lower(f.goal)),
                And(Common(a, self.lower(f.hold)), Steadfast(a, Var(z), "C")),
            ))
        raise FormulaError(f"cannot translate {type(f).__name__}")

    def upper(self, f: Formula) -> Formula:
        if isinstance(f, (Const, Atom)):
            return f
        if isinstance(f, Not):
            return Not(self.lower(f.arg))
        if isinstance(f, (And, Or)):
            return type(f)(self.upper(f.left), self.upper(f.right))
        if isinstance(f, Implies):
            return Implies(self.lower(f.left), self.upper(f.right))
        if isinstance(f, Know):
            return Know(f.agent, self.upper(f.arg))
        if isinstance(f, (Everybody, Common)):
            return type(f)(f.coalition, self.upper(f.arg))
        if isinstance(f, Strategic):
            hold = None if f.hold is None else self.upper(f.hold)
            inner = Strategic(f.coalition, f.temporal, self.upper(f.goal), hold, "IR")
            return Everybody(f.coalition, inner)
        raise FormulaError(f"cannot translate {type(f).__name__}")
