"""Formula trees for ATL_ir/ATL_Ir, knowledge operators and the epistemic
mu-calculus, with a canonical printer and structural utilities."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from ..errors import FormulaError


def _coalition(agents) -> tuple[str, ...]:
    if isinstance(agents, str):
        agents = (agents,)
    return tuple(sorted(set(agents), key=lambda a: (len(a), a)))


class Formula:
    """Base class; concrete nodes are frozen dataclasses."""

    def __str__(self) -> str:
        return to_text(self)

    # boolean sugar for building formulas in tests and generators
    def __and__(self, other: Formula) -> Formula:
        return And(self, other)

    def __or__(self, other: Formula) -> Formula:
        return Or(self, other)

    def __invert__(self) -> Formula:
        return Not(self)


@dataclass(frozen=True, repr=False)
class Const(Formula):
    value: bool


@dataclass(frozen=True, repr=False)
class Atom(Formula):
    name: str


@dataclass(frozen=True, repr=False)
class Var(Formula):
    name: str


@dataclass(frozen=True, repr=False)
class Not(Formula):
    arg: Formula


@dataclass(frozen=True, repr=False)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, repr=False)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, repr=False)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, repr=False)
class Strategic(Formula):
    """``<<A>>_x X goal``, ``G goal``, ``F goal`` or ``hold U goal``."""

    coalition: tuple[str, ...]
    temporal: str
    goal: Formula
    hold: Optional[Formula] = None
    semantics: str = "ir"

    def __post_init__(self):
        object.__setattr__(self, "coalition", _coalition(self.coalition))
        if self.temporal not in ("X", "G", "F", "U"):
            raise FormulaError(f"unknown temporal operator {self.temporal!r}")
        if (self.temporal == "U") != (self.hold is not None):
            raise FormulaError("only U takes a left operand")
        if self.semantics not in ("ir", "IR"):
            raise FormulaError(f"unknown strategy semantics {self.semantics!r}")


@dataclass(frozen=True, repr=False)
class Know(Formula):
    agent: str
    arg: Formula


@dataclass(frozen=True, repr=False)
class Everybody(Formula):
    coalition: tuple[str, ...]
    arg: Formula

    def __post_init__(self):
        object.__setattr__(self, "coalition", _coalition(self.coalition))


@dataclass(frozen=True, repr=False)
class Common(Formula):
    coalition: tuple[str, ...]
    arg: Formula

    def __post_init__(self):
        object.__setattr__(self, "coalition", _coalition(self.coalition))


@dataclass(frozen=True, repr=False)
class Mu(Formula):
    var: str
    body: Formula


@dataclass(frozen=True, repr=False)
class Nu(Formula):
    var: str
    body: Formula


@dataclass(frozen=True, repr=False)
class Diamond(Formula):
    """One-step ability under imperfect information, ``<A> arg``."""

    coalition: tuple[str, ...]
    arg: Formula

    def __post_init__(self):
        object.__setattr__(self, "coalition", _coalition(self.coalition))


@dataclass(frozen=True, repr=False)
class Steadfast(Formula):
    """Steadfast next step over the common (``C``) or everybody (``E``)
    neighborhood, ``<A>* arg`` / ``<A>~ arg``."""

    coalition: tuple[str, ...]
    arg: Formula
    neighborhood: str = "C"

    def __post_init__(self):
        object.__setattr__(self, "coalition", _coalition(self.coalition))
        if self.neighborhood not in ("C", "E"):
            raise FormulaError(f"unknown neighborhood {self.neighborhood!r}")


TRUE = Const(True)
FALSE = Const(False)


def children(f: Formula) -> tuple[Formula, ...]:
    if isinstance(f, (Const, Atom, Var)):
        return ()
    if isinstance(f, (And, Or, Implies)):
        return (f.left, f.right)
    if isinstance(f, Strategic):
        return (f.hold, f.goal) if f.hold is not None else (f.goal,)
    if isinstance(f, (Mu, Nu)):
        return (f.body,)
    return (f.arg,)


def subformulas(f: Formula) -> Iterator[Formula]:
    """Pre-order walk."""
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        stack.extend(reversed(children(g)))


def names_used(f: Formula) -> set[str]:
    """Every atom and variable name occurring in ``f``."""
    used = set()
    for g in subformulas(f):
        if isinstance(g, (Atom, Var)):
            used.add(g.name)
        elif isinstance(g, (Mu, Nu)):
            used.add(g.var)
    return used


def free_vars(f: Formula) -> set[str]:
    if isinstance(f, Var):
        return {f.name}
    if isinstance(f, (Mu, Nu)):
        return free_vars(f.body) - {f.var}
    out: set[str] = set()
    for c in children(f):
        out |= free_vars(c)
    return out


def is_atl(f: Formula, semantics: str = "ir") -> bool:
    """True for formulas built from atoms, booleans, knowledge operators and
    strategic modalities of the given semantics only."""
    for g in subformulas(f):
        if isinstance(g, (Var, Mu, Nu, Diamond, Steadfast)):
            return False
        if isinstance(g, Strategic) and g.semantics != semantics:
            return False
    return True


def alpha_equal(f: Formula, g: Formula) -> bool:
    """Structural equality up to renaming of bound fixpoint variables."""

    def go(a, b, env_a, env_b, depth=0) -> bool:
        if type(a) is not type(b):
            return False
        if isinstance(a, Var):
            ia, ib = env_a.get(a.name), env_b.get(b.name)
            if ia is None and ib is None:
                return a.name == b.name
            return ia == ib
        if isinstance(a, (Mu, Nu)):
            return go(a.body, b.body, {**env_a, a.var: depth}, {**env_b, b.var: depth}, depth + 1)
        if isinstance(a, (Const, Atom)):
            return a == b
        if isinstance(a, Strategic):
            if (a.coalition, a.temporal, a.semantics) != (b.coalition, b.temporal, b.semantics):
                return False
        elif isinstance(a, Know):
            if a.agent != b.agent:
                return False
        elif isinstance(a, (Everybody, Common, Diamond)):
            if a.coalition != b.coalition:
                return False
        elif isinstance(a, Steadfast):
            if (a.coalition, a.neighborhood) != (b.coalition, b.neighborhood):
                return False
        ca, cb = children(a), children(b)
        return len(ca) == len(cb) and all(go(x, y, env_a, env_b, depth) for x, y in zip(ca, cb))

    return go(f, g, {}, {})


# ----------------------------------------------------------- fixpoint checks


def _binder_walk(f: Formula):
    """Yield ``(kind, between, same_polarity)`` for every bound variable
    occurrence.  Kinds are read in negation normal form: a ``mu`` under an odd
    number of negations acts as a ``nu`` and vice versa, and implications
    negate their left operand.  ``between`` lists the effective kinds of the
    fixpoint binders strictly between the binder and the occurrence."""

    def go(g, positive, env, path):
        if isinstance(g, Var):
            if g.name in env:
                kind, bound_positive, depth = env[g.name]
                yield kind, path[depth + 1:], positive == bound_positive
        elif isinstance(g, Not):
            yield from go(g.arg, not positive, env, path)
        elif isinstance(g, Implies):
            yield from go(g.left, not positive, env, path)
            yield from go(g.right, positive, env, path)
        elif isinstance(g, (Mu, Nu)):
            kind = "mu" if isinstance(g, Mu) == positive else "nu"
            inner = path + (kind,)
            yield from go(g.body, positive, {**env, g.var: (kind, positive, len(path))}, inner)
        else:
            for c in children(g):
                yield from go(c, positive, env, path)

    yield from go(f, True, {}, ())


def is_positive(f: Formula) -> bool:
    """Every bound variable occurs under an even number of negations
    relative to its binder."""
    return all(same for _, _, same in _binder_walk(f))


def check_alternation_free(f: Formula) -> bool:
    """No effective ``nu`` lies on the path from a ``mu Z`` to a bound ``Z``,
    and no effective ``mu`` on the path from a ``nu Z`` to a bound ``Z``."""
    for kind, between, _ in _binder_walk(f):
        other = "nu" if kind == "mu" else "mu"
        if other in between:
            return False
    return True


# ------------------------------------------------------------------ printing

_BINARY = {Implies: ("->", 1), Or: ("|", 2), And: ("&", 3)}
_UNARY_LEVEL = 4


def _agents(coalition) -> str:
    return ",".join(coalition)


def to_text(f: Formula) -> str:
    """Canonical concrete syntax; ``parse(to_text(f)) == f``."""
    return _show(f)


def _show(f: Formula) -> str:
    if isinstance(f, Const):
        return "true" if f.value else "false"
    if isinstance(f, (Atom, Var)):
        return f.name
    op = _BINARY.get(type(f))
    if op is not None:
        sym, level = op
        # & and | associate to the left, -> to the right
        if isinstance(f, Implies):
            left = _wrap(f.left, level + 1)
            right = _wrap(f.right, level)
        else:
            left = _wrap(f.left, level)
            right = _wrap(f.right, level + 1)
        return f"{left} {sym} {right}"
    if isinstance(f, Not):
        return "!" + _wrap(f.arg, _UNARY_LEVEL)
    if isinstance(f, Strategic):
        head = f"<<{_agents(f.coalition)}>>" + ("_IR" if f.semantics == "IR" else "")
        if f.temporal == "U":
            return f"{head} ({_show(f.hold)} U {_show(f.goal)})"
        return f"{head} {f.temporal} {_wrap(f.goal, _UNARY_LEVEL)}"
    if isinstance(f, Know):
        return f"K {f.agent} {_wrap(f.arg, _UNARY_LEVEL)}"
    if isinstance(f, Everybody):
        return f"E {{{_agents(f.coalition)}}} {_wrap(f.arg, _UNARY_LEVEL)}"
    if isinstance(f, Common):
        return f"C {{{_agents(f.coalition)}}} {_wrap(f.arg, _UNARY_LEVEL)}"
    if isinstance(f, Mu):
        return f"mu {f.var} . {_wrap(f.body, _UNARY_LEVEL)}"
    if isinstance(f, Nu):
        return f"nu {f.var} . {_wrap(f.body, _UNARY_LEVEL)}"
    if isinstance(f, Diamond):
        return f"<{_agents(f.coalition)}> {_wrap(f.arg, _UNARY_LEVEL)}"
    if isinstance(f, Steadfast):
        mark = "*" if f.neighborhood == "C" else "~"
        return f"<{_agents(f.coalition)}>{mark} {_wrap(f.arg, _UNARY_LEVEL)}"
    raise FormulaError(f"cannot print {type(f).__name__}")


def _wrap(f: Formula, level: int) -> str:
    op = _BINARY.get(type(f))
    text = _show(f)
    if op is not None and op[1] < level:
        return f"({text})"
    return text


def _repr(self) -> str:
    return f"<{type(self).__name__} {to_text(self)}>"


Formula.__repr__ = _repr
