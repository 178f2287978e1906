"""Evaluation of the alternation-free epistemic mu-calculus.

Sets are bitmasks internally and :class:`StateSet` at the API boundary.
Besides the boolean and knowledge operators this module provides the
imperfect-information next step ``<A>``, the ``reach`` auxiliary and the
steadfast next step ``<A>*`` (common neighborhood) / ``<A>~`` (everybody
neighborhood).
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

from .errors import BudgetExceeded, FormulaError
from .icgs import Model, UniformAssignment, assignment_slots, restricted_successors
from .logic.formula import (
    And, Atom, Common, Const, Diamond, Everybody, Formula, Implies, Know, Mu,
    Not, Nu, Or, Steadfast, Strategic, Var, check_alternation_free, free_vars,
    is_positive,
)
from .stateset import StateSet, iter_bits

Valuation = Mapping[str, StateSet]

STEADFAST_BUDGET = 2 ** 20


def budget_from_env(default: int) -> int:
    """``ATLAPPROX_BUDGET`` overrides every search ceiling when set."""
    raw = os.environ.get("ATLAPPROX_BUDGET")
    if not raw:
        return default
    try:
        value = int(float(raw))
    except ValueError:
        raise ValueError(f"ATLAPPROX_BUDGET must be a number, got {raw!r}") from None
    if value <= 0:
        raise ValueError("ATLAPPROX_BUDGET must be positive")
    return value


@dataclass
class FixpointRun:
    var: str
    kind: str
    iterations: int


@dataclass
class Stats:
    runs: list[FixpointRun] = field(default_factory=list)

    @property
    def iterations(self) -> int:
        return sum(r.iterations for r in self.runs)

    @property
    def max_iterations(self) -> int:
        return max((r.iterations for r in self.runs), default=0)


class Evaluator:
    """Evaluates formulas over one model.

    Results of closed subformulas and of the next-step operators are cached,
    so reuse one evaluator for many queries on the same model.  ``stats``
    accumulates one entry per fixpoint computation.
    """

    def __init__(self, model: Model, steadfast_budget: Optional[int] = None):
        self.model = model
        self.steadfast_budget = budget_from_env(STEADFAST_BUDGET) if steadfast_budget is None \
            else steadfast_budget
        self.stats = Stats()
        self._closed_cache: dict[Formula, int] = {}
        self._free: dict[Formula, frozenset] = {}
        self._diamond_cache: dict[tuple, bool] = {}
        self._good_cache: dict[tuple, tuple] = {}
        self._steadfast_cache: dict[tuple, bool] = {}
        self._common_blocks: dict[tuple, list[int]] = {}
        self._succ_of_block: dict[int, int] = {}

    # --------------------------------------------------------------- public

    def eval(self, f: Formula, val: Optional[Valuation] = None) -> StateSet:
        val = dict(val or {})
        if not is_positive(f):
            raise FormulaError("a fixpoint variable occurs under an odd number of negations")
        if not check_alternation_free(f):
            raise FormulaError("formula is not alternation-free")
        unbound = free_vars(f) - set(val)
        if unbound:
            raise FormulaError(f"unbound variable(s): {', '.join(sorted(unbound))}")
        env = {}
        for name, s in val.items():
            env[name] = s.bits if isinstance(s, StateSet) else int(s)
        return StateSet(self.model.n, self._eval(f, env))

    def diamond(self, coalition: tuple[int, ...], target: int) -> int:
        """States from which one uniform step of the coalition, taken on the
        whole everybody-class, lands inside ``target``."""
        m = self.model
        out = 0
        seen: dict[int, bool] = {}
        for q in range(m.n):
            cls = m.everybody_bits(coalition, q)
            ok = seen.get(cls)
            if ok is None:
                ok = seen[cls] = self._diamond_class(coalition, cls, target)
            if ok:
                out |= 1 << q
        return out

    def steadfast(self, coalition: tuple[int, ...], target: int, neighborhood: str = "C") -> int:
        m = self.model
        out = 0
        if neighborhood == "C":
            for block in self._common_partition(coalition):
                if self._steadfast_domain(coalition, block, target, closed=True):
                    out |= block
            return out
        if neighborhood != "E":
            raise FormulaError(f"unknown neighborhood {neighborhood!r}")
        seen: dict[int, bool] = {}
        for q in range(m.n):
            image = m.everybody_bits(coalition, q)
            ok = seen.get(image)
            if ok is None:
                ok = seen[image] = self._steadfast_domain(coalition, image, target, closed=False)
            if ok:
                out |= 1 << q
        return out

    # ------------------------------------------------------------ recursion

    def _free_vars(self, f: Formula) -> frozenset:
        fv = self._free.get(f)
        if fv is None:
            fv = self._free[f] = frozenset(free_vars(f))
        return fv

    def _eval(self, f: Formula, env: dict[str, int]) -> int:
        closed = not self._free_vars(f)
        if closed:
            hit = self._closed_cache.get(f)
            if hit is not None:
                return hit
        result = self._compute(f, env)
        if closed:
            self._closed_cache[f] = result
        return result

    def _compute(self, f: Formula, env: dict[str, int]) -> int:
        m = self.model
        full = m.all_bits
        if isinstance(f, Const):
            return full if f.value else 0
        if isinstance(f, Atom):
            return m.label_bits(f.name)
        if isinstance(f, Var):
            try:
                return env[f.name]
            except KeyError:
                raise FormulaError(f"unbound variable {f.name}") from None
        if isinstance(f, Not):
            return full & ~self._eval(f.arg, env)
        if isinstance(f, And):
            return self._eval(f.left, env) & self._eval(f.right, env)
        if isinstance(f, Or):
            return self._eval(f.left, env) | self._eval(f.right, env)
        if isinstance(f, Implies):
            return (full & ~self._eval(f.left, env)) | self._eval(f.right, env)
        if isinstance(f, Know):
            return self._know((m.agent_id(f.agent),), self._eval(f.arg, env))
        if isinstance(f, Everybody):
            return self._know(m.coalition(f.coalition), self._eval(f.arg, env))
        if isinstance(f, Common):
            inner = self._eval(f.arg, env)
            out = 0
            for block in self._common_partition(m.coalition(f.coalition)):
                if block & ~inner == 0:
                    out |= block
            return out
        if isinstance(f, Diamond):
            return self.diamond(m.coalition(f.coalition), self._eval(f.arg, env))
        if isinstance(f, Steadfast):
            return self.steadfast(m.coalition(f.coalition), self._eval(f.arg, env), f.neighborhood)
        if isinstance(f, (Mu, Nu)):
            return self._fixpoint(f, env)
        if isinstance(f, Strategic):
            return self._strategic(f, env)
        raise FormulaError(f"cannot evaluate {type(f).__name__}")

    def _strategic(self, f: Strategic, env: dict[str, int]) -> int:
        raise FormulaError("strategic modalities need the exact checker")

    def _fixpoint(self, f, env: dict[str, int]) -> int:
        kind = "mu" if isinstance(f, Mu) else "nu"
        current = 0 if kind == "mu" else self.model.all_bits
        inner = dict(env)
        count = 0
        while True:
            inner[f.var] = current
            nxt = self._eval(f.body, inner)
            count += 1
            if nxt == current:
                break
            current = nxt
        self.stats.runs.append(FixpointRun(f.var, kind, count))
        return current

    # ------------------------------------------------------------ operators

    def _know(self, coalition: tuple[int, ...], inner: int) -> int:
        m = self.model
        out = 0
        for q in range(m.n):
            if m.everybody_bits(coalition, q) & ~inner == 0:
                out |= 1 << q
        return out

    def _common_partition(self, coalition: tuple[int, ...]) -> list[int]:
        blocks = self._common_blocks.get(coalition)
        if blocks is None:
            blocks = self._common_blocks[coalition] = self.model.common_partition(coalition)
        return blocks

    def _succ(self, domain: int) -> int:
        s = self._succ_of_block.get(domain)
        if s is None:
            s = 0
            for q in iter_bits(domain):
                s |= self.model.successors[q]
            self._succ_of_block[domain] = s
        return s

    def _good_profiles(self, coalition, state: int, target: int) -> tuple:
        key = (coalition, state, target & self.model.successors[state])
        good = self._good_cache.get(key)
        if good is None:
            moves = self.model.moves(coalition)[state]
            good = self._good_cache[key] = tuple(p for p, mask in moves.items() if mask & ~target == 0)
        return good

    def _diamond_class(self, coalition: tuple[int, ...], cls: int, target: int) -> bool:
        key = (coalition, cls, target & self._succ(cls))
        hit = self._diamond_cache.get(key)
        if hit is not None:
            return hit
        m = self.model
        states = list(iter_bits(cls))
        options = {}
        for r in states:
            good = self._good_profiles(coalition, r, target)
            if not good:
                self._diamond_cache[key] = False
                return False
            options[r] = good
        states.sort(key=lambda r: len(options[r]))
        slots = [[(a, m.block_of[a][r]) for a in coalition] for r in states]
        assign: dict[tuple[int, int], int] = {}

        # a small CSP: one variable per (agent, block), one constraint per state
        def solve(i: int) -> bool:
            if i == len(states):
                return True
            keys = slots[i]
            for prof in options[states[i]]:
                added = []
                ok = True
                for k, x in zip(keys, prof):
                    cur = assign.get(k)
                    if cur is None:
                        assign[k] = x
                        added.append(k)
                    elif cur != x:
                        ok = False
                        break
                if ok and solve(i + 1):
                    return True
                for k in added:
                    del assign[k]
            return False

        result = solve(0)
        self._diamond_cache[key] = result
        return result

    def _steadfast_domain(self, coalition: tuple[int, ...], domain: int, target: int,
                          closed: bool) -> bool:
        """Is there a uniform assignment on ``domain`` from whose every state
        all paths re-enter ``target`` after at least one step, staying inside
        ``domain`` until then?"""
        succ = self._succ(domain)
        key = (coalition, domain, closed, target & succ)
        hit = self._steadfast_cache.get(key)
        if hit is not None:
            return hit
        result = self._steadfast_search(coalition, domain, target, closed)
        self._steadfast_cache[key] = result
        return result

    def _steadfast_search(self, coalition, domain: int, target: int, closed: bool) -> bool:
        m = self.model
        allowed = domain | target
        moves = m.moves(coalition)
        slots = assignment_slots(m, coalition, domain, require_closed=closed)
        slot_ix = {}
        for i, (a, mask) in enumerate(slots):
            for q in iter_bits(mask):
                slot_ix[a, q] = i
        states = list(iter_bits(domain))
        # per state: the slots fixing its profile, checked once the last is set
        state_slots = {r: [slot_ix[a, r] for a in coalition] for r in states}
        ready: list[list[int]] = [[] for _ in range(len(slots) + 1)]
        for r in states:
            ready[max(state_slots[r], default=-1) + 1].append(r)
        options = []
        for a, mask in slots:
            first = (mask & -mask).bit_length() - 1
            options.append(m.protocol[a][first])

        choice = [0] * len(slots)
        step_succ: dict[int, int] = {}
        visited = 0
        budget = self.steadfast_budget

        def admissible(level: int) -> bool:
            for r in ready[level]:
                prof = tuple(choice[i] for i in state_slots[r])
                s = moves[r].get(prof, 0)
                if s == 0 or s & ~allowed:
                    return False
                step_succ[r] = s
            return True

        def reach_all() -> bool:
            reached = 0
            changed = True
            while changed:
                changed = False
                for r in states:
                    if reached >> r & 1:
                        continue
                    if step_succ[r] & ~(target | reached) == 0:
                        reached |= 1 << r
                        changed = True
            return reached == domain

        def search(level: int) -> bool:
            nonlocal visited
            visited += 1
            if visited > budget:
                raise BudgetExceeded("steadfast assignments", budget)
            if not admissible(level):
                return False
            if level == len(slots):
                return reach_all()
            for x in options[level]:
                choice[level] = x
                if search(level + 1):
                    return True
            return False

        return search(0)


# ------------------------------------------------------------ functional API


def eval(model: Model, f: Formula, val: Optional[Valuation] = None) -> StateSet:  # noqa: A001
    """The set of states satisfying ``f`` under ``val``."""
    return Evaluator(model).eval(f, val)


def diamond(model: Model, coalition: Iterable[str], target: StateSet) -> StateSet:
    ev = Evaluator(model)
    return StateSet(model.n, ev.diamond(model.coalition(coalition), target.bits))


def steadfast(model: Model, coalition: Iterable[str], target: StateSet,
              neighborhood: str = "C") -> StateSet:
    ev = Evaluator(model)
    return StateSet(model.n, ev.steadfast(model.coalition(coalition), target.bits, neighborhood))


def reach(model: Model, assignment: UniformAssignment, Q: StateSet, target: StateSet,
          strict: bool = False) -> StateSet:
    """States of ``Q`` from which every path under the assignment hits
    ``target`` while all earlier states stay in ``Q``.

    By default states of ``Q & target`` count immediately.  With ``strict``
    the target must be hit after at least one step, which is the form the
    steadfast operator uses.
    """
    succ = restricted_successors(model, assignment)
    q_bits, t_bits = Q.bits, target.bits
    reached = 0 if strict else q_bits & t_bits
    changed = True
    while changed:
        changed = False
        for r in iter_bits(q_bits & ~reached):
            s = succ[r]
            if s and s & ~(t_bits | reached) == 0:
                reached |= 1 << r
                changed = True
    return StateSet(model.n, reached)
