"""Exact model checking of strategic formulas.

``check_ir`` enumerates memoryless uniform strategies (subjective semantics by
default) and is exponential; ``check_IR`` is the polynomial
perfect-information algorithm.  ``verdict`` combines the two approximations
into a three-valued answer.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional

from .errors import BudgetExceeded, FormulaError
from .fixpoint import Evaluator, FixpointRun, budget_from_env
from .icgs import Model
from .logic.formula import Formula, Strategic, subformulas
from .logic.translate import TR, tr
from .stateset import StateSet, iter_bits

EXACT_BUDGET = 10 ** 7
SEMANTICS = ("subjective", "objective")


class ExactEvaluator(Evaluator):
    """An :class:`Evaluator` that also understands strategic modalities.

    ``<<A>>`` nodes are checked by strategy search, ``<<A>>_IR`` nodes by the
    controllable-predecessor fixpoints.  Nested strategic formulas are
    evaluated bottom-up and their state sets used by the enclosing check.
    """

    def __init__(self, model: Model, semantics: str = "subjective",
                 budget: Optional[int] = None, steadfast_budget: Optional[int] = None):
        super().__init__(model, steadfast_budget)
        if semantics not in SEMANTICS:
            raise ValueError(f"semantics must be one of {SEMANTICS}, got {semantics!r}")
        self.semantics = semantics
        self.budget = budget_from_env(EXACT_BUDGET) if budget is None else budget
        self._ir_cache: dict[tuple, bool] = {}

    def _strategic(self, f: Strategic, env: dict[str, int]) -> int:
        m = self.model
        coalition = m.coalition(f.coalition)
        goal = self._eval(f.goal, env)
        if f.temporal == "F":
            hold = m.all_bits
        elif f.temporal == "U":
            hold = self._eval(f.hold, env)
        else:
            hold = 0
        if f.semantics == "IR":
            return self._perfect(coalition, f.temporal, goal, hold)
        kind = "U" if f.temporal in ("U", "F") else f.temporal
        out = 0
        for q in range(m.n):
            if self.semantics == "subjective":
                start = m.everybody_bits(coalition, q)
            else:
                start = 1 << q
            if self._ir_start(coalition, kind, start, goal, hold):
                out |= 1 << q
        return out

    # ---------------------------------------------------- perfect information

    def pre(self, coalition: tuple[int, ...], target: int) -> int:
        """States where some coalition action forces the next state into
        ``target`` whatever the others do."""
        moves = self.model.moves(coalition)
        out = 0
        for q in range(self.model.n):
            if any(mask & ~target == 0 for mask in moves[q].values()):
                out |= 1 << q
        return out

    def _perfect(self, coalition, temporal: str, goal: int, hold: int) -> int:
        if temporal == "X":
            return self.pre(coalition, goal)
        greatest = temporal == "G"
        z = self.model.all_bits if greatest else 0
        count = 0
        while True:
            if greatest:
                nxt = goal & self.pre(coalition, z)
            else:
                nxt = goal | (hold & self.pre(coalition, z))
            count += 1
            if nxt == z:
                break
            z = nxt
        self.stats.runs.append(FixpointRun("<<IR>>", "nu" if greatest else "mu", count))
        return z

    # ----------------------------------------------------- uniform strategies

    def _ir_start(self, coalition, kind: str, start: int, goal: int, hold: int) -> bool:
        key = (coalition, kind, start, goal, hold)
        hit = self._ir_cache.get(key)
        if hit is None:
            hit = self._ir_cache[key] = self._ir_search(coalition, kind, start, goal, hold)
        return hit

    def _ir_search(self, coalition, kind: str, start: int, goal: int, hold: int) -> bool:
        """Is there one uniform strategy whose every outcome path from every
        state of ``start`` satisfies the goal?

        Strategy slots are fixed lazily, only for blocks the play can reach.
        """
        m = self.model
        moves = m.moves(coalition)
        block_of = m.block_of
        nodes = 0
        budget = self.budget

        if kind == "X":
            pending = list(iter_bits(start))
            reached = start
        elif kind == "G":
            if start & ~goal:
                return False
            pending = list(iter_bits(start))
            reached = start
        else:
            open_ = start & ~goal
            if open_ & ~hold:
                return False
            pending = list(iter_bits(open_))
            reached = start

        def until_holds(reached: int, succ: dict[int, int]) -> bool:
            done = reached & goal
            todo = list(succ)
            changed = True
            while changed:
                changed = False
                for r in todo:
                    if not done >> r & 1 and succ[r] & ~done == 0:
                        done |= 1 << r
                        changed = True
            return all(done >> r & 1 for r in succ)

        def explore(assign: dict, reached: int, pending: list, succ: dict) -> bool:
            nonlocal nodes
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded("uniform strategies", budget)
            while pending:
                r = pending[-1]
                keys = [(a, block_of[a][r]) for a in coalition]
                for k in keys:
                    if k not in assign:
                        a = k[0]
                        for x in m.protocol[a][r]:
                            branch = dict(assign)
                            branch[k] = x
                            if explore(branch, reached, list(pending), dict(succ)):
                                return True
                        return False
                pending.pop()
                s = moves[r].get(tuple(assign[k] for k in keys), 0)
                succ[r] = s
                if kind == "X":
                    if s & ~goal:
                        return False
                    continue
                fresh = s & ~reached
                reached |= fresh
                if kind == "G":
                    if fresh & ~goal:
                        return False
                    pending.extend(iter_bits(fresh))
                else:
                    fresh &= ~goal
                    if fresh & ~hold:
                        return False
                    pending.extend(iter_bits(fresh))
            if kind == "U":
                return until_holds(reached, succ)
            return True

        return explore({}, reached, pending, {})


# ------------------------------------------------------------ functional API


def _require(f: Formula, semantics: str) -> None:
    for g in subformulas(f):
        if isinstance(g, Strategic) and g.semantics != semantics:
            other = "perfect-information" if g.semantics == "IR" else "imperfect-information"
            raise FormulaError(f"unexpected {other} modality in {g}")


def check_ir(model: Model, f: Formula, semantics: str = "subjective",
             budget: Optional[int] = None) -> StateSet:
    """States satisfying an ATL_ir formula, by exhaustive strategy search."""
    _require(f, "ir")
    return ExactEvaluator(model, semantics, budget).eval(f)


def check_IR(model: Model, f: Formula) -> StateSet:  # noqa: N802
    """States satisfying a formula whose strategic modalities are all
    perfect-information ones."""
    _require(f, "IR")
    return ExactEvaluator(model).eval(f)


@dataclass
class Verdict:
    """Three-valued outcome: ``value`` is True, False, or None for unknown."""

    lower: bool
    upper: bool
    exact: Optional[bool] = None
    lower_iterations: int = 0
    upper_iterations: int = 0
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def value(self) -> Optional[bool]:
        if self.lower:
            return True
        if not self.upper:
            return False
        return None

    @property
    def label(self) -> str:
        return {True: "True", False: "False", None: "Unknown"}[self.value]

    @property
    def conclusive(self) -> bool:
        return self.value is not None

    def __str__(self) -> str:
        return self.label


def verdict(model: Model, state, f: Formula, exact: bool = False,
            semantics: str = "subjective", budget: Optional[int] = None) -> Verdict:
    """Evaluate both approximations of ``f`` at ``state`` (name or index) and,
    with ``exact``, the brute-force checker as well."""
    q = model.state_id(state) if isinstance(state, str) else int(state)
    timings = {}

    t0 = time.perf_counter()
    lower_ev = ExactEvaluator(model, semantics, budget)
    lower_set = lower_ev.eval(tr(f))
    timings["lower"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    upper_ev = ExactEvaluator(model, semantics, budget)
    upper_set = upper_ev.eval(TR(f))
    timings["upper"] = time.perf_counter() - t0

    result = Verdict(q in lower_set, q in upper_set,
                     lower_iterations=lower_ev.stats.iterations,
                     upper_iterations=upper_ev.stats.iterations, timings=timings)
    if exact:
        t0 = time.perf_counter()
        result.exact = q in check_ir(model, f, semantics, budget)
        timings["exact"] = time.perf_counter() - t0
    return result
