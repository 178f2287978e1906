import random
from dataclasses import dataclass

import pytest

from atlapprox.bench import gen_random, random_formula
from atlapprox.icgs import Model, enumerate_assignments, restricted_successors
from atlapprox.stateset import StateSet, iter_bits


@dataclass
class Case:
    seed: int
    model: Model
    formulas: list


def random_case(seed: int, formulas: int = 3) -> Case:
    rng = random.Random(seed)
    model = gen_random(
        num_states=rng.randint(1, 8),
        num_agents=rng.randint(1, 2),
        num_actions=rng.randint(1, 3),
        epistemic_block_size=rng.randint(1, 3),
        seed=seed,
    )
    return Case(seed, model, [random_formula(model.agents, rng) for _ in range(formulas)])


@pytest.fixture(scope="session")
def corpus():
    return [random_case(seed) for seed in range(500)]


@pytest.fixture(scope="session")
def small_corpus(corpus):
    return corpus[:120]


# ------------------------------------------------------------------ oracle


def _has_cycle(nodes, succ):
    color = {}

    def visit(r):
        color[r] = 1
        for t in iter_bits(succ[r]):
            if t in nodes:
                if color.get(t) == 1:
                    return True
                if t not in color and visit(t):
                    return True
        color[r] = 2
        return False

    return any(r not in color and visit(r) for r in nodes)


def _reachable(start, succ):
    seen = set()
    stack = list(iter_bits(start))
    while stack:
        r = stack.pop()
        if r in seen:
            continue
        seen.add(r)
        stack.extend(iter_bits(succ[r]))
    return seen


def path_goal_holds(kind, start, succ, goal, hold):
    """Universal path property from every state of ``start`` on a finite
    successor graph, by forward search and cycle detection."""
    if kind == "X":
        return all(succ[r] & ~goal == 0 for r in iter_bits(start))
    if kind == "G":
        return all(goal >> r & 1 for r in _reachable(start, succ))
    # U: stay in hold until goal; no escape to a bad state, no cycle avoiding goal
    region = set()
    stack = [r for r in iter_bits(start) if not goal >> r & 1]
    while stack:
        r = stack.pop()
        if r in region:
            continue
        region.add(r)
        for t in iter_bits(succ[r]):
            if not goal >> t & 1:
                stack.append(t)
    if any(not hold >> r & 1 for r in region):
        return False
    return not _has_cycle(region, succ)


def naive_ir(model: Model, coalition_names, kind, goal: int, hold: int = 0,
             objective: bool = False) -> StateSet:
    """Enumerate every full uniform strategy; no laziness, no pruning."""
    coalition = model.coalition(coalition_names)
    full = StateSet.full(model.n)
    strategies = [restricted_successors(model, s)
                  for s in enumerate_assignments(model, coalition_names, full)]
    out = 0
    for q in range(model.n):
        start = (1 << q) if objective else model.everybody_bits(coalition, q)
        if any(path_goal_holds(kind, start, succ, goal, hold) for succ in strategies):
            out |= 1 << q
    return StateSet(model.n, out)


# --------------------------------------------------------- acceptance lines


def pytest_configure(config):
    config._acceptance_lines = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)


@pytest.fixture
def criterion(request):
    """Call ``criterion(number, ok, detail)`` once per criterion."""

    def record(number, ok, detail=""):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}".rstrip()
        print(line)
        request.config._acceptance_lines.append(line)
        return ok

    return record
