"""Seeded random models and flat ATL_ir formulas for property tests."""

from __future__ import annotations

import random
from dataclasses import dataclass

from ..icgs import Model, ModelBuilder
from ..logic.formula import Atom, Formula, Not, Strategic, And, Or

ATOMS = ("p", "q")


@dataclass(frozen=True)
class RandomParams:
    num_states: int
    num_agents: int
    num_actions: int
    epistemic_block_size: int = 2
    seed: int = 0

    def __post_init__(self):
        for name in ("num_states", "num_agents", "num_actions", "epistemic_block_size"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be at least 1")


def gen_random(params: RandomParams | None = None, **kwargs) -> Model:
    """A random uniform iCGS.

    Each agent's states are shuffled and cut into blocks of at most
    ``epistemic_block_size``.  Protocols are drawn per state and then
    intersected over every block (falling back to the protocol of the block's
    first state if the intersection is empty), so the result is uniform.
    Atoms ``p`` and ``q`` hold with probability one half each.
    """
    if params is None:
        params = RandomParams(**kwargs)
    rng = random.Random(params.seed)
    n, k, na = params.num_states, params.num_agents, params.num_actions
    agents = [str(i + 1) for i in range(k)]
    actions = [f"a{i}" for i in range(na)]
    states = [f"q{i}" for i in range(n)]
    b = ModelBuilder(agents, actions)
    for q in states:
        b.add_state(q, [p for p in ATOMS if rng.random() < 0.5])
    for p in ATOMS:
        b.declare_atom(p)

    protocol: dict[tuple[str, str], list[str]] = {}
    for a in agents:
        order = states[:]
        rng.shuffle(order)
        blocks = []
        while order:
            size = rng.randint(1, params.epistemic_block_size)
            blocks.append(order[:size])
            order = order[size:]
        for block in blocks:
            drawn = [set(rng.sample(actions, rng.randint(1, na))) for _ in block]
            common = set.intersection(*drawn) or drawn[0]
            acts = sorted(common, key=actions.index)
            for q in block:
                protocol[a, q] = acts
                b.set_protocol(a, q, acts)
            b.add_epistemic_block(a, block)

    for q in states:
        joints = [[]]
        for a in agents:
            joints = [j + [x] for j in joints for x in protocol[a, q]]
        for joint in joints:
            b.add_transition(q, joint, rng.choice(states))
    return b.build()


def make_lockstep(model: Model, agent: str, seed: int = 0) -> Model:
    """Redirect every transition that stays inside one of ``agent``'s blocks
    (other than a self-loop) to a state outside that block, or to a self-loop
    when the block is the whole model."""
    rng = random.Random(seed)
    a = model.agent_id(agent)
    b = ModelBuilder(model.agents, model.actions)
    for q, name in enumerate(model.states):
        b.add_state(name, [p for p, bits in model.labels.items() if bits >> q & 1])
    for p in model.labels:
        b.declare_atom(p)
    for ai, ag in enumerate(model.agents):
        for q, name in enumerate(model.states):
            b.set_protocol(ag, name, [model.actions[x] for x in model.protocol[ai][q]])
        for mask in model.partitions[ai]:
            b.add_epistemic_block(ag, model.names(mask))
    for q, name in enumerate(model.states):
        block = model.block(a, q)
        outside = [r for r in range(model.n) if not block >> r & 1]
        for joint, target in sorted(model.transitions[q].items()):
            if target != q and block >> target & 1:
                target = rng.choice(outside) if outside else q
            b.add_transition(name, [model.actions[x] for x in joint], model.states[target])
    return b.build()


def _literal(rng: random.Random) -> Formula:
    f: Formula = Atom(rng.choice(ATOMS))
    roll = rng.random()
    if roll < 0.25:
        return Not(f)
    if roll < 0.4:
        g = Atom(rng.choice(ATOMS))
        return And(f, g) if rng.random() < 0.5 else Or(f, Not(g))
    return f


def random_formula(agents, rng: random.Random, max_coalition: int = 2,
                   temporals: str = "XGUF", negate: float = 0.2) -> Formula:
    """A flat strategic formula over literals of ``p`` and ``q``.

    The coalition has between zero and ``max_coalition`` members; with
    probability ``negate`` the whole formula is negated.
    """
    agents = list(agents)
    size = rng.randint(0, min(max_coalition, len(agents)))
    coalition = tuple(rng.sample(agents, size))
    temporal = rng.choice(temporals)
    goal = _literal(rng)
    hold = _literal(rng) if temporal == "U" else None
    f: Formula = Strategic(coalition, temporal, goal, hold)
    if rng.random() < negate:
        f = Not(f)
    return f
