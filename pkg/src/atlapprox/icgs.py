"""Concurrent epistemic game structures.

A :class:`Model` holds agents, states, actions, a protocol, a deterministic
joint-action transition function, per-agent epistemic partitions and an atomic
labeling.  All identifiers are interned to dense integers at build time; the
name-level API is a thin layer on top.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import ModelError
from .stateset import StateSet, bits_from, iter_bits


class Model:
    """An immutable iCGS over interned identifiers.

    ``protocol[a][q]`` is the tuple of action indices agent ``a`` may play in
    state ``q`` (ascending, i.e. declaration order).  ``transitions[q]`` maps a
    joint action (one action index per agent, in agent order) to the successor
    index.  ``partitions[a]`` lists agent ``a``'s epistemic blocks as bitmasks,
    ordered by their smallest state.

    Construction does not enforce the iCGS invariants; run :func:`validate`.
    """

    def __init__(
        self,
        agents: Sequence[str],
        states: Sequence[str],
        actions: Sequence[str],
        labels: Mapping[str, int],
        protocol: Sequence[Sequence[tuple[int, ...]]],
        transitions: Sequence[Mapping[tuple[int, ...], int]],
        partitions: Sequence[Sequence[int]],
    ):
        self.agents = tuple(agents)
        self.states = tuple(states)
        self.actions = tuple(actions)
        self.n = len(self.states)
        self.agent_index = {a: i for i, a in enumerate(self.agents)}
        self.state_index = {s: i for i, s in enumerate(self.states)}
        self.action_index = {x: i for i, x in enumerate(self.actions)}
        if len(self.agent_index) != len(self.agents):
            raise ModelError("duplicate agent name")
        if len(self.state_index) != self.n:
            raise ModelError("duplicate state name")
        if len(self.action_index) != len(self.actions):
            raise ModelError("duplicate action name")
        self.labels = dict(labels)
        self.protocol = tuple(tuple(tuple(acts) for acts in row) for row in protocol)
        self.transitions = tuple(dict(t) for t in transitions)
        self.partitions = tuple(tuple(blocks) for blocks in partitions)
        if len(self.protocol) != len(self.agents) or len(self.partitions) != len(self.agents):
            raise ModelError("protocol and partitions need one entry per agent")
        if len(self.transitions) != self.n:
            raise ModelError("transitions need one entry per state")

        # block_of[a][q]: index into partitions[a]; -1 marks an uncovered state
        self.block_of = []
        for blocks in self.partitions:
            owner = [-1] * self.n
            for b, mask in enumerate(blocks):
                for q in iter_bits(mask):
                    if q < self.n and owner[q] == -1:
                        owner[q] = b
            self.block_of.append(owner)
        self.block_of = tuple(tuple(o) for o in self.block_of)

        self.successors = tuple(bits_from(t.values()) for t in self.transitions)
        self._moves: dict[tuple[int, ...], tuple[dict[tuple[int, ...], int], ...]] = {}

    # ------------------------------------------------------------------ names

    @property
    def atoms(self) -> frozenset[str]:
        return frozenset(self.labels)

    @property
    def labeling(self) -> dict[str, StateSet]:
        return {p: StateSet(self.n, bits) for p, bits in self.labels.items()}

    def state_id(self, name: str) -> int:
        try:
            return self.state_index[name]
        except KeyError:
            raise ModelError(f"unknown state {name!r}") from None

    def agent_id(self, name: str) -> int:
        try:
            return self.agent_index[name]
        except KeyError:
            raise ModelError(f"unknown agent {name!r}") from None

    def coalition(self, names: Iterable[str]) -> tuple[int, ...]:
        """Agent indices of a coalition, sorted in model order."""
        return tuple(sorted({self.agent_id(a) for a in names}))

    def stateset(self, names: Iterable[str]) -> StateSet:
        return StateSet.of(self.n, (self.state_id(s) for s in names))

    def names(self, states: StateSet | int) -> list[str]:
        bits = states.bits if isinstance(states, StateSet) else states
        return [self.states[i] for i in iter_bits(bits)]

    def label_bits(self, atom: str) -> int:
        """States labeled with ``atom``; unknown atoms hold nowhere."""
        return self.labels.get(atom, 0)

    # ------------------------------------------------------------ structure

    @property
    def all_bits(self) -> int:
        return (1 << self.n) - 1

    def block(self, agent: int, state: int) -> int:
        b = self.block_of[agent][state]
        return self.partitions[agent][b] if b >= 0 else 1 << state

    def everybody_bits(self, coalition: Sequence[int], state: int) -> int:
        if not coalition:
            return 1 << state
        bits = 0
        for a in coalition:
            bits |= self.block(a, state)
        return bits

    def common_bits(self, coalition: Sequence[int], state: int) -> int:
        closed = 1 << state
        frontier = closed
        while frontier:
            grown = 0
            for q in iter_bits(frontier):
                grown |= self.everybody_bits(coalition, q)
            frontier = grown & ~closed
            closed |= grown
        return closed

    def common_partition(self, coalition: Sequence[int]) -> list[int]:
        """The blocks of the common-knowledge relation, by smallest state."""
        seen = 0
        blocks = []
        for q in range(self.n):
            if not seen >> q & 1:
                b = self.common_bits(coalition, q)
                blocks.append(b)
                seen |= b
        return blocks

    def joint_actions(self, state: int) -> Iterator[tuple[int, ...]]:
        return itertools.product(*(self.protocol[a][state] for a in range(len(self.agents))))

    def moves(self, coalition: Sequence[int]) -> tuple[dict[tuple[int, ...], int], ...]:
        """Per state, map each coalition action profile to its successor mask.

        The mask collects the outcomes over every completion by the agents
        outside the coalition.  Profiles list actions in coalition order.
        """
        key = tuple(coalition)
        cached = self._moves.get(key)
        if cached is not None:
            return cached
        table = []
        for q in range(self.n):
            row: dict[tuple[int, ...], int] = {}
            for joint, target in self.transitions[q].items():
                profile = tuple(joint[a] for a in key)
                row[profile] = row.get(profile, 0) | (1 << target)
            table.append(row)
        result = tuple(table)
        self._moves[key] = result
        return result

    def __repr__(self) -> str:
        return f"<Model {len(self.agents)} agents, {self.n} states>"


class ModelBuilder:
    """Accumulates a model by name and interns it on :meth:`build`.

    Epistemic blocks may overlap or be given as pairs; they are merged into
    equivalence classes, and states never mentioned for an agent become
    singleton classes.
    """

    def __init__(self, agents: Iterable[str], actions: Iterable[str] = ()):
        self.agents = list(agents)
        self._agent_ix = {a: i for i, a in enumerate(self.agents)}
        self.states: list[str] = []
        self._state_ix: dict[str, int] = {}
        self.actions: list[str] = []
        self._action_ix: dict[str, int] = {}
        for x in actions:
            self.add_action(x)
        self._labels: dict[str, int] = {}
        self._protocol: dict[tuple[int, int], set[int]] = {}
        self._transitions: dict[int, dict[tuple[int, ...], int]] = {}
        self._parent: list[dict[int, int]] = [{} for _ in self.agents]

    def add_action(self, name: str) -> int:
        ix = self._action_ix.get(name)
        if ix is None:
            ix = self._action_ix[name] = len(self.actions)
            self.actions.append(name)
        return ix

    def add_state(self, name: str, labels: Iterable[str] = ()) -> int:
        ix = self._state_ix.get(name)
        if ix is None:
            ix = self._state_ix[name] = len(self.states)
            self.states.append(name)
        for p in labels:
            self._labels[p] = self._labels.get(p, 0) | (1 << ix)
        return ix

    def declare_atom(self, name: str) -> None:
        self._labels.setdefault(name, 0)

    def _state(self, name: str) -> int:
        try:
            return self._state_ix[name]
        except KeyError:
            raise ModelError(f"unknown state {name!r}") from None

    def _agent(self, name: str) -> int:
        try:
            return self._agent_ix[name]
        except KeyError:
            raise ModelError(f"unknown agent {name!r}") from None

    def set_protocol(self, agent: str, state: str, actions: Iterable[str]) -> None:
        key = (self._agent(agent), self._state(state))
        self._protocol[key] = {self.add_action(x) for x in actions}

    def add_transition(self, state: str, joint: Sequence[str], target: str) -> None:
        if len(joint) != len(self.agents):
            raise ModelError(f"joint action {tuple(joint)} needs {len(self.agents)} components")
        src = self._state(state)
        key = tuple(self.add_action(x) for x in joint)
        self._transitions.setdefault(src, {})[key] = self._state(target)

    def add_epistemic_block(self, agent: str, states: Iterable[str]) -> None:
        parent = self._parent[self._agent(agent)]
        members = [self._state(s) for s in states]

        def find(x: int) -> int:
            root = x
            while parent.get(root, root) != root:
                root = parent[root]
            while parent.get(x, x) != root:
                parent[x], x = root, parent[x]
            return root

        for s in members:
            parent.setdefault(s, s)
        for s in members[1:]:
            ra, rb = find(members[0]), find(s)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)

    def build(self) -> Model:
        n = len(self.states)
        # ascending action index is declaration order
        protocol = [
            [tuple(sorted(self._protocol.get((a, q), ()))) for q in range(n)]
            for a in range(len(self.agents))
        ]
        transitions = [self._transitions.get(q, {}) for q in range(n)]
        partitions = []
        for parent in self._parent:
            groups: dict[int, int] = {}
            for q in range(n):
                root = q
                while parent.get(root, root) != root:
                    root = parent[root]
                groups[root] = groups.get(root, 0) | (1 << q)
            partitions.append(sorted(groups.values(), key=lambda m: (m & -m)))
        return Model(self.agents, self.states, self.actions, self._labels,
                     protocol, transitions, partitions)


# ---------------------------------------------------------------- validation


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        return "\n".join(f"{v.kind}: {v.message}" for v in self.violations)


def validate(model: Model) -> ValidationReport:
    """Collect every violated iCGS invariant.  Never raises."""
    report = ValidationReport()
    add = report.violations.append
    agents, states, actions = model.agents, model.states, model.actions
    k = len(agents)

    for a in range(k):
        for q in range(model.n):
            acts = model.protocol[a][q]
            if not acts:
                add(Violation("protocol", f"agent {agents[a]} has no action in state {states[q]}"))
            elif any(not 0 <= x < len(actions) for x in acts):
                add(Violation("protocol", f"agent {agents[a]} has an undeclared action in {states[q]}"))

    for q in range(model.n):
        allowed = set(model.joint_actions(q)) if k else {()}
        present = set(model.transitions[q])
        for joint in sorted(allowed - present):
            add(Violation("totality", f"no transition from {states[q]} on {_joint_names(model, joint)}"))
        for joint in sorted(present - allowed):
            add(Violation("totality", f"transition from {states[q]} on disallowed {_joint_names(model, joint)}"))
        for joint, target in model.transitions[q].items():
            if not 0 <= target < model.n:
                add(Violation("totality", f"transition from {states[q]} leads to unknown state {target}"))

    full = model.all_bits
    for a in range(k):
        covered = 0
        for mask in model.partitions[a]:
            if mask & covered:
                add(Violation("partition", f"epistemic blocks of {agents[a]} overlap"))
            if mask >> model.n:
                add(Violation("partition", f"epistemic block of {agents[a]} names unknown states"))
            if not mask:
                add(Violation("partition", f"empty epistemic block for {agents[a]}"))
            covered |= mask
        if covered & full != full:
            missing = model.names(full & ~covered)
            add(Violation("partition", f"epistemic partition of {agents[a]} misses {missing}"))

    for a in range(k):
        for mask in model.partitions[a]:
            members = list(iter_bits(mask & full))
            if not members:
                continue
            first = members[0]
            for q in members[1:]:
                if model.protocol[a][q] != model.protocol[a][first]:
                    add(Violation(
                        "uniformity",
                        f"agent {agents[a]}: {states[first]} ~ {states[q]} but protocols differ",
                    ))
    return report


def _joint_names(model: Model, joint: tuple[int, ...]) -> str:
    return "(" + ", ".join(model.actions[x] if 0 <= x < len(model.actions) else "?" for x in joint) + ")"


# ------------------------------------------------------------- neighborhoods


def epistemic_class(model: Model, agent: str, state: str) -> StateSet:
    return StateSet(model.n, model.block(model.agent_id(agent), model.state_id(state)))


def everybody_class(model: Model, coalition: Iterable[str], state: str) -> StateSet:
    return StateSet(model.n, model.everybody_bits(model.coalition(coalition), model.state_id(state)))


def common_class(model: Model, coalition: Iterable[str], state: str) -> StateSet:
    return StateSet(model.n, model.common_bits(model.coalition(coalition), model.state_id(state)))


def is_lockstep(model: Model, agent: str) -> bool:
    """True if no transition joins two distinct states the agent confuses.

    Self-loops are allowed: a path that stays put never zig-zags inside a
    block, so they do not separate the one-step and steadfast operators.
    """
    a = model.agent_id(agent)
    for q in range(model.n):
        inside = model.successors[q] & model.block(a, q) & ~(1 << q)
        if inside:
            return False
    return True


# ---------------------------------------------------------------- strategies


@dataclass(frozen=True)
class UniformAssignment:
    """A partial memoryless strategy for a coalition, by interned index.

    ``choice`` maps ``(agent, state)`` to an action.
    """

    coalition: tuple[int, ...]
    choice: Mapping[tuple[int, int], int]

    @property
    def domain(self) -> int:
        return bits_from({q for (_, q) in self.choice})

    def profile(self, state: int) -> tuple[int, ...] | None:
        try:
            return tuple(self.choice[a, state] for a in self.coalition)
        except KeyError:
            return None

    def is_uniform(self, model: Model) -> bool:
        """Check both invariants: constant on blocks, allowed by the protocol."""
        seen: dict[tuple[int, int], int] = {}
        for (a, q), x in self.choice.items():
            if x not in model.protocol[a][q]:
                return False
            key = (a, model.block_of[a][q])
            if seen.setdefault(key, x) != x:
                return False
        return True

    def to_names(self, model: Model) -> dict[tuple[str, str], str]:
        return {
            (model.agents[a], model.states[q]): model.actions[x]
            for (a, q), x in sorted(self.choice.items())
        }

    @classmethod
    def from_names(cls, model: Model, coalition: Iterable[str],
                   choice: Mapping[tuple[str, str], str]) -> UniformAssignment:
        members = model.coalition(coalition)
        table = {}
        for (a, q), x in choice.items():
            ai = model.agent_id(a)
            if ai not in members:
                raise ModelError(f"agent {a!r} is not in the coalition")
            if x not in model.action_index:
                raise ModelError(f"unknown action {x!r}")
            table[ai, model.state_id(q)] = model.action_index[x]
        return cls(members, table)

    @classmethod
    def constant(cls, model: Model, coalition: Iterable[str], actions: Mapping[str, str],
                 domain: StateSet | None = None) -> UniformAssignment:
        """Each member plays one fixed action on every state of ``domain``."""
        members = model.coalition(coalition)
        states = range(model.n) if domain is None else list(domain)
        table = {}
        for a in members:
            x = model.action_index[actions[model.agents[a]]]
            for q in states:
                table[a, q] = x
        return cls(members, table)


def assignment_slots(model: Model, coalition: Sequence[int], domain: int,
                     require_closed: bool = True) -> list[tuple[int, int]]:
    """The independent choice points of a uniform assignment on ``domain``.

    Each slot is ``(agent, mask)`` where ``mask`` is one of the agent's blocks
    intersected with the domain.  Slots come in agent order, then in order of
    their smallest state.
    """
    slots = []
    for a in coalition:
        for mask in model.partitions[a]:
            part = mask & domain
            if not part:
                continue
            if require_closed and part != mask:
                raise ModelError(
                    f"domain is not closed under the epistemic relation of {model.agents[a]}")
            slots.append((a, part))
    return slots


def enumerate_assignments(model: Model, coalition: Iterable[str],
                          domain: StateSet) -> Iterator[UniformAssignment]:
    """Yield every uniform assignment with exactly ``domain`` as its domain.

    The order is deterministic: slots in agent then block order, actions in
    declaration order, last slot varying fastest.
    """
    members = model.coalition(coalition)
    slots = assignment_slots(model, members, domain.bits)
    options = [model.protocol[a][_lowest(mask)] for a, mask in slots]
    for combo in itertools.product(*options):
        choice = {}
        for (a, mask), x in zip(slots, combo):
            for q in iter_bits(mask):
                choice[a, q] = x
        yield UniformAssignment(members, choice)


def count_assignments(model: Model, coalition: Iterable[str], domain: StateSet) -> int:
    members = model.coalition(coalition)
    total = 1
    for a, mask in assignment_slots(model, members, domain.bits):
        total *= len(model.protocol[a][_lowest(mask)])
    return total


def restricted_successors(model: Model, assignment: UniformAssignment) -> list[int]:
    moves = model.moves(assignment.coalition)
    result = []
    for q in range(model.n):
        profile = assignment.profile(q)
        if profile is None:
            result.append(model.successors[q])
        else:
            result.append(moves[q].get(profile, 0))
    return result


def restrict(model: Model, assignment: UniformAssignment) -> list[StateSet]:
    """One-step successors of every state when the coalition follows the
    assignment where it is defined, and anything is allowed elsewhere."""
    return [StateSet(model.n, bits) for bits in restricted_successors(model, assignment)]


def _lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1
