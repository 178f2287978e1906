"""Scalable voting-and-coercion benchmark: ``k`` voters and one coercer."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..icgs import Model, ModelBuilder
from ..logic import Formula, parse

# voter module: local state -> (voter action -> next local state)
_VOTER = {
    0: {"vote1": 1, "vote2": 2},
    1: {"give": 3, "ng": 4},
    2: {"give": 6, "ng": 5},
}
# decision states: coercer decision -> next local state
_COERCER = {
    3: {"np": 7, "pun": 8},
    4: {"np": 9, "pun": 10},
    5: {"pun": 11, "np": 12},
    6: {"pun": 13, "np": 14},
}
_VOTE1 = {1, 3, 4, 7, 8, 9, 10}
_VOTE2 = {2, 5, 6, 11, 12, 13, 14}
_PUN = {8, 10, 11, 13}
_FINISH = set(range(7, 15))
# the coercer confuses these local states of every voter
_COERCER_CONFUSES = {1: 2, 2: 1, 4: 5, 5: 4, 10: 11, 11: 10, 9: 12, 12: 9}


@dataclass(frozen=True)
class VotingInstance:
    k: int
    candidate: int = 1

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("need at least one voter")


def _voter_actions(local: int) -> list[str]:
    return [*_VOTER.get(local, {}), "wait"]


def _state_name(locals_: tuple[int, ...]) -> str:
    return "s" + "_".join(str(x) for x in locals_)


def _coercer_key(locals_: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(min(x, _COERCER_CONFUSES.get(x, x)) for x in locals_)


def gen_voting(inst: VotingInstance | int) -> Model:
    """The product of ``k`` 15-state voter modules.

    At every global state each voter chooses among its module's actions or
    ``wait``; the coercer's single action bundles one pun/np decision per
    voter sitting in a decision state (``wait`` if there is none).  Voter
    ``i`` observes only its own module; the coercer observes every module up
    to the fixed per-module confusion pairs.
    """
    if isinstance(inst, int):
        inst = VotingInstance(inst)
    k = inst.k
    voters = [f"v{i}" for i in range(1, k + 1)]
    b = ModelBuilder(voters + ["c"])
    product = list(itertools.product(range(15), repeat=k))

    for locals_ in product:
        labels = []
        for i, x in enumerate(locals_, start=1):
            if x in _VOTE1:
                labels.append(f"vote_{i}_1")
            if x in _VOTE2:
                labels.append(f"vote_{i}_2")
            if x in _PUN:
                labels.append(f"pun_{i}")
            if x in _FINISH:
                labels.append(f"finish_{i}")
        b.add_state(_state_name(locals_), labels)
    for i in range(1, k + 1):
        for atom in (f"vote_{i}_1", f"vote_{i}_2", f"pun_{i}", f"finish_{i}"):
            b.declare_atom(atom)

    for locals_ in product:
        name = _state_name(locals_)
        per_voter = [_voter_actions(x) for x in locals_]
        for v, acts in zip(voters, per_voter):
            b.set_protocol(v, name, acts)
        deciding = [i for i, x in enumerate(locals_) if x in _COERCER]
        if deciding:
            bundles = list(itertools.product(("np", "pun"), repeat=len(deciding)))
            coercer_acts = {_bundle_name(deciding, bundle): bundle for bundle in bundles}
        else:
            coercer_acts = {"wait": ()}
        b.set_protocol("c", name, coercer_acts)
        for joint in itertools.product(*per_voter):
            for c_name, bundle in coercer_acts.items():
                decision = dict(zip(deciding, bundle))
                nxt = []
                for i, (x, act) in enumerate(zip(locals_, joint)):
                    if i in decision:
                        nxt.append(_COERCER[x][decision[i]])
                    else:
                        nxt.append(_VOTER.get(x, {}).get(act, x))
                b.add_transition(name, [*joint, c_name], _state_name(tuple(nxt)))

    for i, v in enumerate(voters):
        groups: dict[int, list[str]] = {}
        for locals_ in product:
            groups.setdefault(locals_[i], []).append(_state_name(locals_))
        for members in groups.values():
            b.add_epistemic_block(v, members)
    groups = {}
    for locals_ in product:
        groups.setdefault(_coercer_key(locals_), []).append(_state_name(locals_))
    for members in groups.values():
        b.add_epistemic_block("c", members)
    return b.build()


def _bundle_name(deciding: list[int], bundle: tuple[str, ...]) -> str:
    return "-".join(f"{d}{i + 1}" for i, d in zip(deciding, bundle))


def phi1(i: int = 1) -> Formula:
    """The coercer can make sure voter ``i`` ends up voting 1 or punished."""
    return parse(f"<<c>> G ((finish_{i} & !pun_{i}) -> vote_{i}_1)")


def phi2(i: int = 1) -> Formula:
    """Voter ``i`` can finish unpunished without voting 1."""
    return parse(f"<<v{i}>> F (finish_{i} & !pun_{i} & !vote_{i}_1)")


def initial_state(k: int) -> str:
    return _state_name((0,) * k)
