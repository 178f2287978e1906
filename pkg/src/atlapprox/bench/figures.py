"""The small hand-drawn models: three counterexamples to the naive fixpoint
translations, one to the steadfast one, and the voting-and-coercion toy."""

from __future__ import annotations

from ..icgs import Model, ModelBuilder


def m0() -> Model:
    """Two looping states agent 1 cannot tell apart; ``p`` holds at q0 only."""
    b = ModelBuilder(["1"], ["a"])
    b.add_state("q0", ["p"])
    b.add_state("q1")
    for q in ("q0", "q1"):
        b.set_protocol("1", q, ["a"])
        b.add_transition(q, ["a"], q)
    b.add_epistemic_block("1", ["q0", "q1"])
    return b.build()


def m1() -> Model:
    """Ten states; two agents must coordinate on the bottom row, where the
    required joint actions cannot be made uniform all at once."""
    b = ModelBuilder(["1", "2"], ["i", "a", "b", "x", "y"])
    for name in ("q0", "t1", "t2", "t3", "q1", "q2", "q3", "q4"):
        b.add_state(name)
    b.add_state("fin", ["p"])
    b.add_state("sink")

    idle = ["q0", "t1", "t2", "t3", "fin", "sink"]
    for q in idle:
        b.set_protocol("1", q, ["i"])
        b.set_protocol("2", q, ["i"])
    for src, dst in (("q0", "q1"), ("t2", "q2"), ("t3", "q3"), ("t1", "q4"), ("fin", "fin"),
                     ("sink", "sink")):
        b.add_transition(src, ["i", "i"], dst)

    winning = {
        "q1": {("a", "x")},
        "q2": {("a", "x"), ("b", "y")},
        "q3": {("a", "x"), ("b", "y")},
        "q4": {("b", "y")},
    }
    for q, good in winning.items():
        b.set_protocol("1", q, ["a", "b"])
        b.set_protocol("2", q, ["x", "y"])
        for x1 in ("a", "b"):
            for x2 in ("x", "y"):
                b.add_transition(q, [x1, x2], "fin" if (x1, x2) in good else "sink")

    b.add_epistemic_block("1", ["q0", "t1", "t2", "t3"])
    b.add_epistemic_block("1", ["q1", "q2"])
    b.add_epistemic_block("1", ["q3", "q4"])
    b.add_epistemic_block("2", ["q2", "q3"])
    return b.build()


def _three_states(q1_loops: bool) -> Model:
    b = ModelBuilder(["1"], ["a"])
    b.add_state("q0")
    b.add_state("q1", ["p"] if q1_loops else [])
    b.add_state("q2", ["p"])
    for q in ("q0", "q1", "q2"):
        b.set_protocol("1", q, ["a"])
    b.add_transition("q0", ["a"], "q2")
    b.add_transition("q1", ["a"], "q1" if q1_loops else "q0")
    b.add_transition("q2", ["a"], "q2")
    b.add_epistemic_block("1", ["q0", "q1"])
    return b.build()


def m2() -> Model:
    """q1 -> q0 -> q2, with q0 ~1 q1 and ``p`` at q2."""
    return _three_states(q1_loops=False)


def m3() -> Model:
    """Like :func:`m2` but q1 loops and is itself labeled ``p``."""
    return _three_states(q1_loops=True)


def m_vote() -> Model:
    """One voter ``v`` and the coercer ``c``; 11 states q0..q10."""
    b = ModelBuilder(["v", "c"], ["vote1", "vote2", "give", "ng", "pun", "np", "wait"])
    labels = {
        "q1": ["vote1"], "q2": ["vote2"],
        "q3": ["vote1"], "q4": ["vote1"], "q5": ["vote2"], "q6": ["vote2"],
        "q7": ["vote1", "pun"], "q8": ["vote1", "pun"],
        "q9": ["vote2", "pun"], "q10": ["vote2", "pun"],
    }
    for i in range(11):
        b.add_state(f"q{i}", labels.get(f"q{i}", []))
    for i in range(11):
        q = f"q{i}"
        if i == 0:
            b.set_protocol("v", q, ["vote1", "vote2"])
        elif i in (1, 2):
            b.set_protocol("v", q, ["give", "ng"])
        else:
            b.set_protocol("v", q, ["wait"])
        b.set_protocol("c", q, ["pun", "np"] if 3 <= i <= 6 else ["wait"])

    b.add_transition("q0", ["vote1", "wait"], "q1")
    b.add_transition("q0", ["vote2", "wait"], "q2")
    b.add_transition("q1", ["give", "wait"], "q3")
    b.add_transition("q1", ["ng", "wait"], "q4")
    b.add_transition("q2", ["give", "wait"], "q6")
    b.add_transition("q2", ["ng", "wait"], "q5")
    for src, dst in (("q3", "q7"), ("q4", "q8"), ("q5", "q9"), ("q6", "q10")):
        b.add_transition(src, ["wait", "pun"], dst)
        b.add_transition(src, ["wait", "np"], src)
    for i in range(7, 11):
        b.add_transition(f"q{i}", ["wait", "wait"], f"q{i}")

    b.add_epistemic_block("c", ["q1", "q2"])
    b.add_epistemic_block("c", ["q4", "q5"])
    b.add_epistemic_block("c", ["q8", "q9"])
    return b.build()
