import pytest

from atlapprox.bench import m0, m1, m2, m_vote
from atlapprox.errors import ModelError
from atlapprox.icgs import (
    Model, ModelBuilder, UniformAssignment, assignment_slots, common_class,
    count_assignments, enumerate_assignments, epistemic_class, everybody_class,
    is_lockstep, restrict, validate,
)
from atlapprox.stateset import StateSet


def names(model, s):
    return set(model.names(s))


def two_agent_chain():
    # 1 confuses a~b, 2 confuses b~c: E is not transitive, C joins all three
    b = ModelBuilder(["1", "2"], ["x"])
    for q in "abcd":
        b.add_state(q)
        b.set_protocol("1", q, ["x"])
        b.set_protocol("2", q, ["x"])
        b.add_transition(q, ["x", "x"], q)
    b.add_epistemic_block("1", ["a", "b"])
    b.add_epistemic_block("2", ["b", "c"])
    return b.build()


def test_builder_interns_and_merges_blocks():
    b = ModelBuilder(["1"])
    for q in ("q0", "q1", "q2"):
        b.add_state(q, ["p"] if q == "q2" else [])
        b.set_protocol("1", q, ["go"])
        b.add_transition(q, ["go"], "q0")
    b.add_epistemic_block("1", ["q0", "q1"])
    b.add_epistemic_block("1", ["q1", "q2"])
    m = b.build()
    assert validate(m).ok
    assert m.partitions[0] == (0b111,)
    assert names(m, m.labeling["p"]) == {"q2"}


def test_builder_rejects_unknown_names():
    b = ModelBuilder(["1"])
    b.add_state("q0")
    with pytest.raises(ModelError):
        b.set_protocol("2", "q0", ["a"])
    with pytest.raises(ModelError):
        b.add_transition("q9", ["a"], "q0")
    with pytest.raises(ModelError):
        b.add_transition("q0", ["a", "b"], "q0")


def test_validate_reports_each_kind():
    b = ModelBuilder(["1"], ["a", "b"])
    b.add_state("q0")
    b.add_state("q1")
    b.set_protocol("1", "q0", ["a", "b"])
    b.set_protocol("1", "q1", ["a"])
    b.add_transition("q0", ["a"], "q1")
    b.add_transition("q1", ["a"], "q1")
    b.add_epistemic_block("1", ["q0", "q1"])
    report = validate(b.build())
    kinds = {v.kind for v in report.violations}
    assert kinds == {"totality", "uniformity"}
    assert not report.ok


def test_validate_partition_and_empty_protocol():
    m = Model(["1"], ["q0", "q1"], ["a"], {}, [[(0,), ()]], [{(0,): 0}, {}], [[0b01]])
    kinds = [v.kind for v in validate(m).violations]
    assert "protocol" in kinds and "partition" in kinds


def test_figures_are_valid():
    for make in (m0, m1, m2, m_vote):
        assert validate(make()).ok


def test_neighborhoods():
    m = two_agent_chain()
    assert names(m, epistemic_class(m, "1", "b")) == {"a", "b"}
    assert names(m, everybody_class(m, ["1", "2"], "b")) == {"a", "b", "c"}
    assert names(m, everybody_class(m, ["1", "2"], "a")) == {"a", "b"}
    assert names(m, common_class(m, ["1", "2"], "a")) == {"a", "b", "c"}
    assert names(m, common_class(m, ["1", "2"], "d")) == {"d"}
    # empty coalition: reflexive only
    assert names(m, everybody_class(m, [], "a")) == {"a"}
    assert names(m, common_class(m, [], "a")) == {"a"}


def test_lockstep_ignores_self_loops():
    assert is_lockstep(m0(), "1")  # both states only loop
    assert not is_lockstep(m2(), "1")  # q1 -> q0 inside the block


def test_assignment_enumeration_order_and_count():
    m = m1()
    dom = m.stateset(["q1", "q2", "q3", "q4"])
    got = list(enumerate_assignments(m, ["1", "2"], dom))
    # agent 1: blocks {q1,q2}, {q3,q4}; agent 2: {q1}, {q2,q3}, {q4}
    assert len(got) == count_assignments(m, ["1", "2"], dom) == 2 ** 5
    assert all(s.is_uniform(m) for s in got)
    first = got[0].to_names(m)
    assert set(first.values()) == {"a", "x"}


def test_assignment_domain_must_be_block_closed():
    m = m1()
    with pytest.raises(ModelError):
        assignment_slots(m, m.coalition(["1"]), m.stateset(["q1"]).bits)


def test_uniformity_check_and_restrict():
    m = m2()
    s = UniformAssignment.from_names(m, ["1"], {("1", "q0"): "a", ("1", "q1"): "a"})
    assert s.is_uniform(m)
    succ = restrict(m, s)
    assert names(m, succ[m.state_id("q1")]) == {"q0"}
    bad = UniformAssignment.from_names(m1(), ["1"], {("1", "q1"): "a", ("1", "q2"): "b"})
    assert not bad.is_uniform(m1())
    with pytest.raises(ModelError):
        UniformAssignment.from_names(m, ["1"], {("2", "q0"): "a"})


def test_moves_collect_outcomes_of_opponents():
    m = m1()
    moves = m.moves(m.coalition(["1"]))
    q2 = m.state_id("q2")
    fin, sink = m.state_id("fin"), m.state_id("sink")
    a = m.action_index["a"]
    assert moves[q2][(a,)] == (1 << fin) | (1 << sink)


def test_constant_assignment():
    m = m0()
    s = UniformAssignment.constant(m, ["1"], {"1": "a"}, StateSet.full(m.n))
    assert s.domain == 0b11 and s.is_uniform(m)
