import pytest

from atlapprox.bench import gen_bridge, BridgeInstance, m1, m_vote
from atlapprox.errors import ParseError
from atlapprox.icgs import validate
from atlapprox.modelfile import dump, dumps, load, loads

EXAMPLE = """\
# two states, one agent
agents: 1
states:
  q0
  q1 label: p
actions: a b
protocol:
  1 *: a b
  1 q1: a
transitions:
  q0 (a) -> q1
  q0 (b) -> q0
  q1 (a) -> q1
epistemic:
  1: {q0 q1}
"""


def same(a, b):
    return (a.agents, a.states, a.actions, a.labels, a.protocol, a.transitions,
            a.partitions) == (b.agents, b.states, b.actions, b.labels, b.protocol,
                              b.transitions, b.partitions)


def test_loads_example():
    m = loads(EXAMPLE)
    assert m.states == ("q0", "q1")
    assert m.names(m.labeling["p"]) == ["q1"]
    assert m.partitions[0] == (0b11,)
    report = validate(m)
    assert [v.kind for v in report.violations] == ["uniformity"]


@pytest.mark.parametrize("make", [m1, m_vote, lambda: gen_bridge(BridgeInstance(1, 1, 2))])
def test_round_trip(make):
    m = make()
    assert same(loads(dumps(m)), m)


def test_file_helpers(tmp_path):
    path = tmp_path / "m.txt"
    dump(m1(), path)
    assert same(load(path), m1())


@pytest.mark.parametrize("text,line", [
    ("q0\n", 1),
    ("agents: 1\nstates:\n  q0\nprotocol:\n  2 q0: a\n", 5),
    ("agents: 1\nstates:\n  q0\ntransitions:\n  q0 a -> q0\n", 5),
    ("agents: 1\nstates:\n  q0\ntransitions:\n  q0 (a) -> q9\n", 5),
    ("agents: 1\nstates:\n  q0\nepistemic:\n  1: q0\n", 5),
    ("agents:\nstates:\n  q0\n", 1),
])
def test_errors_point_at_the_line(text, line):
    with pytest.raises(ParseError) as err:
        loads(text)
    assert err.value.line == line
