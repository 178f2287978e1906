"""Plain-text model files.

::

    # comments run to the end of the line
    agents: 1, 2
    states:
      q0 label: p
      q1
    actions: a b x y        # optional, fixes declaration order
    protocol:
      1 *: a                # default for every state
      1 q1: a b
      2 *: x y
    transitions:
      q0 (a, x) -> q1
    epistemic:
      1: {q0 q1}

The first declared state is the initial one.
"""

from __future__ import annotations

import re
from pathlib import Path

from .errors import ParseError
from .icgs import Model, ModelBuilder

SECTIONS = ("agents", "states", "actions", "protocol", "transitions", "epistemic")

_HEADER = re.compile(r"^(\w+)\s*:(.*)$")
_TRANSITION = re.compile(r"^(\S+)\s*\(([^)]*)\)\s*->\s*(\S+)$")
_PROTOCOL = re.compile(r"^(\S+)\s+(\S+)\s*:(.*)$")
_STATE = re.compile(r"^(\S+)(?:\s+labels?\s*:(.*))?$")
_EPISTEMIC = re.compile(r"^(\S+)\s*:(.*)$")


def _names(text: str) -> list[str]:
    return [t for t in re.split(r"[\s,]+", text.strip()) if t]


def loads(text: str) -> Model:
    sections: dict[str, list[tuple[int, str]]] = {s: [] for s in SECTIONS}
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _HEADER.match(line)
        if m and m.group(1) in SECTIONS and not _looks_like_entry(current, line):
            current = m.group(1)
            rest = m.group(2).strip()
            if rest:
                sections[current].append((lineno, rest))
            continue
        if current is None:
            raise ParseError(f"expected a section header, found {line!r}", lineno, 1)
        sections[current].append((lineno, line))

    agents = [a for _, line in sections["agents"] for a in _names(line)]
    if not agents:
        raise ParseError("no agents declared", 1, 1)
    b = ModelBuilder(agents)
    for _, line in sections["actions"]:
        for x in _names(line):
            b.add_action(x)

    for lineno, line in sections["states"]:
        m = _STATE.match(line)
        if not m:
            raise ParseError(f"bad state line {line!r}", lineno, 1)
        b.add_state(m.group(1), _names(m.group(2) or ""))
    if not b.states:
        raise ParseError("no states declared", 1, 1)

    defaults: dict[str, list[str]] = {}
    explicit = []
    for lineno, line in sections["protocol"]:
        m = _PROTOCOL.match(line)
        if not m:
            raise ParseError(f"bad protocol line {line!r}", lineno, 1)
        agent, state, acts = m.group(1), m.group(2), _names(m.group(3))
        if agent not in agents:
            raise ParseError(f"unknown agent {agent!r}", lineno, 1)
        if state == "*":
            defaults[agent] = acts
        else:
            explicit.append((lineno, agent, state, acts))
    for agent, acts in defaults.items():
        for state in b.states:
            b.set_protocol(agent, state, acts)
    for lineno, agent, state, acts in explicit:
        _guard(lineno, b.set_protocol, agent, state, acts)

    for lineno, line in sections["transitions"]:
        m = _TRANSITION.match(line)
        if not m:
            raise ParseError(f"bad transition line {line!r}", lineno, 1)
        _guard(lineno, b.add_transition, m.group(1), _names(m.group(2)), m.group(3))

    for lineno, line in sections["epistemic"]:
        m = _EPISTEMIC.match(line)
        if not m:
            raise ParseError(f"bad epistemic line {line!r}", lineno, 1)
        agent, rest = m.group(1), m.group(2)
        if agent not in agents:
            raise ParseError(f"unknown agent {agent!r}", lineno, 1)
        blocks = re.findall(r"\{([^}]*)\}", rest)
        if re.sub(r"\{[^}]*\}", "", rest).strip():
            raise ParseError(f"epistemic blocks must be written as {{...}}: {rest.strip()!r}", lineno, 1)
        for block in blocks:
            _guard(lineno, b.add_epistemic_block, agent, _names(block))
    return b.build()


def _looks_like_entry(current, line: str) -> bool:
    # "1: {q0 q1}" inside epistemic is an entry even if 1 were a section name
    return current == "epistemic" and "{" in line


def _guard(lineno: int, fn, *args) -> None:
    try:
        fn(*args)
    except Exception as exc:  # ModelError from the builder
        raise ParseError(str(exc), lineno, 1) from exc


def load(path: str | Path) -> Model:
    return loads(Path(path).read_text(encoding="utf-8"))


def dumps(model: Model) -> str:
    lines = [f"agents: {', '.join(model.agents)}", "states:"]
    for q, name in enumerate(model.states):
        labels = sorted(p for p, bits in model.labels.items() if bits >> q & 1)
        lines.append(f"  {name} label: {' '.join(labels)}" if labels else f"  {name}")
    lines.append(f"actions: {' '.join(model.actions)}")
    lines.append("protocol:")
    for a, agent in enumerate(model.agents):
        for q, name in enumerate(model.states):
            acts = " ".join(model.actions[x] for x in model.protocol[a][q])
            lines.append(f"  {agent} {name}: {acts}")
    lines.append("transitions:")
    for q, name in enumerate(model.states):
        for joint, target in sorted(model.transitions[q].items()):
            acts = ", ".join(model.actions[x] for x in joint)
            lines.append(f"  {name} ({acts}) -> {model.states[target]}")
    lines.append("epistemic:")
    for a, agent in enumerate(model.agents):
        blocks = [m for m in model.partitions[a] if m & (m - 1)]
        if blocks:
            lines.append(f"  {agent}: " + " ".join("{" + " ".join(model.names(m)) + "}" for m in blocks))
    return "\n".join(lines) + "\n"


def dump(model: Model, path: str | Path) -> None:
    Path(path).write_text(dumps(model), encoding="utf-8")
