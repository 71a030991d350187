"""Asynchronous binary transducers: data model, evaluation, interchange.

A transducer is the quadruple ``(S, s0, t, o)``.  States are dense integers
``0 .. n-1``; optional string names are carried along only for display and
serialization.  Words are plain ``str`` objects over ``'0'`` and ``'1'``; the
empty string is the empty word.
"""

from __future__ import annotations

import json
import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

from .errors import MachineError, ParseError

BITS = "01"
EPSILON = "ε"

_WORD_RE = re.compile(r"[01]*\Z")


def is_word(w) -> bool:
    return isinstance(w, str) and _WORD_RE.match(w) is not None


def check_word(w) -> str:
    if not is_word(w):
        raise ValueError(f"not a binary word: {w!r}")
    return w


def lcp(a: str, b: str) -> str:
    """Longest common prefix of two words."""
    n = min(len(a), len(b))
    i = 0
    while i < n and a[i] == b[i]:
        i += 1
    return a[:i]


@dataclass(frozen=True)
class Transducer:
    """Complete deterministic binary transducer with word outputs.

    ``delta[s][b]`` is the target of state ``s`` on bit ``b`` and
    ``output[s][b]`` the word emitted.  Construction does not validate, so
    that :func:`validate` can report on broken machines; every evaluating
    function assumes a valid machine.
    """

    delta: tuple
    output: tuple
    initial: int = 0
    names: tuple | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "delta", tuple(tuple(row) for row in self.delta))
        object.__setattr__(self, "output", tuple(tuple(row) for row in self.output))
        if self.names is not None:
            object.__setattr__(self, "names", tuple(self.names))

    @property
    def num_states(self) -> int:
        return len(self.delta)

    @property
    def states(self) -> range:
        return range(len(self.delta))

    def name(self, s: int) -> str:
        if self.names is not None:
            return self.names[s]
        return f"s{s}"

    def step(self, s: int, bit: str) -> tuple[str, int]:
        b = int(bit)
        return self.output[s][b], self.delta[s][b]

    def edges(self):
        """Yield ``(source, bit, output, target)`` for every transition."""
        for s in self.states:
            for b in (0, 1):
                yield s, BITS[b], self.output[s][b], self.delta[s][b]

    def __call__(self, w: str) -> str:
        return eval_prefix(self, w)

    def with_initial(self, s: int) -> "Transducer":
        return Transducer(self.delta, self.output, s, self.names)

    @classmethod
    def from_table(cls, table: dict, initial) -> "Transducer":
        """Build from ``{state: {bit: (out, target)}}`` with arbitrary state labels.

        >>> T = Transducer.from_table({"q": {"0": ("0", "q"), "1": ("1", "q")}}, "q")
        >>> T("0110")
        '0110'
        """
        names = list(table)
        index = {n: i for i, n in enumerate(names)}
        delta, output = [], []
        for n in names:
            row = table[n]
            delta.append(tuple(index.get(row[b][1]) if b in row else None for b in BITS))
            output.append(tuple(row[b][0] if b in row else None for b in BITS))
        return cls(delta, output, index[initial], tuple(str(n) for n in names))


class Trajectory(NamedTuple):
    visited: tuple
    emitted: str
    final: int


def validate(T: Transducer) -> list[str]:
    """Return the list of invariant violations; empty means valid."""
    problems = []
    n = len(T.delta)
    if n == 0:
        return ["empty state set"]
    if len(T.output) != n:
        problems.append(f"output table has {len(T.output)} rows for {n} states")
    if not (isinstance(T.initial, int) and 0 <= T.initial < n):
        problems.append(f"initial state {T.initial!r} not in states")
    if T.names is not None:
        if len(T.names) != n:
            problems.append("state name list has wrong length")
        elif len(set(T.names)) != n:
            problems.append("duplicate state names")
    named = T.names is not None and len(T.names) == n
    for s in range(n):
        for b in (0, 1):
            label = f"({T.names[s] if named else f's{s}'}, {b})"
            row = T.delta[s]
            target = row[b] if len(row) == 2 else None
            if target is None:
                problems.append(f"missing transition {label}")
            elif not (isinstance(target, int) and 0 <= target < n):
                problems.append(f"dangling transition {label} -> {target!r}")
            orow = T.output[s] if s < len(T.output) else ()
            out = orow[b] if len(orow) == 2 else None
            if out is None:
                problems.append(f"missing output {label}")
            elif not is_word(out):
                problems.append(f"output {label} is not a binary word: {out!r}")
    return problems


def ensure_valid(T: Transducer) -> Transducer:
    problems = validate(T)
    if problems:
        raise MachineError(problems)
    return T


def run(T: Transducer, s: int, w: str) -> Trajectory:
    """Follow ``w`` from state ``s``; returns visited states, output and end state."""
    if not (isinstance(s, int) and 0 <= s < T.num_states):
        raise KeyError(f"unknown state {s!r}")
    visited = [s]
    emitted = []
    for ch in w:
        b = 1 if ch == "1" else 0
        emitted.append(T.output[s][b])
        s = T.delta[s][b]
        visited.append(s)
    return Trajectory(tuple(visited), "".join(emitted), s)


def output_from(T: Transducer, s: int, w: str) -> tuple[str, int]:
    """``(o(s, w), t(s, w))`` without recording the visited states."""
    out = []
    delta, output = T.delta, T.output
    for ch in w:
        b = 1 if ch == "1" else 0
        out.append(output[s][b])
        s = delta[s][b]
    return "".join(out), s


def eval_prefix(T: Transducer, w: str) -> str:
    """``o(s0, w)``: for every infinite tail, a prefix of the image of ``w`` + tail."""
    return output_from(T, T.initial, w)[0]


def accessible(T: Transducer) -> list[int]:
    """States reachable from the initial state, in BFS order (bit 0 first)."""
    seen = {T.initial}
    order = [T.initial]
    queue = deque(order)
    while queue:
        s = queue.popleft()
        for b in (0, 1):
            t = T.delta[s][b]
            if t not in seen:
                seen.add(t)
                order.append(t)
                queue.append(t)
    return order


def relabel(T: Transducer, order: list[int], keep_names: bool = False) -> Transducer:
    """Restrict to ``order`` (closed under transitions) and renumber in that order."""
    index = {s: i for i, s in enumerate(order)}
    delta = [(index[T.delta[s][0]], index[T.delta[s][1]]) for s in order]
    output = [T.output[s] for s in order]
    names = None
    if keep_names and T.names is not None:
        names = tuple(T.names[s] for s in order)
    return Transducer(delta, output, index[T.initial], names)


def isomorphic(A: Transducer, B: Transducer) -> bool:
    """Rooted isomorphism of the accessible parts, matching outputs exactly."""
    mapping = {A.initial: B.initial}
    used = {B.initial}
    queue = deque([A.initial])
    while queue:
        a = queue.popleft()
        b = mapping[a]
        if A.output[a] != B.output[b]:
            return False
        for bit in (0, 1):
            ta, tb = A.delta[a][bit], B.delta[b][bit]
            if ta in mapping:
                if mapping[ta] != tb:
                    return False
            else:
                if tb in used:
                    return False
                mapping[ta] = tb
                used.add(tb)
                queue.append(ta)
    return True


def words(length: int) -> Iterable[str]:
    """All binary words of exactly ``length`` symbols, in lexicographic order."""
    if length == 0:
        yield ""
        return
    for i in range(1 << length):
        yield format(i, f"0{length}b")


def words_upto(length: int) -> Iterable[str]:
    for n in range(length + 1):
        yield from words(n)


# --- interchange format -----------------------------------------------------


def to_dict(T: Transducer) -> dict:
    names = [T.name(s) for s in T.states]
    transitions = {}
    for s in T.states:
        transitions[names[s]] = {
            BITS[b]: {"out": T.output[s][b], "to": names[T.delta[s][b]]} for b in (0, 1)
        }
    return {"states": names, "initial": names[T.initial], "transitions": transitions}


def from_dict(data) -> Transducer:
    """Build a machine from the interchange object; raises :class:`MachineError`."""
    if not isinstance(data, dict):
        raise MachineError("machine must be an object")
    missing = [k for k in ("states", "initial", "transitions") if k not in data]
    if missing:
        raise MachineError([f"missing field {k!r}" for k in missing])
    states = data["states"]
    if not isinstance(states, list) or not all(isinstance(s, str) for s in states):
        raise MachineError("'states' must be a list of names")
    if not states:
        raise MachineError("empty state set")
    if len(set(states)) != len(states):
        raise MachineError("duplicate state names")
    index = {name: i for i, name in enumerate(states)}
    trans = data["transitions"]
    if not isinstance(trans, dict):
        raise MachineError("'transitions' must be an object")
    problems = []
    for name in trans:
        if name not in index:
            problems.append(f"transitions given for unknown state {name!r}")
    delta, output = [], []
    for name in states:
        row = trans.get(name, {})
        drow, orow = [None, None], [None, None]
        for b in (0, 1):
            edge = row.get(BITS[b]) if isinstance(row, dict) else None
            if edge is None:
                problems.append(f"missing transition ({name}, {b})")
                continue
            target = edge.get("to")
            if target not in index:
                problems.append(f"dangling transition ({name}, {b}) -> {target!r}")
            else:
                drow[b] = index[target]
            orow[b] = edge.get("out")
        delta.append(tuple(drow))
        output.append(tuple(orow))
    initial = data["initial"]
    if initial not in index:
        problems.append(f"initial state {initial!r} not in states")
    if problems:
        raise MachineError(problems)
    T = Transducer(delta, output, index[initial], tuple(states))
    return ensure_valid(T)


def _offset_to_linecol(text: str, offset: int) -> tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


def _syntax_check(text: str, data) -> None:
    """Bit keys must be '0'/'1' and outputs binary strings; report the location."""
    trans = data.get("transitions") if isinstance(data, dict) else None
    if not isinstance(trans, dict):
        return
    for row in trans.values():
        if not isinstance(row, dict):
            continue
        for key, edge in row.items():
            if key not in ("0", "1"):
                m = re.search(r'"%s"\s*:' % re.escape(key), text)
                line, col = _offset_to_linecol(text, m.start() if m else 0)
                raise ParseError(f"invalid input symbol {key!r}", line, col)
            out = edge.get("out") if isinstance(edge, dict) else None
            if not isinstance(out, str) or not is_word(out):
                pattern = r'"out"\s*:\s*' + re.escape(json.dumps(out))
                m = re.search(pattern, text)
                line, col = _offset_to_linecol(text, m.end() - len(json.dumps(out)) if m else 0)
                bad = next((c for c in str(out) if c not in "01"), out)
                raise ParseError(f"invalid output symbol {bad!r} in {out!r}", line, col)


def parse(text: str) -> Transducer:
    """Parse the JSON interchange format.

    Syntax problems raise :class:`ParseError` with a line and column;
    well-formed text describing a broken machine raises :class:`MachineError`.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    _syntax_check(text, data)
    return from_dict(data)


def serialize(T: Transducer) -> str:
    return json.dumps(to_dict(T), indent=2, ensure_ascii=False) + "\n"


def load(path) -> Transducer:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


# --- DOT export -------------------------------------------------------------


def _dot_id(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def edge_label(bit: str, out: str) -> str:
    return f"{bit}|{out or EPSILON}"


def to_dot(T: Transducer, name: str = "transducer") -> str:
    """Render the state diagram; edges sharing source and target are merged.

    Each edge carries ``bit|output`` labels, with the empty output drawn as
    ``ε``; the initial state gets an incoming arrow from an invisible node.
    """
    lines = [f"digraph {_dot_id(name)} {{", "  rankdir=LR;", '  __start [shape=point, label=""];']
    for s in T.states:
        shape = "doublecircle" if s == T.initial else "circle"
        lines.append(f"  {_dot_id(T.name(s))} [shape={shape}];")
    lines.append(f"  __start -> {_dot_id(T.name(T.initial))};")
    for s in T.states:
        targets = {}
        for b in (0, 1):
            targets.setdefault(T.delta[s][b], []).append(edge_label(BITS[b], T.output[s][b]))
        for t, labels in targets.items():
            label = "\\n".join(labels)
            lines.append(f'  {_dot_id(T.name(s))} -> {_dot_id(T.name(t))} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
