"""Seeded random elements and machines for property checks."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import elements as el
from .transducer import Transducer, relabel

DEFAULT_WEIGHTS = {
    "id": 1,
    "x0": 3,
    "swap": 2,
    "fp": 2,
    "pex": 4,
    "pair": 3,
    "fix": 2,
    "comp": 3,
    "inv": 2,
}

_ATOMS = ("id", "x0", "swap", "fp", "pex")


@dataclass
class GeneratorSpec:
    seed: int = 0
    max_states: int = 8
    depth: int = 4
    weights: dict = field(default_factory=lambda: dict(DEFAULT_WEIGHTS))

    def rng(self, *salt) -> random.Random:
        return random.Random(":".join(str(s) for s in (self.seed,) + salt))


def random_code(rng: random.Random, size: int) -> list[str]:
    """Complete prefix code with ``size`` words, grown by random cone splits."""
    code = [""]
    while len(code) < size:
        w = code.pop(rng.randrange(len(code)))
        code += [w + "0", w + "1"]
    return sorted(code)


def random_exchange(rng: random.Random, max_size: int = 4) -> el.Element:
    size = rng.randint(2, max_size)
    dom = random_code(rng, size)
    rng_code = random_code(rng, size)
    rng.shuffle(rng_code)
    return el.prefix_exchange(list(zip(dom, rng_code)))


def _atom(rng: random.Random, weights: dict) -> el.Element:
    kinds = [k for k in _ATOMS if weights.get(k, 0) > 0]
    kind = rng.choices(kinds, [weights[k] for k in kinds])[0]
    if kind == "id":
        return el.identity()
    if kind == "x0":
        return el.x0()
    if kind == "swap":
        return el.swap()
    if kind == "fp":
        return el.fp(rng.choice((2, 3)))
    return random_exchange(rng)


def _node(rng: random.Random, depth: int, weights: dict) -> el.Element:
    if depth <= 1 or rng.random() < 0.3:
        return _atom(rng, weights)
    kinds = [k for k in ("pair", "fix", "comp", "inv") if weights.get(k, 0) > 0]
    kind = rng.choices(kinds, [weights[k] for k in kinds])[0]
    if kind == "pair":
        return el.pair(_node(rng, depth - 1, weights), _node(rng, depth - 1, weights))
    if kind == "fix":
        return el.fix(_node(rng, depth - 1, weights))
    if kind == "comp":
        return el.compose(_node(rng, depth - 1, weights), _node(rng, depth - 1, weights))
    return el.inverse(_node(rng, depth - 1, weights))


def gen_element(spec: GeneratorSpec, rng: random.Random | None = None) -> el.Element:
    """Random constructor-built element; depth 0 is the identity.

    Every generated element carries a backward machine.
    """
    if spec.depth <= 0:
        return el.identity()
    if rng is None:
        rng = spec.rng("element")
    return _node(rng, spec.depth, spec.weights)


def gen_machine(spec: GeneratorSpec, rng: random.Random | None = None,
                max_output: int = 2, min_states: int = 1) -> Transducer:
    """Random complete machine; not necessarily a homeomorphism."""
    if rng is None:
        rng = spec.rng("machine")
    n = rng.randint(min_states, max(min_states, spec.max_states))
    delta = [(rng.randrange(n), rng.randrange(n)) for _ in range(n)]
    output = [
        tuple("".join(rng.choice("01") for _ in range(rng.randint(0, max_output))) for _ in range(2))
        for _ in range(n)
    ]
    return Transducer(delta, output, rng.randrange(n))


# --- obfuscations preserving the induced map --------------------------------


def duplicate_state(T: Transducer, rng: random.Random) -> Transducer:
    """Copy a state and send a random subset of its incoming edges to the copy."""
    s = rng.randrange(T.num_states)
    new = T.num_states
    delta = [list(row) for row in T.delta] + [list(T.delta[s])]
    output = list(T.output) + [T.output[s]]
    for u in range(new + 1):
        for b in (0, 1):
            if delta[u][b] == s and rng.random() < 0.5:
                delta[u][b] = new
    return Transducer(delta, output, T.initial)


def delay_output(T: Transducer, rng: random.Random) -> Transducer:
    """Hold back one output bit at a non-initial state.

    With ``X(s) = c`` and ``X`` empty elsewhere, every edge ``u -> t`` gets
    output ``X(u) o(u, σ)`` with ``X(t)`` removed from the end.  This leaves
    the map on infinite sequences unchanged whenever every edge into ``s``
    ends with ``c`` after the prepend.
    """
    candidates = []
    for s in T.states:
        if s == T.initial:
            continue
        for c in "01":
            ok = all(
                ((c if u == s else "") + T.output[u][b]).endswith(c)
                for u in T.states for b in (0, 1) if T.delta[u][b] == s
            )
            if ok:
                candidates.append((s, c))
    if not candidates:
        return T
    s, c = rng.choice(candidates)
    output = []
    for u in T.states:
        row = []
        for b in (0, 1):
            o = (c if u == s else "") + T.output[u][b]
            if T.delta[u][b] == s:
                o = o[:-1]
            row.append(o)
        output.append(tuple(row))
    return Transducer(T.delta, output, T.initial)


def add_junk(T: Transducer, rng: random.Random, count: int = 2) -> Transducer:
    """Append unreachable states with random wiring."""
    delta = list(T.delta)
    output = list(T.output)
    for _ in range(count):
        total = len(delta) + 1
        delta.append((rng.randrange(total), rng.randrange(total)))
        output.append((rng.choice(["", "0", "1", "10"]), rng.choice(["", "0", "1", "01"])))
    return Transducer(delta, output, T.initial)


def shuffle_states(T: Transducer, rng: random.Random) -> Transducer:
    order = list(T.states)
    rng.shuffle(order)
    return relabel(T, order)


def obfuscate(T: Transducer, rng: random.Random, rounds: int = 4) -> Transducer:
    """Random map-preserving rewrites: duplicates, delays, junk, renaming."""
    for _ in range(rounds):
        step = rng.choice((duplicate_state, delay_output, duplicate_state, delay_output))
        T = step(T, rng)
    if rng.random() < 0.5:
        T = add_junk(T, rng, rng.randint(1, 2))
    return shuffle_states(T, rng)


def gen_homeomorphism_machine(spec: GeneratorSpec, rng: random.Random | None = None):
    """``(element, machine)`` where the machine is an obfuscated forward machine."""
    if rng is None:
        rng = spec.rng("homeomorphism")
    e = gen_element(spec, rng)
    return e, obfuscate(e.forward, rng)
