"""Onward form, minimization and restrictions.

The canonical form of a rational homeomorphism is its trimmed, onward,
minimized transducer, renumbered in BFS order from the initial state.  Two
machines induce the same map exactly when their canonical forms coincide,
and the states of the canonical form are the distinct restrictions of the
map.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from .errors import DivergenceError, InitialResidueError
from .transducer import (
    Transducer,
    accessible,
    isomorphic,
    lcp,
    output_from,
    relabel,
    words,
)


class CanonicalForm(NamedTuple):
    machine: Transducer
    restriction_count: int


class RestrictionResult(NamedTuple):
    prefix_out: str
    machine: CanonicalForm


def default_bound(T: Transducer) -> int:
    longest = max((len(o) for row in T.output for o in row), default=0)
    return T.num_states * (1 + longest) + 1


def _reachable_from(T: Transducer, s: int) -> list[int]:
    return accessible(T.with_initial(s))


def lcp_table(T: Transducer, states=None, bound: int | None = None) -> dict[int, str]:
    """Least fixpoint of ``L(s) = lcp(o(s,0) L(t(s,0)), o(s,1) L(t(s,1)))``.

    ``states`` must be closed under transitions (defaults to the accessible
    states).  Iteration starts from the empty word everywhere; a value longer
    than ``bound`` raises :class:`DivergenceError`.
    """
    if states is None:
        states = accessible(T)
    if bound is None:
        bound = default_bound(T)
    L = {s: "" for s in states}
    preds = defaultdict(set)
    for s in states:
        for b in (0, 1):
            preds[T.delta[s][b]].add(s)
    pending = list(states)
    queued = set(pending)
    while pending:
        s = pending.pop()
        queued.discard(s)
        (o0, o1), (t0, t1) = T.output[s], T.delta[s]
        new = lcp(o0 + L[t0], o1 + L[t1])
        if new == L[s]:
            continue
        if len(new) > bound:
            raise DivergenceError(
                f"common output prefix at state {T.name(s)} exceeds bound {bound}; "
                "the machine does not induce an injective map"
            )
        L[s] = new
        for p in preds[s]:
            if p not in queued:
                queued.add(p)
                pending.append(p)
    return L


def lcp_from_state(T: Transducer, s: int, bound: int | None = None) -> str:
    """Longest common prefix of all infinite outputs read from state ``s``."""
    return lcp_table(T, _reachable_from(T, s), bound)[s]


def trim(T: Transducer) -> Transducer:
    """Drop states that cannot be reached from the initial state."""
    return relabel(T, sorted(accessible(T)), keep_names=True)


def make_onward(T: Transducer, bound: int | None = None) -> Transducer:
    """Move every output as early as possible.

    Each accessible edge ``s --σ--> t`` gets output ``L(s)^-1 o(s,σ) L(t)``,
    after which every accessible state has empty common prefix.
    """
    L = lcp_table(T, bound=bound)
    if L[T.initial]:
        raise InitialResidueError(
            f"initial state has common output prefix {L[T.initial]!r}; "
            "the induced map is not onto"
        )
    output = [list(row) for row in T.output]
    for s, prefix in L.items():
        for b in (0, 1):
            full = T.output[s][b] + L[T.delta[s][b]]
            assert full.startswith(prefix)
            output[s][b] = full[len(prefix):]
    return Transducer(T.delta, output, T.initial, T.names)


def _refine(T: Transducer) -> list[int]:
    """Coarsest partition compatible with one-step outputs and successor classes."""
    n = T.num_states
    keys = {}
    cls = [keys.setdefault(T.output[s], len(keys)) for s in range(n)]
    count = len(keys)
    while True:
        keys = {}
        new = []
        for s in range(n):
            (t0, t1) = T.delta[s]
            sig = (cls[s], cls[t0], cls[t1])
            new.append(keys.setdefault(sig, len(keys)))
        if len(keys) == count:
            return new
        cls, count = new, len(keys)


def _quotient(T: Transducer, cls: list[int]) -> Transducer:
    rep = {}
    for s in range(T.num_states):
        rep.setdefault(cls[s], s)
    k = len(rep)
    delta = [None] * k
    output = [None] * k
    for c, s in rep.items():
        delta[c] = (cls[T.delta[s][0]], cls[T.delta[s][1]])
        output[c] = T.output[s]
    return Transducer(delta, output, cls[T.initial])


@lru_cache(maxsize=4096)
def _minimize(T: Transducer, bound) -> CanonicalForm:
    trimmed = trim(T)
    onward = make_onward(trimmed, bound)
    quotient = _quotient(onward, _refine(onward))
    machine = relabel(quotient, accessible(quotient))
    return CanonicalForm(machine, machine.num_states)


def minimize(T: Transducer, bound: int | None = None) -> CanonicalForm:
    """Canonical form: trimmed, onward, minimized, states numbered in BFS order."""
    return _minimize(T, bound)


def canonical(T: Transducer) -> Transducer:
    return minimize(T).machine


def equal(A: Transducer, B: Transducer) -> bool:
    """Do ``A`` and ``B`` induce the same map on infinite sequences?"""
    return isomorphic(canonical(A), canonical(B))


def restriction(T: Transducer, alpha: str) -> RestrictionResult:
    """``f(alpha w) = beta f|alpha(w)``; returns ``beta`` and the canonical ``f|alpha``."""
    C = canonical(T)
    beta, q = output_from(C, C.initial, alpha)
    return RestrictionResult(beta, minimize(C.with_initial(q)))


def num_restrictions(T: Transducer) -> int:
    return minimize(T).restriction_count


class ProbeReport(NamedTuple):
    ok: bool
    reason: str


def probe_bijective(T: Transducer, depth: int) -> ProbeReport:
    """Bounded-depth bijectivity evidence, not a decision procedure.

    The images of the ``2**depth`` cones of length ``depth`` must have
    pairwise prefix-incomparable common prefixes whose cones exactly tile
    the space.  Divergence of the common-prefix fixpoint is reported as a
    failure.
    """
    try:
        C = canonical(T)
    except (DivergenceError, InitialResidueError) as exc:
        return ProbeReport(False, str(exc))
    images = sorted(output_from(C, C.initial, w)[0] for w in words(depth))
    for a, b in zip(images, images[1:]):
        if b.startswith(a):
            return ProbeReport(False, f"cone images {a!r} and {b!r} overlap")
    mass = sum(Fraction(1, 2 ** len(c)) for c in images)
    if mass != 1:
        return ProbeReport(False, f"cone images cover measure {mass}, not 1")
    return ProbeReport(True, "ok")
