"""Cycle structure of transducers: SCC periods, obliviousness, output rates."""

from __future__ import annotations

import heapq
from collections import deque
from fractions import Fraction
from math import gcd
from typing import NamedTuple

from .elements import is_prime
from .transducer import Transducer, accessible


def _machine(T):
    return getattr(T, "forward", T)


class SCCInfo(NamedTuple):
    states: tuple
    period: int
    min_output_per_cycle: int
    has_empty_output_cycle: bool


class CycleReport(NamedTuple):
    sccs: list
    accessible_count: int


class LipschitzReport(NamedTuple):
    min_ratio: Fraction
    max_ratio: Fraction
    has_empty_output_cycle: bool


def accessible_states(T: Transducer) -> set[int]:
    return set(accessible(_machine(T)))


def strongly_connected_components(T: Transducer, states=None) -> list[list[int]]:
    """Tarjan's algorithm, iterative; components come out in reverse topological order."""
    if states is None:
        states = accessible(T)
    allowed = set(states)
    index, low = {}, {}
    on_stack = set()
    stack: list[int] = []
    result = []
    counter = 0
    for root in sorted(allowed):
        if root in index:
            continue
        work = [(root, 0)]
        while work:
            v, i = work.pop()
            if i == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack.add(v)
            if i < 2:
                work.append((v, i + 1))
                w = T.delta[v][i]
                if w not in allowed:
                    continue
                if w not in index:
                    work.append((w, 0))
                elif w in on_stack:
                    low[v] = min(low[v], index[w])
                continue
            # both successors done
            for w in T.delta[v]:
                if w in on_stack and w in allowed:
                    low[v] = min(low[v], low[w])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                result.append(sorted(comp))
    return result


def _internal_edges(T: Transducer, comp) -> list[tuple[int, int, int]]:
    """``(u, v, output length)`` for every edge inside ``comp``."""
    members = set(comp)
    return [
        (u, T.delta[u][b], len(T.output[u][b]))
        for u in comp
        for b in (0, 1)
        if T.delta[u][b] in members
    ]


def scc_period(T: Transducer, comp) -> int:
    """gcd of all cycle lengths through ``comp``, from BFS levels."""
    edges = _internal_edges(T, comp)
    if not edges:
        return 0
    adj = {u: [] for u in comp}
    for u, v, _ in edges:
        adj[u].append(v)
    level = {comp[0]: 0}
    queue = deque([comp[0]])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v not in level:
                level[v] = level[u] + 1
                queue.append(v)
    g = 0
    for u, v, _ in edges:
        g = gcd(g, abs(level[u] + 1 - level[v]))
    return g


def _min_cycle_weight(comp, edges) -> int:
    """Least total output length over the cycles of one component (Dijkstra)."""
    adj = {u: [] for u in comp}
    into = {u: [] for u in comp}
    for u, v, w in edges:
        adj[u].append((v, w))
        into[v].append((u, w))
    best = None
    for src in comp:
        dist = {src: 0}
        heap = [(0, src)]
        while heap:
            d, u = heapq.heappop(heap)
            if d > dist.get(u, d):
                continue
            for v, w in adj[u]:
                nd = d + w
                if nd < dist.get(v, nd + 1):
                    dist[v] = nd
                    heapq.heappush(heap, (nd, v))
        for u, w in into[src]:
            if u in dist:
                total = dist[u] + w
                if best is None or total < best:
                    best = total
    return best


def analyze_cycles(T: Transducer) -> CycleReport:
    """Period and output statistics of every accessible SCC that has an edge."""
    T = _machine(T)
    acc = accessible(T)
    infos = []
    for comp in strongly_connected_components(T, acc):
        edges = _internal_edges(T, comp)
        if not edges:
            continue
        least = _min_cycle_weight(comp, edges)
        infos.append(SCCInfo(tuple(comp), scc_period(T, comp), least, least == 0))
    infos.sort(key=lambda info: info.states)
    return CycleReport(infos, len(acc))


def is_oblivious(T: Transducer, p: int) -> bool:
    """Some accessible cycle has length not divisible by ``p``."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return any(info.period % p for info in analyze_cycles(T).sccs)


def _karp(comp, edges, sign: int) -> Fraction:
    """Minimum mean edge weight over cycles of a strongly connected component."""
    k = len(comp)
    pos = {u: i for i, u in enumerate(comp)}
    INF = None
    D = [[INF] * k for _ in range(k + 1)]
    D[0][0] = 0
    for i in range(1, k + 1):
        prev, cur = D[i - 1], D[i]
        for u, v, w in edges:
            a = prev[pos[u]]
            if a is None:
                continue
            val = a + sign * w
            j = pos[v]
            if cur[j] is None or val < cur[j]:
                cur[j] = val
    best = None
    for v in range(k):
        if D[k][v] is None:
            continue
        worst = None
        for i in range(k):
            if D[i][v] is None:
                continue
            val = Fraction(D[k][v] - D[i][v], k - i)
            if worst is None or val > worst:
                worst = val
        if worst is not None and (best is None or worst < best):
            best = worst
    return best


def lipschitz_report(T: Transducer) -> LipschitzReport:
    """Extreme ratios of output length to cycle length over accessible cycles.

    The minimum and maximum mean are attained on simple cycles, so they are
    computed exactly with Karp's algorithm instead of enumerating cycles.
    An empty-output cycle is evidence against bilipschitz, not a proof.
    """
    T = _machine(T)
    lo = hi = None
    empty = False
    for comp in strongly_connected_components(T, accessible(T)):
        edges = _internal_edges(T, comp)
        if not edges:
            continue
        cmin = _karp(comp, edges, 1)
        cmax = -_karp(comp, edges, -1)
        lo = cmin if lo is None else min(lo, cmin)
        hi = cmax if hi is None else max(hi, cmax)
        empty = empty or cmin == 0
    return LipschitzReport(lo, hi, empty)


class CycleLimitExceeded(RuntimeError):
    pass


def simple_cycles(T: Transducer, limit: int = 10**5):
    """Enumerate accessible simple cycles as lists of ``(state, bit)`` edges.

    Each cycle is reported once, rooted at its smallest state.  More than
    ``limit`` cycles raises :class:`CycleLimitExceeded`.
    """
    T = _machine(T)
    acc = sorted(accessible(T))
    found = []
    for start in acc:
        path: list[tuple[int, int]] = []
        on_path = {start}

        def walk(u):
            for b in (0, 1):
                v = T.delta[u][b]
                if v < start:
                    continue
                path.append((u, b))
                if v == start:
                    found.append(list(path))
                    if len(found) > limit:
                        raise CycleLimitExceeded(f"more than {limit} simple cycles")
                elif v not in on_path:
                    on_path.add(v)
                    walk(v)
                    on_path.discard(v)
                path.pop()

        walk(start)
    return found
