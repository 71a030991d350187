"""Seeded property suites checking the constructive identities of the rational group.

Each suite returns a :class:`SuiteResult`; a failing case carries a witness
(a counterexample word or machines in the interchange format) for replay.
"""

from __future__ import annotations

import json
import time
from functools import reduce
from dataclasses import dataclass, field
from typing import Callable

from . import elements as el
from .cycles import analyze_cycles, is_oblivious, simple_cycles
from .generators import GeneratorSpec, gen_element, gen_homeomorphism_machine, gen_machine, obfuscate
from .normalization import canonical, equal, minimize, restriction
from .transducer import Transducer, isomorphic, lcp, output_from, to_dict, words_upto

PRIMES = (2, 3, 5, 7, 11, 13)


@dataclass
class CaseResult:
    name: str
    passed: bool
    witness: str | None = None


@dataclass
class SuiteResult:
    suite: str
    cases: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)

    @property
    def failures(self) -> list:
        return [c for c in self.cases if not c.passed]

    def add(self, name: str, passed: bool, witness=None):
        self.cases.append(CaseResult(name, bool(passed), None if passed else witness))

    def summary(self, timing: bool = False) -> str:
        n = len(self.cases)
        bad = len(self.failures)
        status = "PASS" if bad == 0 else "FAIL"
        line = f"{status} {self.suite}: {n - bad}/{n} cases"
        return line + (f" ({self.seconds:.2f}s)" if timing else "")

    def to_dict(self, timing: bool = False) -> dict:
        data = {
            "suite": self.suite,
            "passed": self.passed,
            "cases": len(self.cases),
            "failures": [{"name": c.name, "witness": c.witness} for c in self.failures],
        }
        if timing:
            data["seconds"] = round(self.seconds, 3)
        return data


def _machines_witness(**machines: Transducer) -> str:
    return json.dumps({k: to_dict(v) for k, v in machines.items()}, sort_keys=True)


def _same(a: el.Element, b: el.Element, label: str, result: SuiteResult, **extra):
    ok = equal(a.forward, b.forward)
    result.add(label, ok, None if ok else _machines_witness(left=a.forward, right=b.forward, **extra))
    return ok


def _elements(seed: int, count: int, tag: str, depth: int = 4):
    spec = GeneratorSpec(seed=seed, depth=depth)
    return [gen_element(spec, spec.rng(tag, i)) for i in range(count)]


def _fixed_elements():
    return [("x0", el.x0()), ("swap", el.swap()), ("fp(2)", el.fp(2)), ("fp(3)", el.fp(3))]


# --- suites ------------------------------------------------------------------


def suite_hilbert(seed: int = 0, count: int = 50, **_) -> SuiteResult:
    """fix(f) == pair(f, fix(f))."""
    result = SuiteResult("hilbert")
    cases = _fixed_elements() + [(f"gen[{i}]", e) for i, e in enumerate(_elements(seed, count, "hilbert"))]
    for name, f in cases:
        g = el.fix(f)
        _same(g, el.pair(f, g), f"{name} = {f}", result)
    return result


def commutator_sides(g: el.Element):
    """``(f, x0^-1 k x0 k^-1)`` for ``f = ((1, g), 1)``, ``h = fix(g)``, ``k = (1, h)``."""
    one = el.identity()
    f = el.pair(el.pair(one, g), one)
    k = el.pair(one, el.fix(g))
    x = el.x0()
    rhs = el.compose(el.compose(el.compose(el.inverse(x), k), x), el.inverse(k))
    return f, rhs


def suite_commutator(seed: int = 0, count: int = 50, **_) -> SuiteResult:
    result = SuiteResult("commutator")
    for i, g in enumerate(_elements(seed, count, "commutator")):
        f, rhs = commutator_sides(g)
        _same(f, rhs, f"g[{i}] = {g}", result)
    return result


def simplicity_sides(g: el.Element, h: el.Element, f1: el.Element | None = None):
    """``([g', (h,1)], ([g,h], 1))`` with ``g' = (g,1) f1 (g,1)^-1 f1^-1``."""
    if f1 is None:
        f1 = el.swap()
    one = el.identity()
    g1 = el.pair(g, one)
    g_prime = el.compose(el.compose(el.compose(g1, f1), el.inverse(g1)), el.inverse(f1))
    return el.bracket(g_prime, el.pair(h, one)), el.pair(el.bracket(g, h), one)


def suite_simplicity(seed: int = 0, count: int = 50, **_) -> SuiteResult:
    result = SuiteResult("simplicity-step")
    gs = _elements(seed, count, "simplicity-g")
    hs = _elements(seed, count, "simplicity-h")
    for i, (g, h) in enumerate(zip(gs, hs)):
        lhs, rhs = simplicity_sides(g, h)
        _same(lhs, rhs, f"pair[{i}] g={g} h={h}", result)
    return result


def identity_on_cone(T: Transducer, e: str, depth: int) -> str | None:
    """First word ``e w`` (``|e w| <= depth``) whose canonical image is not ``e w``."""
    C = canonical(T)
    out, q = output_from(C, C.initial, e)
    if out != e:
        return e
    stack = [(e, q, out)]
    while stack:
        w, s, o = stack.pop()
        if o != w:
            return w
        if len(w) < depth:
            for b in (0, 1):
                stack.append((w + "01"[b], C.delta[s][b], o + C.output[s][b]))
    return None


def gen_displaced(seed: int, count: int, max_cone: int = 4, tag: str = "small-support"):
    """``count`` pairs ``(f, E)`` with ``f(I_E)`` disjoint from ``I_E``."""
    spec = GeneratorSpec(seed=seed, depth=3)
    found = []
    attempt = 0
    while len(found) < count:
        f = gen_element(spec, spec.rng(tag, attempt))
        attempt += 1
        E = el.find_displaced_cone(f, max_cone)
        if E is not None:
            found.append((f, E))
    return found


def suite_small_support(seed: int = 0, count: int = 20, depth: int = 12, **_) -> SuiteResult:
    result = SuiteResult("small-support")
    for i, (f, E) in enumerate(gen_displaced(seed, count)):
        g, gf = el.small_support_factor(f, E)
        label = f"f[{i}] = {f}, E = {E}"
        _same(el.compose(el.inverse(g), gf), f, label + ": f = g^-1 (g f)", result)
        bad = [w for w in (identity_on_cone(gf.forward, e, depth) for e in E) if w is not None]
        result.add(label + ": gf identity on I_E", not bad, f"word {bad[0]!r}" if bad else None)
    return result


def oblivious_by_enumeration(T: Transducer, p: int) -> bool:
    """Brute-force check over simple accessible cycles."""
    return any(len(c) % p for c in simple_cycles(T))


def random_oblivious_machine(spec: GeneratorSpec, rng, p: int) -> Transducer:
    while True:
        T = gen_machine(spec, rng)
        if is_oblivious(T, p):
            return T


def suite_oblivious_product(seed: int = 0, count: int = 200, primes=(2, 3, 5, 7),
                            oracle_count: int = 200, **_) -> SuiteResult:
    """Product of an oblivious machine with a machine of fewer than p states stays oblivious."""
    result = SuiteResult("oblivious-product")
    for p in primes:
        small = GeneratorSpec(seed=seed, max_states=p - 1)
        big = GeneratorSpec(seed=seed, max_states=6)
        for i in range(count):
            rng = big.rng("oblivious-product", p, i)
            f = random_oblivious_machine(big, rng, p)
            f_small = gen_machine(small, rng)
            prod = el.product(f_small, f)
            ok = is_oblivious(prod, p)
            result.add(f"p={p} pair[{i}]", ok,
                       None if ok else _machines_witness(f=f, f_prime=f_small, product=prod))
    spec = GeneratorSpec(seed=seed, max_states=6)
    for i in range(oracle_count):
        T = gen_machine(spec, spec.rng("oblivious-oracle", i))
        for p in PRIMES:
            ok = is_oblivious(T, p) == oblivious_by_enumeration(T, p)
            result.add(f"oracle[{i}] p={p}", ok, None if ok else _machines_witness(machine=T))
    return result


def restriction_classes(T: Transducer, max_len: int, probe_len: int) -> int:
    """Count distinct restrictions by exploring prefixes on the raw machine.

    A restriction is fingerprinted by the outputs it produces on the words of
    length ``probe_len`` with at most one 1, after stripping the common prefix;
    prefixes are expanded only while they yield new fingerprints.
    """
    probes = ["0" * probe_len] + ["0" * i + "1" + "0" * (probe_len - i - 1) for i in range(probe_len)]
    seen = set()
    frontier = [""]
    while frontier:
        nxt = []
        for alpha in frontier:
            outs = [output_from(T, T.initial, alpha + w)[0] for w in probes]
            common = reduce(lcp, outs)
            key = tuple(o[len(common):] for o in outs)
            if key in seen:
                continue
            seen.add(key)
            if len(alpha) < max_len:
                nxt += [alpha + "0", alpha + "1"]
        frontier = nxt
    return len(seen)


def suite_fp_canonical(primes=PRIMES, p: int | None = None, **_) -> SuiteResult:
    result = SuiteResult("fp-canonical")
    if p is not None:
        primes = (p,)
    one = el.identity()
    for q in primes:
        f = el.fp(q)
        n = minimize(f.forward).restriction_count
        result.add(f"fp({q}) minimal states == {q}", n == q, f"got {n}")
        oracle = restriction_classes(f.forward, 2 * q, 2 * q)
        result.add(f"fp({q}) restriction enumeration == {q}", oracle == q, f"got {oracle}")
        periods = [info.period for info in analyze_cycles(f.forward).sccs]
        result.add(f"fp({q}) period == {q}", periods == [q], f"got {periods}")
        ok = not is_oblivious(f.forward, q)
        result.add(f"fp({q}) not oblivious to {q}", ok, _machines_witness(machine=f.forward))
        for r in PRIMES:
            if r != q:
                ok = is_oblivious(f.forward, r)
                result.add(f"fp({q}) oblivious to {r}", ok, _machines_witness(machine=f.forward))
        _same(el.compose(f, f), one, f"fp({q})^2 == id", result)
    return result


def suite_involution(seed: int = 0, count: int = 50, **_) -> SuiteResult:
    result = SuiteResult("involution")
    one = el.identity()
    for q in PRIMES:
        f = el.fp(q)
        _same(el.compose(f, f), one, f"fp({q})^2 == id", result)
    s = el.swap()
    _same(el.compose(s, s), one, "swap^2 == id", result)
    for i, e in enumerate(_elements(seed, count, "involution")):
        back = el.inverse(el.inverse(e))
        ok = isomorphic(back.forward, e.forward) or equal(back.forward, e.forward)
        result.add(f"inv(inv(gen[{i}])) == gen[{i}]", ok, _machines_witness(e=e.forward, back=back.forward))
    return result


def suite_group_axioms(seed: int = 0, count: int = 200, pair_depth: int = 3, **_) -> SuiteResult:
    result = SuiteResult("group-axioms")
    one = el.identity()
    A = _elements(seed, count, "axioms-a", depth=3)
    B = _elements(seed, count, "axioms-b", depth=3)
    C = _elements(seed, count, "axioms-c", depth=3)
    for i, (a, b, c) in enumerate(zip(A, B, C)):
        tag = f"triple[{i}]"
        _same(el.compose(a, el.compose(b, c)), el.compose(el.compose(a, b), c), tag + " associativity", result)
        _same(el.compose(a, el.inverse(a)), one, tag + " a a^-1 == 1", result)
        _same(el.compose(el.inverse(a), a), one, tag + " a^-1 a == 1", result)
        _same(el.compose(a, one), a, tag + " a 1 == a", result)
        _same(el.compose(one, a), a, tag + " 1 a == a", result)
        pab = el.pair(a, b)
        for alpha in words_upto(pair_depth):
            for bit, part in (("0", a), ("1", b)):
                left = restriction(pab.forward, bit + alpha)
                right = restriction(part.forward, alpha)
                ok = left.prefix_out == bit + right.prefix_out and isomorphic(
                    left.machine.machine, right.machine.machine
                )
                result.add(f"{tag} pair|{bit}{alpha}", ok,
                           None if ok else _machines_witness(left=left.machine.machine, right=right.machine.machine))
    return result


def _prefix_compatible(a: str, b: str) -> bool:
    return a.startswith(b) or b.startswith(a)


def _walk_outputs(T: Transducer, s: int, depth: int):
    """Yield ``(w, o(s, w))`` for every word up to ``depth``."""
    stack = [("", s, "")]
    while stack:
        w, q, o = stack.pop()
        yield w, o
        if len(w) < depth:
            for b in (1, 0):
                stack.append((w + "01"[b], T.delta[q][b], o + T.output[q][b]))


def check_canonicity_case(e: el.Element, T: Transducer, rng, depth: int = 12,
                          restriction_depth: int = 6) -> str | None:
    """Return a failure description, or ``None`` when every check passes."""
    form = minimize(T)
    C = form.machine
    # semantics: prefix contract against the raw machine, exact against the onward one
    raw_out = dict(_walk_outputs(T, T.initial, depth))
    exact = dict(_walk_outputs(canonical(e.forward), 0, depth))
    for w, o in _walk_outputs(C, C.initial, depth):
        if not _prefix_compatible(o, raw_out[w]):
            return f"prefix contract broken on {w!r}"
        if o != exact[w]:
            return f"canonical output differs from onward form on {w!r}"
    if minimize(C) != form:
        return "minimize is not idempotent"
    if not isomorphic(C, canonical(e.forward)):
        return "canonical form depends on the presentation"
    twisted = obfuscate(C, rng)
    again = minimize(twisted)
    if not isomorphic(again.machine, C) or again.restriction_count != form.restriction_count:
        return "obfuscated copy has a different canonical form"
    for alpha, beta in _walk_outputs(C, C.initial, restriction_depth):
        res = restriction(T, alpha)
        if res.prefix_out != beta:
            return f"restriction prefix mismatch at {alpha!r}"
        R = res.machine.machine
        head, q = output_from(T, T.initial, alpha)
        for (w, o_r), (_, o_t) in zip(_walk_outputs(R, R.initial, restriction_depth),
                                       _walk_outputs(T, q, restriction_depth)):
            if not _prefix_compatible(head + o_t, beta + o_r):
                return f"restriction coherence broken at {alpha!r}·{w!r}"
    return None


def suite_canonicity(seed: int = 0, count: int = 200, depth: int = 12, **_) -> SuiteResult:
    result = SuiteResult("canonicity")
    spec = GeneratorSpec(seed=seed)
    for i in range(count):
        rng = spec.rng("canonicity", i)
        e, T = gen_homeomorphism_machine(spec, rng)
        problem = check_canonicity_case(e, T, rng, depth)
        result.add(f"machine[{i}] from {e}", problem is None,
                   None if problem is None else problem + " " + _machines_witness(machine=T))
    return result


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "hilbert": suite_hilbert,
    "commutator": suite_commutator,
    "simplicity-step": suite_simplicity,
    "small-support": suite_small_support,
    "oblivious-product": suite_oblivious_product,
    "fp-canonical": suite_fp_canonical,
    "involution": suite_involution,
    "group-axioms": suite_group_axioms,
    "canonicity": suite_canonicity,
}


def run_suite(name: str, seed: int = 0, p: int | None = None, **kwargs) -> list[SuiteResult]:
    """Run one suite (or ``all``) and return the timed results."""
    if name == "all":
        names = list(SUITES)
    elif name in SUITES:
        names = [name]
    else:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(list(SUITES) + ['all'])}")
    results = []
    for n in names:
        options = dict(kwargs)
        if p is not None:
            if n == "fp-canonical":
                options["p"] = p
            elif n == "oblivious-product":
                options["primes"] = (p,)
        start = time.perf_counter()
        res = SUITES[n](seed=seed, **options)
        res.seconds = time.perf_counter() - start
        results.append(res)
    return results

