"""Elements of the rational group as expression trees over realized machines.

Every constructor returns an :class:`Element` holding its forward machine
and, whenever the inverse is known structurally, a backward machine.
Composition follows the convention ``compose(a, b)(x) == a(b(x))``.
"""

from __future__ import annotations

import warnings
from collections import deque
from dataclasses import dataclass
from functools import cached_property

from . import codes
from .errors import (
    DivergenceError,
    InitialResidueError,
    NotInvertibleError,
    PrefixCodeError,
    SupportError,
)
from .normalization import canonical, equal, probe_bijective, trim
from .transducer import Transducer, check_word, eval_prefix, output_from


@dataclass(frozen=True, eq=False)
class Element:
    op: str
    args: tuple
    forward: Transducer
    backward: Transducer | None = None

    def __call__(self, w: str) -> str:
        return eval_prefix(self.forward, w)

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"Element({render(self)})"

    def __mul__(self, other: "Element") -> "Element":
        return compose(self, other)

    @property
    def invertible(self) -> bool:
        return self.backward is not None

    @cached_property
    def canonical(self) -> Transducer:
        return canonical(self.forward)

    def inverse(self) -> "Element":
        return inverse(self)

    def equals(self, other: "Element") -> bool:
        return equal(self.forward, other.forward)


def render(e: Element) -> str:
    op, args = e.op, e.args
    if op in ("id", "x0", "swap"):
        return op
    if op == "fp":
        return f"fp({args[0]})"
    if op == "pex":
        return "pex(" + ", ".join(f"{a}->{b}" for a, b in args) + ")"
    if op in ("pair", "comp"):
        return f"{op}({render(args[0])}, {render(args[1])})"
    if op in ("fix", "inv"):
        return f"{op}({render(args[0])})"
    if op == "glue":
        return "glue(" + ", ".join(f"{a}:{render(g)}" for a, g in args[0]) + ")"
    if op == "raw":
        return f"raw({args[0]})"
    raise ValueError(op)


def reduce_machine(T: Transducer) -> Transducer:
    """Canonical form when it exists, otherwise the trimmed machine."""
    try:
        return canonical(T)
    except (DivergenceError, InitialResidueError):
        return trim(T)


def _union(*machines: Transducer, extra: int = 0):
    """Disjoint union; returns delta/output lists and per-machine offsets.

    The first ``extra`` slots are left free for new states.
    """
    delta: list = [None] * extra
    output: list = [None] * extra
    names: list = [f"n{i}" for i in range(extra)]
    offsets = []
    for k, M in enumerate(machines):
        off = len(delta)
        offsets.append(off)
        for s in M.states:
            delta.append((M.delta[s][0] + off, M.delta[s][1] + off))
            output.append(M.output[s])
            names.append(f"{k}.{M.name(s)}")
    return delta, output, names, offsets


# --- machine-level constructions --------------------------------------------


def identity_machine() -> Transducer:
    return Transducer([(0, 0)], [("0", "1")], 0, ("id",))


def exchange_machine(rules) -> Transducer:
    """Spine of the domain code; completing a domain word emits its range word."""
    table = dict(rules)
    if "" in table:
        rng = table[""]
        if rng:
            raise PrefixCodeError("a one-rule table must map the empty word to itself")
        return identity_machine()
    spine = sorted({d[:i] for d in table for i in range(len(d))})
    index = {u: i for i, u in enumerate(spine)}
    copy = len(spine)
    delta, output = [], []
    for u in spine:
        drow, orow = [], []
        for bit in "01":
            v = u + bit
            if v in table:
                drow.append(copy)
                orow.append(table[v])
            else:
                drow.append(index[v])
                orow.append("")
        delta.append(tuple(drow))
        output.append(tuple(orow))
    delta.append((copy, copy))
    output.append(("0", "1"))
    names = tuple(f"[{u}]" if u else "root" for u in spine) + ("copy",)
    return Transducer(delta, output, 0, names)


def fp_machine(p: int) -> Transducer:
    """States q1..qp; qp flips its bit, all others copy."""
    delta = [((i + 1) % p, (i + 1) % p) for i in range(p)]
    output = [("0", "1")] * (p - 1) + [("1", "0")]
    return Transducer(delta, output, 0, tuple(f"q{i + 1}" for i in range(p)))


def pair_machine(F: Transducer, G: Transducer) -> Transducer:
    delta, output, names, (of, og) = _union(F, G, extra=1)
    delta[0] = (F.initial + of, G.initial + og)
    output[0] = ("0", "1")
    names[0] = "root"
    return Transducer(delta, output, 0, names)


def fix_machine(F: Transducer) -> Transducer:
    """Add a root that copies 1s in place and hands 0-branches to ``F``."""
    delta, output, names, (of,) = _union(F, extra=1)
    delta[0] = (F.initial + of, 0)
    output[0] = ("0", "1")
    names[0] = "root"
    return Transducer(delta, output, 0, names)


def product(A: Transducer, B: Transducer) -> Transducer:
    """Machine for ``A after B`` on the accessible part of the pair states.

    States are pairs ``(b, a)``; on bit ``σ`` the ``B`` component emits
    ``β = o_B(b, σ)`` which the ``A`` component then reads.
    """
    start = (B.initial, A.initial)
    index = {start: 0}
    order = [start]
    queue = deque(order)
    delta, output = [], []
    while queue:
        sb, sa = queue.popleft()
        drow, orow = [], []
        for b in (0, 1):
            beta = B.output[sb][b]
            out, ta = output_from(A, sa, beta)
            nxt = (B.delta[sb][b], ta)
            if nxt not in index:
                index[nxt] = len(order)
                order.append(nxt)
                queue.append(nxt)
            drow.append(index[nxt])
            orow.append(out)
        delta.append(tuple(drow))
        output.append(tuple(orow))
    names = tuple(f"({B.name(sb)},{A.name(sa)})" for sb, sa in order)
    return Transducer(delta, output, 0, names)


def glue_machine(pieces) -> Transducer:
    """Spine spelling the domain code with empty outputs, then hand-off to each piece."""
    if len(pieces) == 1 and pieces[0][0] == "":
        return pieces[0][1]
    table = {a: k for k, (a, _) in enumerate(pieces)}
    spine = sorted({a[:i] for a in table for i in range(len(a))})
    index = {u: i for i, u in enumerate(spine)}
    delta, output, names, offsets = _union(*(M for _, M in pieces), extra=len(spine))
    for u in spine:
        drow, orow = [], []
        for bit in "01":
            v = u + bit
            if v in table:
                k = table[v]
                M = pieces[k][1]
                out, q = output_from(M, M.initial, v)
                drow.append(q + offsets[k])
                orow.append(out)
            else:
                drow.append(index[v])
                orow.append("")
        delta[index[u]] = tuple(drow)
        output[index[u]] = tuple(orow)
        names[index[u]] = f"[{u}]" if u else "root"
    return trim(Transducer(delta, output, 0, names))


# --- element constructors ----------------------------------------------------


def identity() -> Element:
    M = identity_machine()
    return Element("id", (), M, M)


def _table(tbl) -> tuple:
    items = tbl.items() if isinstance(tbl, dict) else tbl
    rules = tuple((check_word(a), check_word(b)) for a, b in items)
    dom = [a for a, _ in rules]
    rng = [b for _, b in rules]
    codes.check_complete(dom, "domain code")
    codes.check_complete(rng, "range code")
    return rules


def prefix_exchange(tbl) -> Element:
    """Element of Thompson's group V sending ``a zeta`` to ``b zeta`` for each rule."""
    rules = _table(tbl)
    flipped = tuple((b, a) for a, b in rules)
    return Element("pex", rules, exchange_machine(rules), exchange_machine(flipped))


def x0() -> Element:
    e = prefix_exchange([("00", "0"), ("01", "10"), ("1", "11")])
    return Element("x0", e.args, e.forward, e.backward)


def swap() -> Element:
    e = prefix_exchange([("0", "1"), ("1", "0")])
    return Element("swap", e.args, e.forward, e.backward)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def fp(p: int) -> Element:
    """Flip every bit whose 1-indexed position is a multiple of ``p``."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    M = fp_machine(p)
    return Element("fp", (p,), M, M)


def pair(f: Element, g: Element) -> Element:
    backward = None
    if f.backward is not None and g.backward is not None:
        backward = pair_machine(f.backward, g.backward)
    return Element("pair", (f, g), pair_machine(f.forward, g.forward), backward)


def fix(f: Element) -> Element:
    """The element ``g`` with ``g == pair(f, g)``."""
    backward = fix_machine(f.backward) if f.backward is not None else None
    return Element("fix", (f,), fix_machine(f.forward), backward)


def compose(a: Element, b: Element) -> Element:
    """``a`` after ``b``."""
    backward = None
    if a.backward is not None and b.backward is not None:
        backward = reduce_machine(product(b.backward, a.backward))
    return Element("comp", (a, b), reduce_machine(product(a.forward, b.forward)), backward)


def raw(T: Transducer, T_inv: Transducer | None = None, label: str = "machine") -> Element:
    return Element("raw", (label,), T, T_inv)


def inverse(e: Element) -> Element:
    """Structural inverse; raw machines need a supplied inverse."""
    if e.backward is None:
        raise NotInvertibleError(f"{render(e)} is not invertible structurally")
    op, args = e.op, e.args
    if op in ("id", "fp"):
        return e
    if op == "inv":
        return args[0]
    if op in ("pex", "x0", "swap"):
        args = tuple((b, a) for a, b in args)
        op = "pex"
    elif op == "pair":
        args = (inverse(args[0]), inverse(args[1]))
    elif op == "fix":
        args = (inverse(args[0]),)
    elif op == "comp":
        args = (inverse(args[1]), inverse(args[0]))
    elif op == "glue":
        args = (args[1], args[0])
    elif op == "raw":
        return Element("inv", (e,), e.backward, e.forward)
    return Element(op, args, e.backward, e.forward)


def bracket(a: Element, b: Element) -> Element:
    """Commutator ``a b a^-1 b^-1``."""
    return compose(compose(compose(a, b), inverse(a)), inverse(b))


def conjugate(a: Element, c: Element) -> Element:
    """``c^-1 a c``."""
    return compose(compose(inverse(c), a), c)


# --- images of clopen sets ---------------------------------------------------


def image_code(f: Element, E, max_depth: int = 256) -> list[str]:
    """Prefix code for ``f(I_E)``, computed exactly from the inverse machine.

    A cone ``I_u`` lies in the image when the common prefix of
    ``f^-1(I_u)`` already has a prefix in ``E``, misses it when that prefix
    is incomparable with every word of ``E``, and is split otherwise.
    """
    if f.backward is None:
        raise NotInvertibleError(f"image of {render(f)} needs an inverse machine")
    E = codes.check_antichain(E, "cone set")
    C = canonical(f.backward)
    found = []
    stack = [("", C.initial, "")]
    while stack:
        u, q, v = stack.pop()
        if any(v.startswith(e) for e in E):
            found.append(u)
            continue
        if not any(e.startswith(v) for e in E):
            continue
        if len(u) >= max_depth:
            raise RuntimeError(f"image computation exceeded depth {max_depth}")
        for b in (1, 0):
            out, t = C.output[q][b], C.delta[q][b]
            stack.append((u + "01"[b], t, v + out))
    return codes.normalize(found)


def images_partition(pieces) -> list[list[str]] | None:
    """Image codes of each piece's cone when they tile the space, else ``None``."""
    images = [image_code(g, [a]) for a, g in pieces]
    flat = [c for img in images for c in img]
    if not codes.is_complete(flat):
        return None
    return images


def glue(pieces, probe_depth: int = 8) -> Element:
    """Element agreeing with ``g_i`` on each cone ``I_{a_i}``.

    The cones must form a complete prefix code.  When every piece is
    invertible the images are computed exactly and, if they tile the space,
    the inverse is glued from the inverse pieces.  Otherwise a depth-limited
    probe checks bijectivity and a warning is issued on failure.
    """
    pieces = sorted(((check_word(a), g) for a, g in pieces), key=lambda p: p[0])
    codes.check_complete([a for a, _ in pieces], "glue domain")
    forward = glue_machine([(a, g.forward) for a, g in pieces])
    inv_pieces = None
    if all(g.backward is not None for _, g in pieces):
        images = images_partition(pieces)
        if images is None:
            warnings.warn("glued pieces have overlapping or incomplete images", stacklevel=2)
        else:
            inv_pieces = tuple(
                sorted(((c, inverse(g)) for (_, g), img in zip(pieces, images) for c in img),
                       key=lambda p: p[0])
            )
    else:
        report = probe_bijective(forward, probe_depth)
        if not report.ok:
            warnings.warn(f"glued map fails bijectivity probe: {report.reason}", stacklevel=2)
    backward = None
    if inv_pieces is not None:
        backward = glue_machine([(c, g.forward) for c, g in inv_pieces])
    return Element("glue", (tuple(pieces), inv_pieces), forward, backward)


def mover(E1, E2) -> Element:
    """Prefix exchange ``g`` with ``g(I_E1)`` inside ``I_E2``.

    The first cone of ``E2`` is split into one subcone per cone of ``E1``;
    the two complements are balanced by splitting their last cones and then
    matched in order.
    """
    E1 = sorted(codes.check_antichain(E1, "E1"))
    E2 = sorted(codes.check_antichain(E2, "E2"))
    for name, E in (("E1", E1), ("E2", E2)):
        if not codes.is_proper(E):
            raise PrefixCodeError(f"{name} must be a proper nonempty clopen set")
    target = codes.split_to([E2[0]], len(E1))
    dom_rest = codes.complement(E1)
    rng_rest = codes.complement([E2[0]])
    size = max(len(dom_rest), len(rng_rest))
    dom_rest = codes.split_to(dom_rest, size)
    rng_rest = codes.split_to(rng_rest, size)
    rules = list(zip(E1, target)) + list(zip(dom_rest, rng_rest))
    return prefix_exchange(rules)


def small_support_factor(f: Element, E, require_proper: bool = False):
    """Split ``f`` as ``g^-1 (g f)`` with ``g`` and ``g f`` of small support.

    ``g`` agrees with ``f`` on ``I_E``, with ``f^-1`` on ``f(I_E)`` and is
    the identity elsewhere.  Returns ``(g, compose(g, f))``.
    """
    E = codes.normalize(codes.check_antichain(E, "E"))
    if not E:
        raise SupportError("E must be nonempty")
    F = image_code(f, E)
    if not codes.disjoint(E, F):
        raise SupportError(f"f(I_E) meets I_E for E={E}")
    rest = codes.complement(E + F)
    if require_proper and not rest:
        raise SupportError("I_E together with f(I_E) is the whole space")
    finv = inverse(f)
    pieces = [(e, f) for e in E] + [(c, finv) for c in F] + [(r, identity()) for r in rest]
    g = glue(pieces)
    return g, compose(g, f)


def find_displaced_cone(f: Element, max_len: int = 6) -> list[str] | None:
    """Shortest cone ``[e]`` with ``f(I_e)`` disjoint from ``I_e``, if any."""
    for n in range(1, max_len + 1):
        for i in range(1 << n):
            e = format(i, f"0{n}b")
            if codes.disjoint([e], image_code(f, [e])):
                return [e]
    return None
