"""Finite prefix codes as descriptions of clopen subsets of Cantor space.

A list of words ``E`` stands for the clopen set ``I_E``, the union of the
cones ``I_e``.  Functions here never look at transducers.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .errors import PrefixCodeError
from .transducer import check_word


def is_prefix_free(code: Iterable[str]) -> bool:
    code = list(code)
    ordered = sorted(set(code))
    if len(ordered) != len(code):
        return False
    return not any(b.startswith(a) for a, b in zip(ordered, ordered[1:]))


def kraft(code: Iterable[str]) -> Fraction:
    return sum((Fraction(1, 2 ** len(w)) for w in code), Fraction(0))


def is_complete(code: Iterable[str]) -> bool:
    """Every infinite sequence has exactly one prefix in ``code``."""
    code = list(code)
    return is_prefix_free(code) and kraft(code) == 1


def check_complete(code: Iterable[str], what: str = "code") -> list[str]:
    code = [check_word(w) for w in code]
    if not is_prefix_free(code):
        raise PrefixCodeError(f"{what} {code} is not prefix-free")
    if kraft(code) != 1:
        raise PrefixCodeError(f"{what} {code} is not complete")
    return code


def check_antichain(code: Iterable[str], what: str = "code") -> list[str]:
    code = [check_word(w) for w in code]
    if not is_prefix_free(code):
        raise PrefixCodeError(f"{what} {code} is not prefix-free")
    return code


def covers(code: Iterable[str], w: str) -> bool:
    """Is the cone ``I_w`` inside ``I_code``?"""
    code = list(code)
    if any(w.startswith(e) for e in code):
        return True
    below = [e for e in code if e.startswith(w)]
    if not below:
        return False
    return covers(below, w + "0") and covers(below, w + "1")


def meets(code: Iterable[str], w: str) -> bool:
    """Does ``I_code`` intersect ``I_w``?"""
    return any(w.startswith(e) or e.startswith(w) for e in code)


def disjoint(a: Iterable[str], b: Iterable[str]) -> bool:
    b = list(b)
    return not any(meets(b, w) for w in a)


def subset(a: Iterable[str], b: Iterable[str]) -> bool:
    b = list(b)
    return all(covers(b, w) for w in a)


def complement(code: Iterable[str], root: str = "") -> list[str]:
    """Cones tiling ``I_root`` minus ``I_code``, in lexicographic order."""
    code = [e for e in code if e.startswith(root) or root.startswith(e)]
    if any(root.startswith(e) for e in code):
        return []
    if not code:
        return [root]
    return complement(code, root + "0") + complement(code, root + "1")


def normalize(code: Iterable[str]) -> list[str]:
    """Minimal prefix code for the same clopen set (siblings merged, nested cones dropped)."""
    ordered = sorted(set(code))
    kept = []
    for w in ordered:
        if not any(w.startswith(k) for k in kept):
            kept.append(w)
    merged = True
    while merged:
        merged = False
        present = set(kept)
        for w in kept:
            if w and w[-1] == "0" and w[:-1] + "1" in present:
                present -= {w, w[:-1] + "1"}
                present.add(w[:-1])
                kept = sorted(present)
                merged = True
                break
    return kept


def split_to(code: list[str], size: int) -> list[str]:
    """Split the lexicographically last cone until ``code`` has ``size`` cones."""
    code = sorted(code)
    while len(code) < size:
        last = code.pop()
        code.extend([last + "0", last + "1"])
        code.sort()
    return code


def is_proper(code: Iterable[str]) -> bool:
    """Nonempty and not the whole space."""
    code = list(code)
    return bool(code) and bool(complement(code))
