"""Parser for the element expression language used by the CLI.

::

    E    := id | x0 | swap | fp(INT) | pex(RULE, ...) | pair(E, E) | fix(E)
          | comp(E, E) | inv(E) | raw(PATH [, PATH]) | glue(WORD:E, ...)
    RULE := WORD -> WORD

Words may be empty; ``e`` and ``ε`` also spell the empty word.  Whitespace
is ignored everywhere except inside file paths.
"""

from __future__ import annotations

import os

from . import elements as el
from .errors import ParseError, RationalError
from .transducer import load

_ATOMS = {"id": el.identity, "x0": el.x0, "swap": el.swap}


class _Parser:
    def __init__(self, text: str, base_dir: str | None):
        self.text = text
        self.pos = 0
        self.base_dir = base_dir

    def fail(self, msg, pos=None):
        pos = self.pos if pos is None else pos
        raise ParseError(f"{msg} at position {pos + 1}", 1, pos + 1)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, s: str):
        self.skip()
        if not self.text.startswith(s, self.pos):
            found = self.text[self.pos] if self.pos < len(self.text) else "end of input"
            self.fail(f"expected {s!r}, found {found!r}")
        self.pos += len(s)

    def name(self) -> str:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
            self.pos += 1
        if start == self.pos:
            self.fail("expected an expression")
        return self.text[start:self.pos]

    def word(self) -> str:
        self.skip()
        if self.text.startswith("ε", self.pos):
            self.pos += 1
            return ""
        if self.text.startswith("e", self.pos):
            self.pos += 1
            return ""
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] in "01":
            self.pos += 1
        return self.text[start:self.pos]

    def integer(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.fail("expected an integer")
        return int(self.text[start:self.pos])

    def path(self) -> str:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] not in ",)":
            self.pos += 1
        p = self.text[start:self.pos].strip()
        if not p:
            self.fail("expected a file path", start)
        return p

    def listed(self, item):
        items = [item()]
        while self.peek() == ",":
            self.pos += 1
            items.append(item())
        return items

    def rule(self):
        a = self.word()
        self.expect("->")
        return a, self.word()

    def piece(self):
        a = self.word()
        self.expect(":")
        return a, self.expr()

    def load(self, p: str):
        full = p if self.base_dir is None else os.path.join(self.base_dir, p)
        try:
            return load(full)
        except OSError as exc:
            raise ParseError(f"cannot read {p}: {exc.strerror}") from None

    def expr(self) -> el.Element:
        start = self.pos
        head = self.name()
        try:
            if head in _ATOMS:
                return _ATOMS[head]()
            self.expect("(")
            if head == "fp":
                result = el.fp(self.integer())
            elif head == "pex":
                result = el.prefix_exchange(self.listed(self.rule))
            elif head in ("pair", "comp"):
                a = self.expr()
                self.expect(",")
                b = self.expr()
                result = el.pair(a, b) if head == "pair" else el.compose(a, b)
            elif head == "fix":
                result = el.fix(self.expr())
            elif head == "inv":
                result = el.inverse(self.expr())
            elif head == "glue":
                result = el.glue(self.listed(self.piece))
            elif head == "raw":
                paths = self.listed(self.path)
                if len(paths) > 2:
                    self.fail("raw takes a machine file and an optional inverse file")
                machines = [self.load(p) for p in paths]
                result = el.raw(machines[0], machines[1] if len(machines) > 1 else None, paths[0])
            else:
                self.fail(f"unknown constructor {head!r}", start)
            self.expect(")")
            return result
        except ParseError:
            raise
        except (RationalError, ValueError) as exc:
            raise ParseError(f"{head}: {exc} at position {start + 1}", 1, start + 1) from None


def parse_expr(text: str, base_dir: str | None = None) -> el.Element:
    """Build the element described by ``text``."""
    p = _Parser(text, base_dir)
    result = p.expr()
    if p.peek():
        p.fail(f"unexpected {p.peek()!r}")
    return result
