"""Tuples in Z_m^n and the elementary maps on them."""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Iterator

MAX_MODULUS = 2**32

DEFAULT_ENUM_BUDGET = 10**7
DEFAULT_STEP_BUDGET = 10**9


class BudgetExceeded(RuntimeError):
    """Raised when an enumeration or simulation would exceed its budget."""

    def __init__(self, what: str, needed: int, budget: int):
        super().__init__(f"{what}: needs {needed}, budget is {budget}")
        self.needed = needed
        self.budget = budget


class ModulusMismatch(ValueError):
    pass


class TupleParseError(ValueError):
    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.text = text
        self.position = position


def enum_budget() -> int:
    env = os.environ.get("DUCCI_BUDGET")
    return int(env) if env else DEFAULT_ENUM_BUDGET


def step_budget() -> int:
    env = os.environ.get("DUCCI_BUDGET")
    return int(env) if env else DEFAULT_STEP_BUDGET


def check_modulus(m: int) -> None:
    if not isinstance(m, int) or m < 1 or m > MAX_MODULUS:
        raise ValueError(f"modulus must be an integer in [1, 2^32], got {m!r}")


@dataclass(frozen=True)
class ModTuple:
    """An element of Z_m^n with canonically reduced entries."""

    m: int
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        check_modulus(self.m)
        if not isinstance(self.entries, tuple):
            object.__setattr__(self, "entries", tuple(self.entries))
        if len(self.entries) < 2:
            raise ValueError(f"dimension must be at least 2, got {len(self.entries)}")
        for i, e in enumerate(self.entries):
            if not isinstance(e, int) or not 0 <= e < self.m:
                raise ValueError(f"entry {i} = {e!r} is not a residue mod {self.m}")

    @classmethod
    def of(cls, *entries: int, m: int) -> ModTuple:
        return cls(m, tuple(entries))

    @classmethod
    def reduce(cls, entries: Iterable[int], m: int) -> ModTuple:
        """Build a tuple from arbitrary integers, reducing each mod m."""
        return cls(m, tuple(e % m for e in entries))

    @classmethod
    def zero(cls, m: int, n: int) -> ModTuple:
        return cls(m, (0,) * n)

    @classmethod
    def basic(cls, m: int, n: int) -> ModTuple:
        """(0,...,0,1), reduced mod m (so the zero tuple when m = 1)."""
        return cls(m, (0,) * (n - 1) + (1 % m,))

    @property
    def n(self) -> int:
        return len(self.entries)

    def label(self) -> str:
        return "(" + ",".join(map(str, self.entries)) + ")"

    def __str__(self) -> str:
        return f"{self.label()} mod {self.m}"

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> int:
        return self.entries[i]

    def __lt__(self, other: ModTuple) -> bool:
        return (self.m, self.entries) < (other.m, other.entries)

    def __add__(self, other: ModTuple) -> ModTuple:
        _same_space(self, other)
        m = self.m
        return ModTuple(m, tuple((a + b) % m for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: ModTuple) -> ModTuple:
        _same_space(self, other)
        m = self.m
        return ModTuple(m, tuple((a - b) % m for a, b in zip(self.entries, other.entries)))


def _same_space(u: ModTuple, v: ModTuple) -> None:
    if u.m != v.m or u.n != v.n:
        raise ModulusMismatch(f"{u} and {v} live in different groups")


def step_raw(x: tuple[int, ...], m: int) -> tuple[int, ...]:
    # Hot path: plain tuples, no validation.
    return tuple([(a + b) % m for a, b in zip(x, x[1:] + x[:1])])


def ducci_step(u: ModTuple) -> ModTuple:
    return ModTuple(u.m, step_raw(u.entries, u.m))


def rotate(u: ModTuple, s: int = 1) -> ModTuple:
    """H^s(u): cyclic left shift by s places."""
    if s < 0:
        raise ValueError("rotation count must be non-negative")
    k = s % u.n
    return ModTuple(u.m, u.entries[k:] + u.entries[:k])


def scale(u: ModTuple, lam: int) -> ModTuple:
    m = u.m
    lam %= m
    return ModTuple(m, tuple(lam * x % m for x in u.entries))


def parse_tuple(text: str) -> ModTuple:
    """Parse a literal such as ``(3,4,4) mod 6``.

    Whitespace is allowed between tokens. Errors carry the 0-based
    character position of the offending input.
    """
    pos = 0
    end = len(text)

    def skip_ws() -> None:
        nonlocal pos
        while pos < end and text[pos].isspace():
            pos += 1

    def expect(ch: str) -> None:
        nonlocal pos
        skip_ws()
        if pos >= end:
            raise TupleParseError(f"expected {ch!r}, got end of input", text, pos)
        if text[pos] != ch:
            raise TupleParseError(f"expected {ch!r}, got {text[pos]!r}", text, pos)
        pos += 1

    def number() -> tuple[int, int]:
        nonlocal pos
        skip_ws()
        start = pos
        while pos < end and text[pos] in "0123456789":
            pos += 1
        if start == pos:
            got = repr(text[pos]) if pos < end else "end of input"
            raise TupleParseError(f"expected a digit, got {got}", text, pos)
        return int(text[start:pos]), start

    expect("(")
    entries: list[tuple[int, int]] = [number()]
    while True:
        skip_ws()
        if pos < end and text[pos] == ",":
            pos += 1
            entries.append(number())
            continue
        expect(")")
        break
    skip_ws()
    if not text.startswith("mod", pos):
        got = repr(text[pos]) if pos < end else "end of input"
        raise TupleParseError(f"expected 'mod', got {got}", text, pos)
    pos += 3
    m, m_pos = number()
    skip_ws()
    if pos != end:
        raise TupleParseError(f"unexpected {text[pos]!r}", text, pos)

    if m < 1 or m > MAX_MODULUS:
        raise TupleParseError("modulus out of range", text, m_pos)
    if len(entries) < 2:
        raise TupleParseError("need at least 2 entries", text, entries[0][1])
    for value, at in entries:
        if value >= m:
            raise TupleParseError(f"entry {value} is not reduced mod {m}", text, at)
    return ModTuple(m, tuple(v for v, _ in entries))
