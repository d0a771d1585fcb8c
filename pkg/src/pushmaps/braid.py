"""Words in the Artin generators of the braid group B_n.

Conventions used throughout the package:

* ``sigma_i`` is the half twist exchanging strands ``i`` and ``i+1``;
  ``Generator(i, -1)`` is its inverse.
* A product ``u * v`` (or ``compose(u, v)``) means *apply u first, then v*.
  Letters of a word are applied left to right.

Only free reduction is performed.  No braid-relation normal form is computed;
the lamination action is invariant under the braid relations so none is needed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence


class BraidParseError(ValueError):
    """Raised on malformed braid text; ``position`` is the 0-based column."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at column {position})")
        self.position = position


@dataclass(frozen=True, order=True)
class Generator:
    index: int
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"generator sign must be +1 or -1, got {self.sign}")
        if self.index < 1:
            raise ValueError(f"generator index must be >= 1, got {self.index}")

    def inverse(self) -> "Generator":
        return Generator(self.index, -self.sign)

    def __str__(self):
        return f"s{self.index}" + ("'" if self.sign < 0 else "")


def _free_reduce(letters: Iterable[Generator]) -> tuple[Generator, ...]:
    stack: list[Generator] = []
    for g in letters:
        if stack and stack[-1].index == g.index and stack[-1].sign == -g.sign:
            stack.pop()
        else:
            stack.append(g)
    return tuple(stack)


@dataclass(frozen=True)
class BraidWord:
    """A freely reduced word in B_strands.  Construction always reduces."""

    strands: int
    letters: tuple[Generator, ...] = ()

    def __post_init__(self):
        if self.strands < 2:
            raise ValueError(f"a braid needs at least 2 strands, got {self.strands}")
        letters = tuple(self.letters)
        for g in letters:
            if not isinstance(g, Generator):
                raise TypeError(f"expected Generator, got {type(g).__name__}")
            if g.index >= self.strands:
                raise ValueError(
                    f"generator index {g.index} out of range for {self.strands} strands"
                )
        object.__setattr__(self, "letters", _free_reduce(letters))

    @classmethod
    def from_ints(cls, strands: int, word: Sequence[int]) -> "BraidWord":
        """Build from signed integers, e.g. ``[2, -1]`` for s2 s1'."""
        gens = []
        for x in word:
            if x == 0:
                raise ValueError("0 is not a braid generator")
            gens.append(Generator(abs(x), 1 if x > 0 else -1))
        return cls(strands, tuple(gens))

    def to_ints(self) -> list[int]:
        return [g.sign * g.index for g in self.letters]

    @classmethod
    def identity(cls, strands: int) -> "BraidWord":
        return cls(strands, ())

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __bool__(self):
        return bool(self.letters)

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        return compose(self, other)

    def __invert__(self) -> "BraidWord":
        return inverse(self)

    def __pow__(self, m: int) -> "BraidWord":
        return power(self, m)

    def __str__(self):
        return format_braid(self)


def compose(u: BraidWord, v: BraidWord) -> BraidWord:
    if u.strands != v.strands:
        raise ValueError(f"strand mismatch: {u.strands} vs {v.strands}")
    return BraidWord(u.strands, u.letters + v.letters)


def inverse(w: BraidWord) -> BraidWord:
    return BraidWord(w.strands, tuple(g.inverse() for g in reversed(w.letters)))


def power(w: BraidWord, m: int) -> BraidWord:
    if m < 0:
        w, m = inverse(w), -m
    return BraidWord(w.strands, w.letters * m)


def band_generator(i: int, j: int, n: int) -> BraidWord:
    """The pure braid A_{i,j}: strand j travels round strand i and back.

    A_{i,j} = (s_{j-1} ... s_{i+1}) s_i^2 (s_{i+1}' ... s_{j-1}').
    """
    if not 1 <= i < j <= n:
        raise ValueError(f"band generator needs 1 <= i < j <= n, got i={i} j={j} n={n}")
    prefix = [Generator(t) for t in range(j - 1, i, -1)]
    suffix = [Generator(t, -1) for t in range(i + 1, j)]
    return BraidWord(n, tuple(prefix + [Generator(i), Generator(i)] + suffix))


def permutation(w: BraidWord) -> tuple[int, ...]:
    """Strand permutation in one-line notation.

    Entry ``p`` (1-based) is the starting position of the strand that ends at
    position ``p``.  With this convention
    ``permutation(u * v)[p] == permutation(u)[permutation(v)[p] - 1]``.
    """
    occupant = list(range(1, w.strands + 1))
    for g in w.letters:
        k = g.index - 1
        occupant[k], occupant[k + 1] = occupant[k + 1], occupant[k]
    return tuple(occupant)


_HEADER = re.compile(r"\s*B(\d+)\s*:")
_TOKEN = re.compile(r"s(\d+)('?)")


def parse_braid(text: str) -> BraidWord:
    """Parse ``"B3: s2 s1'"``.  Errors carry the offending column."""
    m = _HEADER.match(text)
    if not m:
        raise BraidParseError("expected header 'B<n>:'", 0)
    strands = int(m.group(1))
    if strands < 2:
        raise BraidParseError(f"strand count must be >= 2, got {strands}", m.start(1))
    letters = []
    for tok in re.finditer(r"\S+", text[m.end():]):
        pos = m.end() + tok.start()
        t = _TOKEN.fullmatch(tok.group())
        if not t:
            raise BraidParseError(f"bad token {tok.group()!r}", pos)
        idx = int(t.group(1))
        if not 1 <= idx < strands:
            raise BraidParseError(
                f"generator s{idx} out of range for {strands} strands", pos
            )
        letters.append(Generator(idx, -1 if t.group(2) else 1))
    return BraidWord(strands, tuple(letters))


def format_braid(w: BraidWord) -> str:
    body = " ".join(str(g) for g in w.letters)
    return f"B{w.strands}: {body}".rstrip()
