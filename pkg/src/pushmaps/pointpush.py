"""Point-pushing braids from loops on a punctured sphere.

Disk model.  The sphere with ``N`` punctures (the surface the loop lives on)
is drawn as a disk whose boundary is collapsed to one puncture, with the
other ``N - 1`` punctures on a horizontal line as strands ``1..N-1``.  The
pushed point is strand ``N``, to the right of all of them.  The fundamental
group is free on ``g_1 .. g_{N-1}``, where ``g_i`` leaves the pushed point
along the lower side of the line, passes under strand ``i`` and comes back
over it (a clockwise loop).  The loop round the boundary puncture is the
product of the others and is not used.

With the half-twist convention of :mod:`pushmaps.braid`, pushing along
``g_i`` is exactly the band generator ``A_{i,N}``.  Since ``g_i`` stays below
every other strand, it meets the vertical ray rising from strand ``i`` to
the top boundary once, moving right, and misses all other rising rays.  So
the word of any closed curve is read off its crossings with the rising rays:
crossing ray ``i`` rightwards contributes ``g_i``, leftwards ``g_i^-1``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Iterable

from .braid import BraidParseError, BraidWord, band_generator, compose, format_braid, inverse, permutation
from .lamination import (
    NOT_PSEUDO_ANOSOV,
    PSEUDO_ANOSOV,
    GrowthOptions,
    classify,
)

FILLING_PA = "filling_pA"
NON_FILLING = "non_filling"
UNDETERMINED = "undetermined"

Letter = tuple[int, int]  # (generator index, sign)


def _free_reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    stack: list[Letter] = []
    for i, e in letters:
        if stack and stack[-1] == (i, -e):
            stack.pop()
        else:
            stack.append((i, e))
    return tuple(stack)


def _cyclic_reduce(letters: tuple[Letter, ...]) -> tuple[Letter, ...]:
    lo, hi = 0, len(letters)
    while hi - lo >= 2 and letters[lo] == (letters[hi - 1][0], -letters[hi - 1][1]):
        lo += 1
        hi -= 1
    return letters[lo:hi]


@dataclass(frozen=True)
class LoopWord:
    """A freely reduced word in the loop generators of an N-punctured sphere."""

    sphere_punctures: int
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        N = self.sphere_punctures
        if N < 3:
            raise ValueError(f"need at least 3 sphere punctures, got {N}")
        letters = tuple((int(i), int(e)) for i, e in self.letters)
        for i, e in letters:
            if e not in (1, -1):
                raise ValueError(f"letter sign must be +1 or -1, got {e}")
            if not 1 <= i <= N - 1:
                raise ValueError(f"loop generator g{i} out of range 1..{N - 1}")
        object.__setattr__(self, "letters", _free_reduce(letters))

    @classmethod
    def from_ints(cls, sphere_punctures: int, word: Iterable[int]) -> "LoopWord":
        return cls(sphere_punctures, tuple((abs(x), 1 if x > 0 else -1) for x in word))

    def to_ints(self) -> list[int]:
        return [i * e for i, e in self.letters]

    def __mul__(self, other: "LoopWord") -> "LoopWord":
        if other.sphere_punctures != self.sphere_punctures:
            raise ValueError("loop words live on different spheres")
        return LoopWord(self.sphere_punctures, self.letters + other.letters)

    def inverse(self) -> "LoopWord":
        return LoopWord(self.sphere_punctures, tuple((i, -e) for i, e in reversed(self.letters)))

    def cyclically_reduced(self) -> "LoopWord":
        return LoopWord(self.sphere_punctures, _cyclic_reduce(self.letters))

    def rotated(self, k: int) -> "LoopWord":
        """Cyclic conjugate starting at letter ``k``."""
        if not self.letters:
            return self
        k %= len(self.letters)
        return LoopWord(self.sphere_punctures, self.letters[k:] + self.letters[:k])

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return format_loop(self)


@dataclass(frozen=True)
class PushResult:
    braid: BraidWord
    pushed_strand: int
    source_loop: LoopWord

    def to_dict(self) -> dict:
        return {
            "braid": format_braid(self.braid),
            "pushed_strand": self.pushed_strand,
            "loop": format_loop(self.source_loop),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def push_braid(loop: LoopWord) -> PushResult:
    """Birman's push map: ``g_i -> A_{i,N}``, extended multiplicatively.

    No cyclic reduction happens here so the map stays a homomorphism;
    :func:`classify_loop` reduces first.
    """
    if not loop.letters:
        raise ValueError("the trivial loop pushes to the identity mapping class")
    N = loop.sphere_punctures
    bands = {i: band_generator(i, N, N) for i in {i for i, _ in loop.letters}}
    braid = BraidWord.identity(N)
    for i, e in loop.letters:
        braid = compose(braid, bands[i] if e > 0 else inverse(bands[i]))
    assert permutation(braid) == tuple(range(1, N + 1))
    return PushResult(braid, N, loop)


def chain_loop(sphere_punctures: int, outbound_below: Iterable[int]) -> LoopWord:
    """Word of a curve that runs left from the pushed point and back.

    The curve leaves the pushed point heading left, passes each strand
    ``N-1, ..., 1`` below it when the strand is in ``outbound_below`` and
    above it otherwise, turns round left of strand 1, and returns passing
    every strand on the opposite side.
    """
    N = sphere_punctures
    below = set(outbound_below)
    out = [(j, -1) for j in range(N - 1, 0, -1) if j not in below]
    back = [(j, 1) for j in range(1, N) if j in below]
    return LoopWord(N, tuple(out + back))


def figure7_loop(n: int) -> LoopWord:
    """The chain of figure-eights through all strands, with ``n - 3`` double points.

    Lens ``j`` of the chain contains strand ``j`` alone; consecutive lenses
    meet at a double point, and the curve swaps sides there.  So going out it
    passes the strands on alternating sides and comes back on the other side
    of each.  The curve lives on the sphere with ``n - 1`` punctures; the
    puncture outside every lens is the collapsed boundary.
    """
    if n < 4:
        raise ValueError(f"figure-7 family needs n >= 4, got {n}")
    N = n - 1
    return chain_loop(N, range(N - 1, 0, -2))


def figure7_expected_k(n: int) -> int:
    if n < 4:
        raise ValueError(f"figure-7 family needs n >= 4, got {n}")
    return n - 3


def classify_loop(loop: LoopWord, opts: GrowthOptions | None = None) -> str:
    reduced = loop.cyclically_reduced()
    if not reduced.letters:
        raise ValueError("loop is trivial up to conjugacy")
    verdict = classify(push_braid(reduced).braid, opts)
    if verdict == PSEUDO_ANOSOV:
        return FILLING_PA
    if verdict == NOT_PSEUDO_ANOSOV:
        return NON_FILLING
    return UNDETERMINED


_LOOP_HEADER = re.compile(r"\s*L(\d+)\s*:")
_LOOP_TOKEN = re.compile(r"g(\d+)('?)")


def parse_loop(text: str) -> LoopWord:
    """Parse ``"L4: g1 g2'"``, where ``4`` is the number of sphere punctures."""
    m = _LOOP_HEADER.match(text)
    if not m:
        raise BraidParseError("expected header 'L<n>:'", 0)
    N = int(m.group(1))
    if N < 3:
        raise BraidParseError(f"need at least 3 sphere punctures, got {N}", m.start(1))
    letters = []
    for tok in re.finditer(r"\S+", text[m.end():]):
        pos = m.end() + tok.start()
        t = _LOOP_TOKEN.fullmatch(tok.group())
        if not t:
            raise BraidParseError(f"bad token {tok.group()!r}", pos)
        i = int(t.group(1))
        if not 1 <= i <= N - 1:
            raise BraidParseError(f"loop generator g{i} out of range 1..{N - 1}", pos)
        letters.append((i, -1 if t.group(2) else 1))
    return LoopWord(N, tuple(letters))


def format_loop(loop: LoopWord) -> str:
    body = " ".join(f"g{i}" + ("'" if e < 0 else "") for i, e in loop.letters)
    return f"L{loop.sphere_punctures}: {body}".rstrip()
