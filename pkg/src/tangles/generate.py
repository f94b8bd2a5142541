"""Bounded random and exhaustive diagram generators.

Used by the test suites (conservation laws, move invariance, oracle
agreement) and handy for experiments.  All generators are deterministic
given a seeded Random instance, and all bound the word width and the
label range so the search spaces stay desk-scale.
"""

from __future__ import annotations

import random
from typing import Iterator, Sequence

from .diagram import (
    AmbientDim,
    Diagram,
    Event,
    Slice,
    cap,
    cross_neg,
    cross_pos,
    cup,
)


def legal_events(
    word: Sequence[int],
    dim: AmbientDim,
    lo: int = -2,
    hi: int = 2,
    width: int = 5,
) -> list[Event]:
    """Every event that can extend the given word, respecting the label
    window [lo, hi], the width bound, and the ambient dimension."""
    out: list[Event] = []
    n = len(word)
    if n + 2 <= width:
        for p in range(n + 1):
            for k in range(lo, hi):
                out.append(cup(k, at=p))
    for p in range(n - 1):
        if word[p + 1] == word[p] + 1:
            out.append(cap(word[p], at=p))
        if dim.allows_crossings:
            out.append(cross_pos(word[p], word[p + 1], at=p))
            out.append(cross_neg(word[p], word[p + 1], at=p))
    return out


def random_diagram(
    rng: random.Random,
    dim: AmbientDim,
    source: Sequence[int] | None = None,
    max_events: int = 6,
    width: int = 5,
    lo: int = -2,
    hi: int = 2,
) -> Diagram:
    """A random valid diagram, one event per slice."""
    if source is None:
        length = rng.randrange(0, 4)
        source = tuple(rng.randrange(lo, hi + 1) for _ in range(length))
    word = tuple(source)
    layers: list[list[Event]] = []
    for _ in range(rng.randrange(0, max_events + 1)):
        options = legal_events(word, dim, lo, hi, width)
        if not options:
            break
        e = rng.choice(options)
        layers.append([e])
        word = Slice(word, (e,)).output()
    return Diagram.from_events(tuple(source), layers)


def random_composable_pair(
    rng: random.Random, dim: AmbientDim, **kwargs
) -> tuple[Diagram, Diagram]:
    d1 = random_diagram(rng, dim, **kwargs)
    d2 = random_diagram(rng, dim, source=d1.target, **kwargs)
    return d1, d2


def iter_diagrams(
    source: Sequence[int],
    dim: AmbientDim,
    max_events: int,
    width: int = 5,
    lo: int = -3,
    hi: int = 3,
) -> Iterator[Diagram]:
    """Depth-first enumeration of all diagrams over the given source word
    with at most max_events events, one per slice."""

    def walk(layers: list[list[Event]], word: tuple[int, ...]) -> Iterator[Diagram]:
        yield Diagram.from_events(tuple(source), [list(l) for l in layers])
        if len(layers) == max_events:
            return
        for e in legal_events(word, dim, lo, hi, width):
            layers.append([e])
            yield from walk(layers, Slice(word, (e,)).output())
            layers.pop()

    yield from walk([], tuple(source))


def iter_closed_diagrams(
    max_events: int,
    max_crossings: int,
    width: int = 4,
    lo: int = -1,
    hi: int = 1,
) -> Iterator[Diagram]:
    """All closed diagrams (empty boundary) reachable from the empty word
    within the bounds, in braided ambient dimension."""
    dim = AmbientDim.BRAIDED

    def walk(
        layers: list[list[Event]], word: tuple[int, ...], crossings: int
    ) -> Iterator[Diagram]:
        if not word and layers:
            yield Diagram.from_events((), [list(l) for l in layers])
        if len(layers) == max_events:
            return
        for e in legal_events(word, dim, lo, hi, width):
            extra = 1 if e.is_crossing else 0
            if crossings + extra > max_crossings:
                continue
            layers.append([e])
            yield from walk(layers, Slice(word, (e,)).output(), crossings + extra)
            layers.pop()

    yield from walk([], (), 0)
