"""Slice-encoded framed tangle diagrams.

A diagram is a vertical stack of slices, read bottom to top.  Each slice
carries its input word (a tuple of integer strand labels) and a sorted
tuple of events; strands not touched by an event pass straight through.
The label on a strand is its dual level: the generating object is 0, its
j-th right dual is j, its j-th left dual is -j.  In ambient dimension 3
(and higher) only the parity of a label is invariant data, but labels are
always stored exactly.

Events and their typing, with k, a, b arbitrary integers:

* ``cup(k)``   creates two strands labelled (k+1, k); consumes nothing.
  One family of cups covers both chiralities of turnback: a cup read as a
  unit for the strand k is the same event as a cup read as a counit shape
  for the strand k+1 (dualling shifts the label by one: the left dual of
  level j is j-1, the right dual is j+1).
* ``cap(k)``   consumes two adjacent strands labelled (k, k+1).
* ``cross_pos(a, b)`` / ``cross_neg(a, b)`` consume adjacent strands
  (a, b) and emit (b, a).  Crossings are illegal in the planar (n = 2)
  ambient dimension.  ``cross_pos`` is pinned by the Kauffman convention
  used in :mod:`tangles.evaluate`: the kink built from a positive crossing
  multiplies a closed evaluation by -A^3.

Event positions index into the slice's input word.  A cup at position p
inserts its strands before strand p; consuming events start at strand p.
Within a slice, positions strictly increase and consumed ranges are
disjoint, so a slice determines its output word.

``compose(d1, d2)`` stacks d2 on top of d1 (d1 happens first), and
``tensor`` juxtaposes side by side, padding the shorter diagram with
identity slices.  Both match the geometric reading: stacking is the
monoidal direction of the ambient space, concatenation of slices is
composition.

The text serialization is one slice per line::

    source: 1 0
    slice: cup@0(0) x+@2(0,1)
    slice: cap@1(0)

and is bit-exact under round trip.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Sequence

ObjectWord = tuple[int, ...]


class DiagramError(ValueError):
    """Raised for ill-typed events, mismatched boundaries, or bad input."""


class AmbientDim(enum.Enum):
    """The ambient dimension n of the tangle category, bucketed by behavior:
    planar (n = 2, integer labels, no crossings), braided (n = 3), and
    symmetric (n >= 4, where the two crossings are identified)."""

    PLANAR = 2
    BRAIDED = 3
    SYMMETRIC = 4

    @staticmethod
    def from_dimension(n: int) -> "AmbientDim":
        if n < 2:
            raise DiagramError(f"ambient dimension must be >= 2, got {n}")
        if n == 2:
            return AmbientDim.PLANAR
        if n == 3:
            return AmbientDim.BRAIDED
        return AmbientDim.SYMMETRIC

    @property
    def allows_crossings(self) -> bool:
        return self is not AmbientDim.PLANAR


class EventKind(enum.Enum):
    CUP = "cup"
    CAP = "cap"
    XPOS = "x+"
    XNEG = "x-"


@dataclass(frozen=True)
class Event:
    """A single elementary happening at a position of a slice."""

    kind: EventKind
    position: int
    labels: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.position < 0:
            raise DiagramError(f"negative event position {self.position}")
        need = 1 if self.kind in (EventKind.CUP, EventKind.CAP) else 2
        if len(self.labels) != need:
            raise DiagramError(f"{self.kind.value} event needs {need} label(s)")

    @property
    def arity_in(self) -> int:
        return 0 if self.kind is EventKind.CUP else 2

    @property
    def arity_out(self) -> int:
        return 0 if self.kind is EventKind.CAP else 2

    @property
    def is_crossing(self) -> bool:
        return self.kind in (EventKind.XPOS, EventKind.XNEG)

    @property
    def sign(self) -> int:
        if self.kind is EventKind.XPOS:
            return 1
        if self.kind is EventKind.XNEG:
            return -1
        return 0

    def consumes(self) -> tuple[int, ...]:
        """Labels this event requires on its input strands."""
        if self.kind is EventKind.CUP:
            return ()
        if self.kind is EventKind.CAP:
            k = self.labels[0]
            return (k, k + 1)
        return self.labels

    def emits(self) -> tuple[int, ...]:
        if self.kind is EventKind.CUP:
            k = self.labels[0]
            return (k + 1, k)
        if self.kind is EventKind.CAP:
            return ()
        a, b = self.labels
        return (b, a)

    def shifted(self, offset: int) -> "Event":
        return Event(self.kind, self.position + offset, self.labels)

    def __str__(self) -> str:
        inside = ",".join(str(x) for x in self.labels)
        return f"{self.kind.value}@{self.position}({inside})"


def cup(k: int, at: int = 0) -> Event:
    return Event(EventKind.CUP, at, (k,))


def cap(k: int, at: int = 0) -> Event:
    return Event(EventKind.CAP, at, (k,))


def cross_pos(a: int, b: int, at: int = 0) -> Event:
    return Event(EventKind.XPOS, at, (a, b))


def cross_neg(a: int, b: int, at: int = 0) -> Event:
    return Event(EventKind.XNEG, at, (a, b))


@dataclass(frozen=True)
class Placement:
    """Where an event sits once a slice is laid out: the input strand
    positions it consumes and the output positions it emits."""

    event: Event
    inputs: tuple[int, ...]
    outputs: tuple[int, ...]


@dataclass(frozen=True)
class Slice:
    """One horizontal layer: an input word and in-order disjoint events."""

    input: ObjectWord
    events: tuple[Event, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "input", tuple(self.input))
        object.__setattr__(self, "events", tuple(self.events))
        # Positions are nondecreasing; ties are legal (several cups may
        # insert at the same point, firing left to right in list order).
        # The layout walk below rejects unreachable arrangements, e.g. an
        # event tied with, or inside the span of, an earlier consumer.
        for e1, e2 in zip(self.events, self.events[1:]):
            if e2.position < e1.position:
                raise DiagramError(
                    f"event positions must be nondecreasing within a slice ({e2})"
                )
        self.layout()  # force typing errors now

    def layout(self) -> tuple[ObjectWord, dict[int, int], tuple[Placement, ...]]:
        """Compute (output word, passthrough position map, placements)."""
        w = self.input
        out: list[int] = []
        passthrough: dict[int, int] = {}
        placements: list[Placement] = []
        ei = 0
        p = 0
        while True:
            while ei < len(self.events) and self.events[ei].position == p:
                e = self.events[ei]
                if e.arity_in:
                    if p + e.arity_in > len(w):
                        raise DiagramError(f"event {e} runs past the end of the word")
                    have = tuple(w[p : p + e.arity_in])
                    if have != e.consumes():
                        raise DiagramError(
                            f"event {e} expects strands {e.consumes()}, found {have}"
                        )
                outs = tuple(range(len(out), len(out) + e.arity_out))
                ins = tuple(range(p, p + e.arity_in))
                placements.append(Placement(e, ins, outs))
                out.extend(e.emits())
                p += e.arity_in
                ei += 1
            if p < len(w):
                passthrough[p] = len(out)
                out.append(w[p])
                p += 1
            else:
                break
        if ei < len(self.events):
            raise DiagramError(
                f"event {self.events[ei]} is unreachable (inside an earlier "
                "event's span or past the end of the word)"
            )
        return tuple(out), passthrough, tuple(placements)

    def output(self) -> ObjectWord:
        return self.layout()[0]

    def __str__(self) -> str:
        return "slice: " + " ".join(str(e) for e in self.events)


@dataclass(frozen=True)
class Diagram:
    """A stack of slices whose boundaries chain."""

    source: ObjectWord
    slices: tuple[Slice, ...]
    target: ObjectWord = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "source", tuple(self.source))
        object.__setattr__(self, "slices", tuple(self.slices))
        word = self.source
        for i, s in enumerate(self.slices):
            if s.input != word:
                raise DiagramError(
                    f"slice {i} expects input {s.input}, previous boundary is {word}"
                )
            word = s.output()
        object.__setattr__(self, "target", word)

    @staticmethod
    def identity(word: Sequence[int]) -> "Diagram":
        return Diagram(tuple(word), ())

    @staticmethod
    def from_events(source: Sequence[int], layers: Iterable[Iterable[Event]]) -> "Diagram":
        """Build a diagram from per-slice event lists, deriving each slice's
        input from the previous output."""
        word = tuple(source)
        slices = []
        for layer in layers:
            s = Slice(word, tuple(layer))
            slices.append(s)
            word = s.output()
        return Diagram(tuple(source), tuple(slices))

    @property
    def num_events(self) -> int:
        return sum(len(s.events) for s in self.slices)

    def events(self) -> list[tuple[int, Event]]:
        return [(i, e) for i, s in enumerate(self.slices) for e in s.events]

    def labels(self) -> set[int]:
        out = set(self.source)
        for s in self.slices:
            out.update(s.output())
            for e in s.events:
                out.update(e.labels)
        return out

    def __str__(self) -> str:
        return to_text(self)


def elementary(event: Event, dim: AmbientDim) -> Diagram:
    """One-slice diagram holding a single generator."""
    if event.is_crossing and not dim.allows_crossings:
        raise DiagramError("crossings are not allowed in the planar ambient dimension")
    source = event.consumes()
    e = Event(event.kind, 0, event.labels)
    return Diagram(source, (Slice(source, (e,)),))


def compose(d1: Diagram, d2: Diagram) -> Diagram:
    """d1 then d2; requires d1.target == d2.source exactly."""
    if d1.target != d2.source:
        raise DiagramError(
            f"cannot compose: upper boundary {d1.target} != lower boundary {d2.source}"
        )
    return Diagram(d1.source, d1.slices + d2.slices)


def tensor(d1: Diagram, d2: Diagram) -> Diagram:
    """Horizontal juxtaposition, d1 on the left; the shorter diagram is
    padded on top with identity slices."""
    height = max(len(d1.slices), len(d2.slices))
    slices = []
    word1, word2 = d1.source, d2.source
    for i in range(height):
        s1 = d1.slices[i] if i < len(d1.slices) else Slice(word1, ())
        s2 = d2.slices[i] if i < len(d2.slices) else Slice(word2, ())
        events = tuple(s1.events) + tuple(e.shifted(len(word1)) for e in s2.events)
        slices.append(Slice(word1 + word2, events))
        word1, word2 = s1.output(), s2.output()
    return Diagram(d1.source + d2.source, tuple(slices))


def degree(w: Sequence[int]) -> int:
    """Sum of (-1)^label over the word; conserved by every event."""
    return sum(-1 if k % 2 else 1 for k in w)


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class Issue:
    slice_index: int | None
    position: int | None
    message: str

    def __str__(self) -> str:
        where = ""
        if self.slice_index is not None:
            where = f"slice {self.slice_index}"
            if self.position is not None:
                where += f", position {self.position}"
            where += ": "
        return where + self.message


@dataclass(frozen=True)
class ValidationReport:
    issues: tuple[Issue, ...]

    @property
    def valid(self) -> bool:
        return not self.issues

    def __str__(self) -> str:
        if self.valid:
            return "ok"
        return "\n".join(str(i) for i in self.issues)


def validate(
    d: Diagram,
    dim: AmbientDim,
    label_window: tuple[int, int] | None = None,
) -> ValidationReport:
    """Check slice chaining, event typing, dimension legality, and (in the
    planar case) the absence of closed components.

    ``label_window=(i, j)`` additionally rejects labels outside [-i, j].
    """
    issues: list[Issue] = []
    word = d.source
    for idx, s in enumerate(d.slices):
        if s.input != word:
            issues.append(Issue(idx, None, f"input {s.input} does not chain from {word}"))
            break
        try:
            word = s.output()
        except DiagramError as exc:
            issues.append(Issue(idx, None, str(exc)))
            break
        for e in s.events:
            if e.is_crossing and not dim.allows_crossings:
                issues.append(Issue(idx, e.position, "crossing in planar dimension"))
    if label_window is not None:
        lo, hi = -label_window[0], label_window[1]
        bad = sorted(k for k in d.labels() if not lo <= k <= hi)
        if bad:
            issues.append(Issue(None, None, f"labels {bad} outside window [{lo},{hi}]"))
    if dim is AmbientDim.PLANAR and not issues:
        for comp in trace_components(d):
            if comp.closed:
                issues.append(Issue(None, None, "closed component in planar dimension"))
                break
    return ValidationReport(tuple(issues))


# ---------------------------------------------------------------------------
# strand tracing


@dataclass(frozen=True)
class Component:
    """A maximal strand of the underlying 1-manifold."""

    closed: bool
    ends: tuple[tuple[str, int], ...]
    crossings: tuple[tuple[int, int, int], ...]
    # each crossing incidence is (slice index, event position, sign),
    # listed once per strand of the crossing that lies on this component.


class _UnionFind:
    def __init__(self) -> None:
        self.parent: dict = {}

    def find(self, x):
        root = x
        while self.parent.setdefault(root, root) != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


def trace_components(d: Diagram) -> list[Component]:
    """Partition strand segments into maximal components.

    Nodes are (level, position) pairs; level i is the word below slice i,
    with the top boundary at level len(slices).
    """
    uf = _UnionFind()
    incidences: list[tuple[tuple[int, int], tuple[int, int, int]]] = []
    for i, s in enumerate(d.slices):
        _, passthrough, placements = s.layout()
        for p, q in passthrough.items():
            uf.union((i, p), (i + 1, q))
        for pl in placements:
            e = pl.event
            if e.kind is EventKind.CUP:
                uf.union((i + 1, pl.outputs[0]), (i + 1, pl.outputs[1]))
            elif e.kind is EventKind.CAP:
                uf.union((i, pl.inputs[0]), (i, pl.inputs[1]))
            else:
                uf.union((i, pl.inputs[0]), (i + 1, pl.outputs[1]))
                uf.union((i, pl.inputs[1]), (i + 1, pl.outputs[0]))
                tag = (i, e.position, e.sign)
                incidences.append(((i, pl.inputs[0]), tag))
                incidences.append(((i, pl.inputs[1]), tag))
        # make sure isolated boundary nodes exist in the forest
        for p in range(len(s.input)):
            uf.find((i, p))
    top = len(d.slices)
    for p in range(len(d.target)):
        uf.find((top, p))
    for p in range(len(d.source)):
        uf.find((0, p))

    groups: dict = {}
    for node in list(uf.parent):
        groups.setdefault(uf.find(node), []).append(node)

    components = []
    for root, nodes in groups.items():
        ends = []
        for level, pos in nodes:
            if level == 0:
                ends.append(("source", pos))
            if level == top:
                ends.append(("target", pos))
        crossings = tuple(
            sorted(tag for node, tag in incidences if uf.find(node) == root)
        )
        components.append(Component(not ends, tuple(sorted(ends)), crossings))
    components.sort(key=lambda c: (c.closed, c.ends))
    return components


def writhe(d: Diagram) -> int:
    """Total signed crossing count of a diagram all of whose components are
    closed."""
    comps = trace_components(d)
    if any(not c.closed for c in comps):
        raise DiagramError("writhe requires all components closed")
    return sum(e.sign for _, e in d.events() if e.is_crossing)


def component_framings(d: Diagram) -> list[int]:
    """Per-component signed count of self-crossings (both strands of the
    crossing on the same component), aligned with trace_components."""
    comps = trace_components(d)
    framings = []
    for c in comps:
        seen: dict[tuple[int, int, int], int] = {}
        for tag in c.crossings:
            seen[tag] = seen.get(tag, 0) + 1
        framings.append(sum(tag[2] for tag, n in seen.items() if n == 2))
    return framings


def self_writhe(d: Diagram) -> int:
    """Signed count of crossings whose two strands lie on one component."""
    comps = trace_components(d)
    if any(not c.closed for c in comps):
        raise DiagramError("writhe requires all components closed")
    return sum(component_framings(d))


def mirror(d: Diagram) -> Diagram:
    """Swap positive and negative crossings everywhere."""
    flip = {EventKind.XPOS: EventKind.XNEG, EventKind.XNEG: EventKind.XPOS}
    slices = tuple(
        Slice(
            s.input,
            tuple(
                Event(flip.get(e.kind, e.kind), e.position, e.labels) for e in s.events
            ),
        )
        for s in d.slices
    )
    return Diagram(d.source, slices)


# ---------------------------------------------------------------------------
# serialization


def to_text(d: Diagram) -> str:
    lines = ["source: " + " ".join(str(k) for k in d.source)]
    for s in d.slices:
        lines.append(("slice: " + " ".join(str(e) for e in s.events)).rstrip())
    return "\n".join(lines) + "\n"


def _parse_event(token: str) -> Event:
    try:
        head, rest = token.split("@", 1)
        pos_text, label_text = rest.split("(", 1)
        if not label_text.endswith(")"):
            raise ValueError
        labels = tuple(int(x) for x in label_text[:-1].split(","))
        position = int(pos_text)
    except ValueError as exc:
        raise DiagramError(f"cannot parse event {token!r}") from exc
    kinds = {k.value: k for k in EventKind}
    if head not in kinds:
        raise DiagramError(f"unknown event kind {head!r} in {token!r}")
    return Event(kinds[head], position, labels)


def from_text(text: str) -> Diagram:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("source:"):
        raise DiagramError("serialized diagram must start with a 'source:' line")
    source = tuple(int(x) for x in lines[0][len("source:") :].split())
    layers = []
    for ln in lines[1:]:
        if not ln.startswith("slice:"):
            raise DiagramError(f"expected a 'slice:' line, got {ln!r}")
        tokens = ln[len("slice:") :].split()
        layers.append([_parse_event(t) for t in tokens])
    return Diagram.from_events(source, layers)
