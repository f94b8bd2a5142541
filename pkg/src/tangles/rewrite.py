"""Local moves on diagrams, planar normal forms, and equality decisions.

Moves are detected and applied on *expanded* diagrams (one event per
slice); ``expand`` produces that layout and every application returns one.
The rule set, by ambient dimension:

* zigzag (all dimensions): a cup whose two strands are consumed, together
  with an adjacent through strand, by a matching cap; forward removes the
  pair, backward inserts one around any strand.  The cup and cap may be
  separated by slices whose events do not touch the cup's strands; the
  detector tracks the strand pair across such slices.
* interchange (all dimensions): swap events in adjacent slices whose
  supports are disjoint.
* second Reidemeister (braided and symmetric): a crossing undone by the
  opposite crossing on the same strands (in the symmetric case the signs
  need not be opposite, since the two crossings are identified there).
* third Reidemeister (braided and symmetric): the braid relation on three
  consecutive crossings of equal sign.
* sign collapse (symmetric only): flip one crossing's sign.
* double-twist removal (symmetric only): a cup, two crossings and a cap
  whose block carries every strand back to its own position cancel.  Open
  strands in this calculus always carry an even number of self-crossings
  (single curls exist only around closed components), so the double twist
  is the atomic framing change, and this move realizes the fact that in
  ambient dimension >= 4 only the parity of a framing is invariant.  Any
  datum valid for the symmetric case has squared braiding equal to the
  identity, which makes the move a composite of sign collapses, second
  Reidemeister pairs and zigzags, hence evaluation-sound.

A planar diagram's normal form is the labelled non-crossing matching of
its boundary obtained by strand tracing.  Two planar diagrams are declared
equal exactly when their normal forms coincide; soundness is the
zigzag/interchange congruence (checked move by move in the tests), and
completeness rests on the discreteness of planar mapping sets, probed at
desk scale by the exhaustive suites.  Through arcs carry equal labels and
turnbacks carry consecutive ones; violations raise RuntimeError because
they indicate bugs, not bad input.

``equal`` decides planar equality by normal form; otherwise it runs a
bounded bidirectional search over the move graph and falls back to
evaluation: differing values under a validated datum certify distinctness,
exhaustion without separation returns Unknown.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .diagram import (
    AmbientDim,
    Diagram,
    DiagramError,
    Event,
    EventKind,
    ObjectWord,
    Slice,
    cap,
    cross_neg,
    cross_pos,
    cup,
    to_text,
    trace_components,
    validate,
)


class MoveError(ValueError):
    """Raised when a move does not apply at its site."""


class MoveKind(enum.Enum):
    ZIGZAG = "zigzag"
    INTERCHANGE = "interchange"
    R2 = "r2"
    R3 = "r3"
    SYM_COLLAPSE = "collapse"
    KINK2 = "kink2"


@dataclass(frozen=True)
class Move:
    """A single rewrite at a definite site of an expanded diagram.

    ``slice_index`` is the lower slice of the redex (or the insertion
    boundary for backward moves); ``other_index`` the upper slice where a
    second event participates.  ``position`` and ``labels`` carry the
    kind-specific anchor data documented in the module docstring.
    """

    kind: MoveKind
    forward: bool
    slice_index: int
    other_index: int = -1
    position: int = 0
    labels: tuple[int, ...] = ()
    variant: str = ""


def expand(d: Diagram) -> Diagram:
    """One event per slice, empty slices dropped, original order kept."""
    layers: list[list[Event]] = []
    word = d.source
    for s in d.slices:
        current = list(word)
        for e in s.events:
            # position of e relative to the word with previous events of
            # this slice already applied
            shift = 0
            for prev in s.events:
                if prev is e:
                    break
                if prev.position <= e.position:
                    shift += prev.arity_out - prev.arity_in
            layers.append([Event(e.kind, e.position + shift, e.labels)])
        word = s.output()
    return Diagram.from_events(d.source, layers)


def _single_event(s: Slice) -> Event | None:
    if len(s.events) > 1:
        raise MoveError("rewriting requires an expanded diagram (use expand)")
    return s.events[0] if s.events else None


# ---------------------------------------------------------------------------
# strand-pair tracking across slices


def _track_pair(d: Diagram, start: int, left: int):
    """Follow the adjacent strand pair (left, left+1) upward from the word
    below slice ``start``; yield (slice index, left position, event) for
    each slice until an event touches the pair (that slice is yielded
    last, with touching=True via StopIteration value semantics).

    Returns a list of (slice_index, left_position, event, touches).
    """
    out = []
    pos = left
    for j in range(start, len(d.slices)):
        e = _single_event(d.slices[j])
        touches = False
        if e is not None:
            if e.arity_in:
                span = (e.position, e.position + 1)
                if span[0] in (pos, pos + 1) or span[1] in (pos, pos + 1):
                    touches = True
            else:
                if e.position == pos + 1:
                    touches = True  # insertion between the pair
        out.append((j, pos, e, touches))
        if touches:
            break
        if e is not None:
            if e.arity_in and e.position + 1 < pos:
                pos += e.arity_out - e.arity_in
            elif e.arity_in == 0 and e.position <= pos:
                pos += e.arity_out
    return out


def _remap_after_removal(events: Sequence[Event], left: int) -> list[Event]:
    """Shift event positions after deleting the strand pair (left, left+1)
    from their slice's input word; the events are known not to touch it."""
    out = []
    for e in events:
        q = e.position
        if q > left + 1:
            q -= 2
        out.append(Event(e.kind, q, e.labels))
    return out


# ---------------------------------------------------------------------------
# move detection


def applicable_moves(
    d: Diagram,
    dim: AmbientDim,
    include_backward: bool = False,
    label_window: tuple[int, int] | None = None,
) -> list[Move]:
    """Enumerate the redexes of the dimension-legal rule set on an
    expanded diagram.

    Forward moves are enumerated completely.  Backward insertions (zigzag
    and second Reidemeister pairs) are enumerated only when requested
    since they are parametrized by a level, bounded by ``label_window``
    (defaults to the diagram's label range widened by one).
    """
    d = expand(d)
    moves: list[Move] = []
    moves.extend(_zigzag_forward(d))
    if dim.allows_crossings:
        moves.extend(_r2_forward(d, dim))
        moves.extend(_r3_moves(d))
    if dim is AmbientDim.SYMMETRIC:
        moves.extend(_collapse_moves(d))
        moves.extend(_kink2_forward(d))
    if include_backward:
        if label_window is None:
            labels = d.labels() or {0}
            label_window = (min(labels) - 1, max(labels) + 1)
        moves.extend(_zigzag_backward(d, label_window))
        if dim.allows_crossings:
            moves.extend(_r2_backward(d))
    moves.extend(_interchange_moves(d))
    return moves


def _zigzag_forward(d: Diagram) -> list[Move]:
    moves = []
    for i, s in enumerate(d.slices):
        e = _single_event(s)
        if e is None or e.kind is not EventKind.CUP:
            continue
        _, _, placements = s.layout()
        legs = placements[0].outputs[0]
        track = _track_pair(d, i + 1, legs)
        if not track:
            continue
        j, pos, f, touches = track[-1]
        if not touches or f is None or f.kind is not EventKind.CAP:
            continue
        if f.position == pos - 1:
            moves.append(Move(MoveKind.ZIGZAG, True, i, j, e.position, e.labels, "cap_left"))
        elif f.position == pos + 1:
            moves.append(Move(MoveKind.ZIGZAG, True, i, j, e.position, e.labels, "cap_right"))
    return moves


def _r2_forward(d: Diagram, dim: AmbientDim) -> list[Move]:
    moves = []
    for i, s in enumerate(d.slices):
        e = _single_event(s)
        if e is None or not e.is_crossing:
            continue
        track = _track_pair(d, i + 1, e.position)
        if not track:
            continue
        j, pos, f, touches = track[-1]
        if not touches or f is None or not f.is_crossing:
            continue
        if f.position != pos:
            continue
        opposite = f.sign == -e.sign or dim is AmbientDim.SYMMETRIC
        if opposite and f.labels == (e.labels[1], e.labels[0]):
            moves.append(Move(MoveKind.R2, True, i, j, e.position, e.labels))
    return moves


def _r3_moves(d: Diagram) -> list[Move]:
    moves = []
    for i in range(len(d.slices) - 2):
        es = [_single_event(d.slices[i + k]) for k in range(3)]
        if any(e is None or not e.is_crossing for e in es):
            continue
        e1, e2, e3 = es
        assert e1 and e2 and e3
        if not (e1.sign == e2.sign == e3.sign):
            continue
        q = e1.position
        if e2.position == q + 1 and e3.position == q:
            moves.append(Move(MoveKind.R3, True, i, i + 2, q, (e1.sign,), "left"))
        elif e2.position == q - 1 and e3.position == q:
            moves.append(Move(MoveKind.R3, True, i, i + 2, q - 1, (e1.sign,), "right"))
    return moves


def _collapse_moves(d: Diagram) -> list[Move]:
    return [
        Move(MoveKind.SYM_COLLAPSE, True, i, position=e.position)
        for i, s in enumerate(d.slices)
        for e in [_single_event(s)]
        if e is not None and e.is_crossing
    ]


def _is_trivial_block(d: Diagram, i: int, length: int) -> bool:
    """True when slices i..i+length-1 form a block with equal input and
    output words whose strand matching is the identity (every strand comes
    back to its own position, no turnbacks, no closed components)."""
    block = Diagram(d.slices[i].input, d.slices[i : i + length])
    if block.target != block.source:
        return False
    for comp in trace_components(block):
        if comp.closed or len(comp.ends) != 2:
            return False
        (sa, pa), (sb, pb) = comp.ends
        if {sa, sb} != {"source", "target"} or pa != pb:
            return False
    return True


def _kink2_forward(d: Diagram) -> list[Move]:
    """Four consecutive slices cup, crossing, crossing, cap whose block
    matches every strand back to itself: a double framing twist (possibly
    padded with a cancelling pair).  Sound for symmetric data, where the
    squared braiding is the identity: the block is then a composite of
    sign collapses, second Reidemeister pairs and zigzags."""
    moves = []
    for i in range(len(d.slices) - 3):
        events = [_single_event(d.slices[i + k]) for k in range(4)]
        if any(e is None for e in events):
            continue
        if events[0].kind is not EventKind.CUP or events[3].kind is not EventKind.CAP:
            continue
        if not (events[1].is_crossing and events[2].is_crossing):
            continue
        if _is_trivial_block(d, i, 4):
            moves.append(Move(MoveKind.KINK2, True, i, i + 3))
    return moves


def _interchange_moves(d: Diagram) -> list[Move]:
    moves = []
    for i in range(len(d.slices) - 1):
        if _interchange_apply(d, i, dry_run=True) is not None:
            moves.append(Move(MoveKind.INTERCHANGE, True, i, i + 1))
    return moves


def _zigzag_backward(d: Diagram, window: tuple[int, int]) -> list[Move]:
    moves = []
    boundaries = [d.source] + [s.output() for s in d.slices]
    for i, word in enumerate(boundaries):
        for t, label in enumerate(word):
            for k, variant in ((label, "cap_left"), (label - 1, "cap_right")):
                if window[0] <= k <= window[1]:
                    moves.append(
                        Move(MoveKind.ZIGZAG, False, i, position=t, labels=(k,), variant=variant)
                    )
    return moves


def _r2_backward(d: Diagram) -> list[Move]:
    moves = []
    boundaries = [d.source] + [s.output() for s in d.slices]
    for i, word in enumerate(boundaries):
        for t in range(len(word) - 1):
            for sign in (1, -1):
                moves.append(
                    Move(MoveKind.R2, False, i, position=t, labels=(sign,))
                )
    return moves


# ---------------------------------------------------------------------------
# move application


def apply_move(d: Diagram, m: Move) -> Diagram:
    """Apply a move; boundary words are unchanged and the result is valid
    (rebuilt through the event-typing constructor)."""
    d = expand(d)
    try:
        if m.kind is MoveKind.ZIGZAG:
            return _apply_zigzag(d, m)
        if m.kind is MoveKind.R2:
            return _apply_r2(d, m)
        if m.kind is MoveKind.R3:
            return _apply_r3(d, m)
        if m.kind is MoveKind.SYM_COLLAPSE:
            return _apply_collapse(d, m)
        if m.kind is MoveKind.KINK2:
            return _apply_kink2(d, m)
        if m.kind is MoveKind.INTERCHANGE:
            result = _interchange_apply(d, m.slice_index)
            if result is None:
                raise MoveError("events are not interchangeable")
            return result
    except DiagramError as exc:
        raise MoveError(f"move {m} failed to apply: {exc}") from exc
    raise MoveError(f"unknown move kind {m.kind}")


def _layers(d: Diagram) -> list[list[Event]]:
    return [list(s.events) for s in d.slices]


def _apply_zigzag(d: Diagram, m: Move) -> Diagram:
    if not m.forward:
        word = ([d.source] + [s.output() for s in d.slices])[m.slice_index]
        t = m.position
        k = m.labels[0]
        if m.variant == "cap_left":
            if t >= len(word) or word[t] != k:
                raise MoveError("no strand of the required level at the site")
            pair = [[cup(k, at=t + 1)], [cap(k, at=t)]]
        else:
            if t >= len(word) or word[t] != k + 1:
                raise MoveError("no strand of the required level at the site")
            pair = [[cup(k, at=t)], [cap(k, at=t + 1)]]
        layers = _layers(d)
        layers[m.slice_index : m.slice_index] = pair
        return Diagram.from_events(d.source, layers)

    i, j = m.slice_index, m.other_index
    s = d.slices[i]
    e = _single_event(s)
    if e is None or e.kind is not EventKind.CUP or e.position != m.position:
        raise MoveError("no cup at the move site")
    _, _, placements = s.layout()
    legs = placements[0].outputs[0]
    track = _track_pair(d, i + 1, legs)
    if not track or track[-1][0] != j or not track[-1][3]:
        raise MoveError("cap is no longer reachable from the cup")
    layers = _layers(d)
    for jj, pos, f, touches in track[:-1]:
        layers[jj] = _remap_after_removal(layers[jj], pos)
    del layers[j]
    del layers[i]
    return Diagram.from_events(d.source, layers)


def _apply_r2(d: Diagram, m: Move) -> Diagram:
    if not m.forward:
        word = ([d.source] + [s.output() for s in d.slices])[m.slice_index]
        t = m.position
        if t + 1 >= len(word):
            raise MoveError("no adjacent strand pair at the site")
        a, b = word[t], word[t + 1]
        sign = m.labels[0]
        first = cross_pos(a, b, at=t) if sign > 0 else cross_neg(a, b, at=t)
        second = cross_neg(b, a, at=t) if sign > 0 else cross_pos(b, a, at=t)
        layers = _layers(d)
        layers[m.slice_index : m.slice_index] = [[first], [second]]
        return Diagram.from_events(d.source, layers)

    i, j = m.slice_index, m.other_index
    e = _single_event(d.slices[i])
    if e is None or not e.is_crossing or e.position != m.position:
        raise MoveError("no crossing at the move site")
    track = _track_pair(d, i + 1, e.position)
    if not track or track[-1][0] != j or not track[-1][3]:
        raise MoveError("partner crossing is no longer reachable")
    layers = _layers(d)
    del layers[j]
    del layers[i]
    return Diagram.from_events(d.source, layers)


def _apply_r3(d: Diagram, m: Move) -> Diagram:
    i = m.slice_index
    es = [_single_event(d.slices[i + k]) for k in range(3)]
    if any(e is None or not e.is_crossing for e in es):
        raise MoveError("no braid-relation pattern at the site")
    sign = es[0].sign  # type: ignore[union-attr]
    word = d.slices[i].input
    q = m.position
    a, b, c = word[q], word[q + 1], word[q + 2]

    def x(u, v, at):
        return cross_pos(u, v, at=at) if sign > 0 else cross_neg(u, v, at=at)

    if m.variant == "left":
        replacement = [[x(b, c, q + 1)], [x(a, c, q)], [x(a, b, q + 1)]]
    else:
        replacement = [[x(a, b, q)], [x(a, c, q + 1)], [x(b, c, q)]]
    layers = _layers(d)
    layers[i : i + 3] = replacement
    return Diagram.from_events(d.source, layers)


def _apply_collapse(d: Diagram, m: Move) -> Diagram:
    e = _single_event(d.slices[m.slice_index])
    if e is None or not e.is_crossing:
        raise MoveError("no crossing at the collapse site")
    flip = EventKind.XNEG if e.kind is EventKind.XPOS else EventKind.XPOS
    layers = _layers(d)
    layers[m.slice_index] = [Event(flip, e.position, e.labels)]
    return Diagram.from_events(d.source, layers)


def _apply_kink2(d: Diagram, m: Move) -> Diagram:
    i = m.slice_index
    if i + 3 >= len(d.slices) or not _is_trivial_block(d, i, 4):
        raise MoveError("no double twist block at the site")
    layers = _layers(d)
    del layers[i : i + 4]
    return Diagram.from_events(d.source, layers)


def _interchange_apply(d: Diagram, i: int, dry_run: bool = False) -> Diagram | None:
    """Swap the events of slices i and i+1 when independent; returns None
    when the swap is illegal (and dry_run suppresses the rebuild)."""
    if i + 1 >= len(d.slices):
        return None
    lower = d.slices[i]
    upper = d.slices[i + 1]
    e = _single_event(lower)
    f = _single_event(upper)
    if e is None or f is None:
        return None
    _, passthrough, placements = lower.layout()
    outputs = placements[0].outputs
    out_start = outputs[0] if outputs else None
    inverse = {q: p for p, q in passthrough.items()}

    if f.arity_in:
        span = (f.position, f.position + 1)
        if any(q in outputs for q in span):
            return None
        if span[0] not in inverse or span[1] not in inverse:
            return None
        pre0, pre1 = inverse[span[0]], inverse[span[1]]
        if pre1 != pre0 + 1:
            return None
        f_new = Event(f.kind, pre0, f.labels)
        f_span = (pre0, pre1)
    else:
        q = f.position
        if outputs and outputs[0] < q <= outputs[-1]:
            return None  # insertion strictly inside the lower event's block
        mid_len = len(upper.input)
        if q == mid_len:
            pre = len(lower.input)
        elif q in inverse:
            pre = inverse[q]
        elif outputs and q == outputs[0]:
            pre = e.position
        elif outputs and q == outputs[-1] + 1:
            pre = e.position + e.arity_in
        else:
            return None
        f_new = Event(f.kind, pre, f.labels)
        f_span = (pre, pre - 1)  # insertion: empty span at pre

    delta = f.arity_out - f.arity_in
    if f.arity_in:
        shift = delta if f_span[1] < e.position else 0
    else:
        shift = delta if f_span[0] <= e.position else 0
    e_new = Event(e.kind, e.position + shift, e.labels)
    if dry_run:
        try:
            first = Slice(lower.input, (f_new,))
            Slice(first.output(), (e_new,))
            return d
        except DiagramError:
            return None
    layers = _layers(d)
    layers[i] = [f_new]
    layers[i + 1] = [e_new]
    return Diagram.from_events(d.source, layers)


# ---------------------------------------------------------------------------
# planar normal form


@dataclass(frozen=True)
class PlanarNormalForm:
    """A labelled non-crossing matching of the boundary positions."""

    source: ObjectWord
    target: ObjectWord
    arcs: tuple[tuple[tuple[str, int], tuple[str, int]], ...]

    def __str__(self) -> str:
        lines = [
            "source: " + " ".join(str(k) for k in self.source),
            "target: " + " ".join(str(k) for k in self.target),
        ]
        for (sa, ia), (sb, ib) in self.arcs:
            la = self.source[ia] if sa == "source" else self.target[ia]
            lb = self.source[ib] if sb == "source" else self.target[ib]
            lines.append(f"arc: {sa}[{ia}]({la}) -- {sb}[{ib}]({lb})")
        return "\n".join(lines) + "\n"


def normalize_planar(d: Diagram) -> PlanarNormalForm:
    """The boundary matching of a valid planar diagram, by strand tracing.

    Two planar diagrams are equal (in the zigzag/interchange congruence)
    exactly when their normal forms agree.  The invariants of the matching
    (equal labels on through arcs, consecutive labels on turnbacks, and
    planarity) are theorems about valid planar diagrams, so violations
    raise RuntimeError.
    """
    report = validate(d, AmbientDim.PLANAR)
    if not report.valid:
        raise DiagramError(f"not a valid planar diagram:\n{report}")
    arcs = []
    for comp in trace_components(d):
        if comp.closed or len(comp.ends) != 2:
            raise RuntimeError("planar component without exactly two boundary ends")
        (sa, ia), (sb, ib) = comp.ends
        la = d.source[ia] if sa == "source" else d.target[ia]
        lb = d.source[ib] if sb == "source" else d.target[ib]
        if sa == "source" and sb == "target":
            if la != lb:
                raise RuntimeError("through strand changed its level")
        elif sa == sb == "source":
            if lb != la + 1:
                raise RuntimeError("source turnback is not consecutively labelled")
        elif sa == sb == "target":
            if lb != la - 1:
                raise RuntimeError("target turnback is not consecutively labelled")
        arcs.append(((sa, ia), (sb, ib)))
    arcs.sort()
    _assert_planar_matching(arcs, len(d.source), len(d.target))
    return PlanarNormalForm(d.source, d.target, tuple(arcs))


def _assert_planar_matching(arcs, n_source: int, n_target: int) -> None:
    def circle(end: tuple[str, int]) -> int:
        side, i = end
        return i if side == "source" else n_source + (n_target - 1 - i)

    chords = [tuple(sorted((circle(a), circle(b)))) for a, b in arcs]
    for (a1, b1), (a2, b2) in itertools.combinations(chords, 2):
        if a1 < a2 < b1 < b2 or a2 < a1 < b2 < b1:
            raise RuntimeError("strand matching is not planar")


# ---------------------------------------------------------------------------
# reduction and equality


def reduce_diagram(d: Diagram, dim: AmbientDim, max_steps: int = 10_000) -> Diagram:
    """Apply forward moves (zigzag, second Reidemeister, and in the
    symmetric case sign collapse and double-kink removal) until none is
    left.  Every forward move removes events, so this terminates."""
    d = expand(d)
    if dim is AmbientDim.SYMMETRIC:
        for i, s in enumerate(d.slices):
            e = _single_event(s)
            if e is not None and e.kind is EventKind.XNEG:
                d = _apply_collapse(d, Move(MoveKind.SYM_COLLAPSE, True, i))
    for _ in range(max_steps):
        moves = [
            m
            for m in applicable_moves(d, dim)
            if m.forward and m.kind in (MoveKind.ZIGZAG, MoveKind.R2, MoveKind.KINK2)
        ]
        if not moves:
            return d
        d = apply_move(d, moves[0])
    raise MoveError("reduction did not terminate within the step bound")


class Equality(enum.Enum):
    EQUAL = "equal"
    DISTINCT = "distinct"
    UNKNOWN = "unknown"


def _signature(d: Diagram, dim: AmbientDim):
    comps = trace_components(d)
    ends = tuple(sorted(c.ends for c in comps))
    total = sum(e.sign for _, e in d.events() if e.is_crossing)
    if dim is AmbientDim.SYMMETRIC:
        total %= 2
    return (len(comps), ends, total)


def _neighbors(d: Diagram, dim: AmbientDim, window) -> Iterable[Diagram]:
    for m in applicable_moves(d, dim, include_backward=True, label_window=window):
        try:
            yield apply_move(d, m)
        except MoveError:
            continue


def equal(d1: Diagram, d2: Diagram, dim: AmbientDim, budget: int = 200) -> Equality:
    """Decide equality of two diagrams with the given ambient dimension.

    Planar diagrams are decided by normal form.  Otherwise a bidirectional
    search over the move graph runs within ``budget`` node expansions; if
    the diagrams are not joined, evaluation under the Kauffman datum and a
    rank-one unit datum (symmetric data in the symmetric case) separates
    them or the answer stays Unknown.
    """
    if d1.source != d2.source or d1.target != d2.target:
        raise DiagramError("equality needs matching boundary words")
    if dim is AmbientDim.PLANAR:
        return (
            Equality.EQUAL
            if normalize_planar(d1) == normalize_planar(d2)
            else Equality.DISTINCT
        )
    if _signature(d1, dim) != _signature(d2, dim):
        return Equality.DISTINCT

    r1, r2 = reduce_diagram(d1, dim), reduce_diagram(d2, dim)
    if to_text(r1) == to_text(r2):
        return Equality.EQUAL

    labels = r1.labels() | r2.labels() | {0}
    window = (min(labels) - 1, max(labels) + 1)
    sides = [
        ({to_text(r1): r1}, [r1]),
        ({to_text(r2): r2}, [r2]),
    ]
    spent = 0
    while spent < budget and (sides[0][1] or sides[1][1]):
        seen, frontier = min(
            (side for side in sides if side[1]), key=lambda side: len(side[1])
        )
        other_seen = sides[1][0] if seen is sides[0][0] else sides[0][0]
        nxt = []
        for node in frontier:
            for nb in _neighbors(node, dim, window):
                spent += 1
                key = to_text(nb)
                if key in other_seen:
                    return Equality.EQUAL
                if key not in seen:
                    seen[key] = nb
                    nxt.append(nb)
                if spent >= budget:
                    break
            if spent >= budget:
                break
        frontier[:] = nxt

    from .evaluate import evaluate, flip_datum, kauffman_datum, unit_datum

    if dim is AmbientDim.SYMMETRIC:
        data = [flip_datum(), unit_datum(0, -1)]
    else:
        data = [kauffman_datum(), unit_datum(2, 1)]
    for datum in data:
        if evaluate(d1, datum) != evaluate(d2, datum):
            return Equality.DISTINCT
    return Equality.UNKNOWN
