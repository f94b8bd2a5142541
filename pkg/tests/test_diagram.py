import random

import pytest

from tangles.diagram import (
    AmbientDim,
    Diagram,
    DiagramError,
    Slice,
    cap,
    component_framings,
    compose,
    cross_pos,
    cup,
    degree,
    elementary,
    from_text,
    mirror,
    self_writhe,
    tensor,
    to_text,
    trace_components,
    validate,
    writhe,
)
from tangles.generate import iter_closed_diagrams, random_diagram
from tangles.links import hopf, trefoil, unknot, unlink

PLANAR = AmbientDim.PLANAR
BRAIDED = AmbientDim.BRAIDED


def zigzag():
    return Diagram.from_events((0,), [[cup(0, at=1)], [cap(0, at=0)]])


def test_elementary_boundaries():
    d = elementary(cup(0), BRAIDED)
    assert d.source == () and d.target == (1, 0)
    d = elementary(cap(0), BRAIDED)
    assert d.source == (0, 1) and d.target == ()
    d = elementary(cross_pos(3, -1), BRAIDED)
    assert d.source == (3, -1) and d.target == (-1, 3)


def test_crossing_forbidden_planar():
    with pytest.raises(DiagramError):
        elementary(cross_pos(0, 0), PLANAR)


def test_compose_identity_neutral():
    d = zigzag()
    assert compose(Diagram.identity(d.source), d) == d
    assert compose(d, Diagram.identity(d.target)) == d


def test_compose_zigzag_shape():
    lower = tensor(Diagram.identity((0,)), elementary(cup(0), PLANAR))
    upper = tensor(elementary(cap(0), PLANAR), Diagram.identity((0,)))
    d = compose(lower, upper)
    assert d.source == (0,) and d.target == (0,)
    assert d.slices[0].output() == (0, 1, 0)


def test_compose_mismatch():
    with pytest.raises(DiagramError):
        compose(elementary(cup(0), PLANAR), elementary(cap(1), PLANAR))


def test_tensor_examples():
    d = zigzag()
    assert tensor(d, Diagram.identity(())) == d
    both = tensor(elementary(cup(0), PLANAR), elementary(cup(2), PLANAR))
    assert both.source == () and both.target == (1, 0, 3, 2)
    u, v = (0, 1), (5,)
    assert tensor(Diagram.identity(u), Diagram.identity(v)) == Diagram.identity(u + v)


def test_tensor_padding():
    tall = compose(zigzag(), zigzag())
    wide = tensor(tall, elementary(cup(1), PLANAR))
    assert wide.target == (0, 2, 1)
    assert len(wide.slices) == 4


def test_slice_typing_errors():
    with pytest.raises(DiagramError):
        Slice((0, 0), (cap(0, at=0),))  # needs (0, 1)
    with pytest.raises(DiagramError):
        Slice((0,), (cross_pos(0, 1, at=0),))  # runs past the end
    with pytest.raises(DiagramError):
        Slice((0, 1), (cap(0, at=0), cup(0, at=1)))  # cup inside consumed span


def test_validate_reports_positions():
    d = Diagram.from_events((0, 1), [[cross_pos(0, 1, at=0)]])
    report = validate(d, PLANAR)
    assert not report.valid
    assert "crossing" in str(report)
    assert validate(d, BRAIDED).valid


def test_validate_label_window():
    d = elementary(cup(2), BRAIDED)
    assert validate(d, BRAIDED, label_window=(0, 3)).valid
    assert not validate(d, BRAIDED, label_window=(0, 2)).valid


def test_no_crossing_free_closed_loop():
    # a cup followed directly by a cap cannot type: (1, 0) is descending
    with pytest.raises(DiagramError):
        Diagram.from_events((), [[cup(0)], [cap(0)]])
    # exhaustively: no closed diagram without crossings at <= 6 events
    for d in iter_closed_diagrams(max_events=6, max_crossings=0, width=6, lo=-2, hi=2):
        raise AssertionError(f"found a crossing-free closed diagram:\n{to_text(d)}")


def test_closed_components_have_odd_self_crossings():
    count = 0
    for d in iter_closed_diagrams(max_events=6, max_crossings=6, width=5, lo=-1, hi=1):
        comps = trace_components(d)
        for c in comps:
            selfs = {}
            for tag in c.crossings:
                selfs[tag] = selfs.get(tag, 0) + 1
            assert sum(1 for n in selfs.values() if n == 2) % 2 == 1
        count += 1
    assert count > 300


def test_trace_identity():
    comps = trace_components(Diagram.identity((0, 1, 2)))
    assert len(comps) == 3 and all(not c.closed for c in comps)


def test_trace_zigzag_single_component():
    comps = trace_components(zigzag())
    assert len(comps) == 1
    assert comps[0].ends == (("source", 0), ("target", 0))


def test_trace_closed_unknot():
    comps = trace_components(unknot())
    assert len(comps) == 1 and comps[0].closed


def test_degree():
    assert degree(()) == 0
    assert degree((1, 0)) == 0
    assert degree((0, 0, 1)) == 1
    assert degree((-1, -2)) == 0
    assert degree((-2,)) == 1


def test_degree_conservation_random():
    rng = random.Random(17)
    for _ in range(500):
        dim = rng.choice(list(AmbientDim))
        d = random_diagram(rng, dim)
        assert degree(d.source) == degree(d.target)


def test_writhe_examples():
    assert writhe(trefoil()) == 3
    assert writhe(trefoil(False)) == -3
    assert writhe(hopf()) == 2
    assert writhe(unlink()) == 0
    assert self_writhe(hopf()) == 0
    assert component_framings(hopf()) == [1, -1]
    with pytest.raises(DiagramError):
        writhe(zigzag())  # open components


def test_mirror_involution():
    for d in (trefoil(), hopf(), unknot()):
        assert mirror(mirror(d)) == d
        assert writhe(mirror(d)) == -writhe(d)


def test_serialization_roundtrip():
    rng = random.Random(23)
    for d in (zigzag(), trefoil(), hopf(), unlink(), Diagram.identity((1, -1))):
        assert from_text(to_text(d)) == d
    for _ in range(200):
        d = random_diagram(rng, BRAIDED)
        assert from_text(to_text(d)) == d


def test_serialization_errors():
    with pytest.raises(DiagramError):
        from_text("slice: cup@0(0)\n")
    with pytest.raises(DiagramError):
        from_text("source: 0\nslice: cup@x(0)\n")
    with pytest.raises(DiagramError):
        from_text("source: 0\nslice: twist@0(0)\n")


def test_component_count_subadditive_under_compose():
    rng = random.Random(29)
    for _ in range(100):
        d1 = random_diagram(rng, BRAIDED)
        d2 = random_diagram(rng, BRAIDED, source=d1.target)
        whole = compose(d1, d2)
        assert len(trace_components(whole)) <= len(trace_components(d1)) + len(
            trace_components(d2)
        )
