import random

import pytest

from tangles.cli import (
    Gen,
    IdWord,
    Named,
    Par,
    ParseError,
    Seq,
    main,
    parse_expr,
    print_expr,
    to_diagram,
)
from tangles.diagram import AmbientDim
from tangles.evaluate import datum_to_text, kauffman_datum
from tangles.links import trefoil

BRAIDED = AmbientDim.BRAIDED


def test_parse_generators():
    assert parse_expr("cup(0)") == Gen("cup", (0,))
    assert parse_expr("x+(0,-1)") == Gen("x+", (0, -1))
    assert parse_expr("id[0,1]") == IdWord((0, 1))
    assert parse_expr("id[]") == IdWord(())
    assert parse_expr("trefoil") == Named("trefoil")


def test_parse_precedence():
    e = parse_expr("id[0] | cup(0) ; cap(0) | id[0]")
    assert e == Seq(
        Par(IdWord((0,)), Gen("cup", (0,))), Par(Gen("cap", (0,)), IdWord((0,)))
    )


def test_parse_parens():
    e = parse_expr("(cup(0) ; cap(0)) | id[]")
    assert isinstance(e, Par) and isinstance(e.left, Seq)


def test_parse_error_position():
    with pytest.raises(ParseError) as err:
        parse_expr("cup(0) ; id[1] | cap? ")
    assert err.value.position == len("cup(0) ; id[1] | cap")
    with pytest.raises(ParseError):
        parse_expr("cup(0,1)")  # too many arguments
    with pytest.raises(ParseError):
        parse_expr("cup(0) cap(0)")  # missing operator


def random_expr(rng, depth=0):
    roll = rng.random()
    if depth > 3 or roll < 0.4:
        kind = rng.choice(["gen", "id", "named"])
        if kind == "gen":
            g = rng.choice(["cup", "cap", "x+", "x-"])
            args = (rng.randrange(-3, 4),) if g in ("cup", "cap") else (
                rng.randrange(-3, 4),
                rng.randrange(-3, 4),
            )
            return Gen(g, args)
        if kind == "id":
            return IdWord(tuple(rng.randrange(-3, 4) for _ in range(rng.randrange(0, 3))))
        return Named(rng.choice(["unknot", "trefoil", "hopf", "unlink"]))
    if roll < 0.7:
        return Seq(random_expr(rng, depth + 1), random_expr(rng, depth + 1))
    return Par(random_expr(rng, depth + 1), random_expr(rng, depth + 1))


def test_print_parse_roundtrip():
    rng = random.Random(67)
    for _ in range(300):
        e = random_expr(rng)
        assert parse_expr(print_expr(e)) == e


def test_to_diagram_zigzag():
    d = to_diagram(parse_expr("id[0] | cup(0) ; cap(0) | id[0]"), AmbientDim.PLANAR)
    assert d.source == (0,) and d.target == (0,)
    assert d.slices[0].output() == (0, 1, 0)


def test_to_diagram_builtin_validated():
    d = to_diagram(parse_expr("trefoil"), BRAIDED)
    assert d == trefoil()


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_validate(capsys):
    code, out, _ = run(capsys, "validate", "--dim", "2", "id[0] | cup(0) ; cap(0) | id[0]")
    assert code == 0
    assert out.splitlines()[0] == "ok"


def test_cli_validate_rejects_planar_crossing(capsys):
    code, out, err = run(capsys, "validate", "--dim", "2", "x+(0,0)")
    assert code == 1


def test_cli_validate_label_window(capsys):
    code, out, _ = run(capsys, "validate", "--dim", "3", "--window", "0,1", "cup(1)")
    assert code == 1 and "window" in out
    code, out, _ = run(capsys, "validate", "--dim", "3", "--window", "0,2", "cup(1)")
    assert code == 0


def test_cli_syntax_error(capsys):
    code, _, err = run(capsys, "eval", "cup(")
    assert code == 1 and "syntax error" in err


def test_cli_boundary_mismatch(capsys):
    code, _, err = run(capsys, "eval", "cup(0) ; cap(1)")
    assert code == 1 and "compose" in err


def test_cli_eval_unknot(capsys):
    code, out, _ = run(capsys, "eval", "--dim", "3", "--datum", "kauffman", "unknot")
    assert code == 0
    assert out.strip() == "A^5+A"  # -A^3 * delta: the minimal unknot has one kink


def test_cli_eval_matrix_output(capsys):
    code, out, _ = run(capsys, "eval", "--dim", "3", "id[0]")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "matrix 2x2"
    assert lines[1].split() == ["1", "0"] and lines[2].split() == ["0", "1"]


def test_cli_normalize_planar(capsys):
    code, out, _ = run(capsys, "normalize", "--dim", "2", "id[0] | cup(0) ; cap(0) | id[0]")
    assert code == 0
    assert "arc: source[0](0) -- target[0](0)" in out


def test_cli_normalize_braided(capsys):
    code, out, _ = run(capsys, "normalize", "--dim", "3", "x+(0,1) ; x-(1,0)")
    assert code == 0
    assert out == "source: 0 1\n"


def test_cli_invariant_values(capsys):
    code, out1, _ = run(capsys, "invariant", "trefoil")
    assert code == 0
    fields = dict(line.split(": ", 1) for line in out1.strip().splitlines())
    assert fields["components"] == "1"
    assert fields["writhe"] == "3"
    code, out2, _ = run(capsys, "invariant", "hopf")
    fields2 = dict(line.split(": ", 1) for line in out2.strip().splitlines())
    assert fields2["writhe"] == "2"
    assert fields2["normalized"] == "-A^-2-A^-10"


def test_cli_invariant_mirror_pair(capsys):
    # the trefoil expression with all crossings flipped is its mirror; the
    # two normalized values are exchanged by A -> A^-1
    from tangles.rings import Laurent

    expr = (
        "cup(0) ; id[1,0] | cup(1) ; id[1] | x+(0,2) | id[1] ; "
        "id[1] | x+(2,0) | id[1] ; id[1] | x+(0,2) | id[1] ; "
        "cap(1) | id[0,1] ; cap(0)"
    )
    flipped = expr.replace("x+", "x-")
    _, out1, _ = run(capsys, "invariant", expr)
    _, out2, _ = run(capsys, "invariant", flipped)
    v1 = Laurent.parse(dict(l.split(": ", 1) for l in out1.strip().splitlines())["normalized"])
    v2 = Laurent.parse(dict(l.split(": ", 1) for l in out2.strip().splitlines())["normalized"])
    assert v2 == v1.substitute_inverse()


def test_cli_invariant_deterministic(capsys):
    _, out1, _ = run(capsys, "invariant", "trefoil")
    _, out2, _ = run(capsys, "invariant", "trefoil")
    assert out1 == out2


def test_cli_invariant_rejects_open(capsys):
    code, _, err = run(capsys, "invariant", "id[0]")
    assert code == 1 and "closed" in err


def test_cli_datum_file(tmp_path, capsys):
    path = tmp_path / "k.datum"
    path.write_text(datum_to_text(kauffman_datum()))
    code, out_file, _ = run(capsys, "eval", "--datum", str(path), "trefoil")
    assert code == 0
    code, out_preset, _ = run(capsys, "eval", "--datum", "kauffman", "trefoil")
    assert out_file == out_preset


def test_cli_datum_validate(capsys):
    code, out, _ = run(capsys, "datum", "--datum", "kauffman", "id[]")
    assert code == 0
    assert "Yang-Baxter" in out


def test_cli_words_factor(capsys):
    code, out, _ = run(capsys, "words", "factor", "0110")
    assert code == 0 and out.strip() == "01 10"


def test_cli_star_enum(capsys):
    code, out, _ = run(capsys, "star", "enum", "--left", "z2", "--right", "z2", "--bound", "5")
    assert code == 0
    assert out.splitlines()[0] == "total: 11"


def test_cli_seg_complete(capsys):
    code, out, _ = run(capsys, "seg", "complete", "--preset", "nerve-z3", "--budget", "4")
    assert code == 0
    assert "3 classes" in out and "stabilized: True" in out


def test_cli_simplex_phi(capsys):
    code, out, _ = run(capsys, "simplex", "phi", "--map", "1,2", "--target", "3", "--lo", "2", "--hi", "2")
    assert code == 0 and out.strip() == "[2,2]"


def test_cli_stdin(capsys, monkeypatch):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO("unknot"))
    code, out, _ = run(capsys, "invariant")
    assert code == 0 and "writhe: 1" in out
