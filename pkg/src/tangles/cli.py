"""Command line surface: a small expression language for building
diagrams, plus subcommands over the library.

The expression grammar (";" composes bottom-to-top, "|" tensors and binds
tighter than ";"):

    expr   := term (";" term)*
    term   := factor ("|" factor)*
    factor := "cup(" int ")" | "cap(" int ")"
            | "x+(" int "," int ")" | "x-(" int "," int ")"
            | "id[" int ("," int)* "]" | "id[]"
            | "unknot" | "trefoil" | "hopf" | "unlink"
            | "(" expr ")"

Subcommands write deterministic text to stdout and use exit status 0 for
success, 1 for user errors (syntax, typing, boundary mismatches), and 2
for internal invariant violations.
"""

from __future__ import annotations

import argparse
import re
import sys
from dataclasses import dataclass

from . import links
from .diagram import (
    AmbientDim,
    Diagram,
    DiagramError,
    compose,
    cap as cap_event,
    cross_neg,
    cross_pos,
    cup as cup_event,
    elementary,
    self_writhe,
    tensor,
    to_text,
    trace_components,
    validate,
    writhe,
    component_framings,
)
from .evaluate import (
    EvaluationError,
    RigidDatum,
    bracket_state_sum,
    datum_from_text,
    evaluate,
    jones_normalized,
    kauffman_datum,
    trivial_datum,
    validate_datum,
)
from .rewrite import MoveError, normalize_planar, reduce_diagram
from .segal import complete, nerve_of_monoid, one_truncated, pushout_of_nerves
from .simplex import ConvexSubset, MonotoneMap, SimplexObject, outer_hull, SimplexError
from .words import MonoidError, PointedMonoid, alternating_factorization, free_product_enumerate


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"syntax error at position {position}: {message}")
        self.position = position


# ---------------------------------------------------------------------------
# expression AST


@dataclass(frozen=True)
class Expr:
    pass


@dataclass(frozen=True)
class Gen(Expr):
    kind: str  # "cup", "cap", "x+", "x-"
    args: tuple[int, ...]


@dataclass(frozen=True)
class IdWord(Expr):
    labels: tuple[int, ...]


@dataclass(frozen=True)
class Named(Expr):
    name: str


@dataclass(frozen=True)
class Seq(Expr):
    first: Expr
    second: Expr


@dataclass(frozen=True)
class Par(Expr):
    left: Expr
    right: Expr


_TOKEN = re.compile(
    r"\s*(?:(?P<name>unknot|trefoil|hopf|unlink)"
    r"|(?P<gen>cup|cap|x\+|x-)"
    r"|(?P<id>id)"
    r"|(?P<int>-?\d+)"
    r"|(?P<punct>[();,|\[\]]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            where = len(text) - len(stripped)
            raise ParseError(f"unexpected character {text[where]!r}", where)
        kind = m.lastgroup
        assert kind is not None
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.index = 0

    def peek(self):
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", len(self.text))
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind}, found {tok[1]!r}", tok[2])
        if value is not None and tok[1] != value:
            raise ParseError(f"expected {value!r}, found {tok[1]!r}", tok[2])
        self.index += 1
        return tok

    def parse(self) -> Expr:
        e = self.expr()
        tok = self.peek()
        if tok is not None:
            raise ParseError(f"unexpected {tok[1]!r}", tok[2])
        return e

    def expr(self) -> Expr:
        e = self.term()
        while self.peek() and self.peek()[1] == ";":
            self.take()
            e = Seq(e, self.term())
        return e

    def term(self) -> Expr:
        e = self.factor()
        while self.peek() and self.peek()[1] == "|":
            self.take()
            e = Par(e, self.factor())
        return e

    def ints(self, count: int) -> tuple[int, ...]:
        out = [int(self.take("int")[1])]
        for _ in range(count - 1):
            self.take("punct", ",")
            out.append(int(self.take("int")[1]))
        return tuple(out)

    def factor(self) -> Expr:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", len(self.text))
        kind, value, pos = tok
        if kind == "name":
            self.take()
            return Named(value)
        if kind == "gen":
            self.take()
            self.take("punct", "(")
            args = self.ints(1 if value in ("cup", "cap") else 2)
            self.take("punct", ")")
            return Gen(value, args)
        if kind == "id":
            self.take()
            self.take("punct", "[")
            labels: tuple[int, ...] = ()
            if self.peek() and self.peek()[1] != "]":
                labels = (int(self.take("int")[1]),)
                while self.peek() and self.peek()[1] == ",":
                    self.take()
                    labels += (int(self.take("int")[1]),)
            self.take("punct", "]")
            return IdWord(labels)
        if value == "(":
            self.take()
            e = self.expr()
            self.take("punct", ")")
            return e
        raise ParseError(f"unexpected {value!r}", pos)


def parse_expr(text: str) -> Expr:
    return _Parser(text).parse()


def print_expr(e: Expr) -> str:
    if isinstance(e, Gen):
        return f"{e.kind}({','.join(str(a) for a in e.args)})"
    if isinstance(e, IdWord):
        return f"id[{','.join(str(a) for a in e.labels)}]"
    if isinstance(e, Named):
        return e.name
    if isinstance(e, Par):
        left = print_expr(e.left)
        right = print_expr(e.right)
        if isinstance(e.left, Seq):
            left = f"({left})"
        if isinstance(e.right, (Seq, Par)):
            right = f"({right})"
        return f"{left} | {right}"
    if isinstance(e, Seq):
        first = print_expr(e.first)
        second = print_expr(e.second)
        if isinstance(e.second, Seq):
            second = f"({second})"
        return f"{first} ; {second}"
    raise TypeError(f"not an expression: {e!r}")


def to_diagram(e: Expr, dim: AmbientDim) -> Diagram:
    if isinstance(e, Gen):
        event = {
            "cup": lambda: cup_event(e.args[0]),
            "cap": lambda: cap_event(e.args[0]),
            "x+": lambda: cross_pos(*e.args),
            "x-": lambda: cross_neg(*e.args),
        }[e.kind]()
        return elementary(event, dim)
    if isinstance(e, IdWord):
        return Diagram.identity(e.labels)
    if isinstance(e, Named):
        d = links.BUILTINS[e.name]()
        if not dim.allows_crossings:
            raise DiagramError(f"builtin {e.name!r} has crossings, illegal for n=2")
        return d
    if isinstance(e, Seq):
        return compose(to_diagram(e.first, dim), to_diagram(e.second, dim))
    if isinstance(e, Par):
        return tensor(to_diagram(e.left, dim), to_diagram(e.right, dim))
    raise TypeError(f"not an expression: {e!r}")


# ---------------------------------------------------------------------------
# command plumbing


_MONOIDS = {
    "z2": lambda: PointedMonoid.cyclic(2),
    "z3": lambda: PointedMonoid.cyclic(3),
    "z4": lambda: PointedMonoid.cyclic(4),
    "trivial": PointedMonoid.trivial,
    "free-x": lambda: PointedMonoid.free("x"),
    "free-y": lambda: PointedMonoid.free("y"),
}

_PRESETS = {
    "nerve-z2": lambda: nerve_of_monoid(PointedMonoid.cyclic(2), K=3),
    "nerve-z3": lambda: nerve_of_monoid(PointedMonoid.cyclic(3), K=3),
    "nerve-z4": lambda: nerve_of_monoid(PointedMonoid.cyclic(4), K=3),
    "pushout-z2-z2": lambda: pushout_of_nerves(
        PointedMonoid.cyclic(2), PointedMonoid.cyclic(2), K=3
    ),
    "pushout-z2-z3": lambda: pushout_of_nerves(
        PointedMonoid.cyclic(2), PointedMonoid.cyclic(3), K=3
    ),
    "chain3": lambda: one_truncated("uvw", [("a", "u", "v"), ("b", "v", "w")], K=2),
}


def _read_expr(args) -> str:
    if args.expr is not None:
        return args.expr
    if getattr(args, "file", None):
        with open(args.file, "r", encoding="utf-8") as fh:
            return fh.read()
    return sys.stdin.read()


def _dim(args) -> AmbientDim:
    return AmbientDim.from_dimension(args.dim)


def _datum(name: str) -> RigidDatum:
    if name == "kauffman":
        return kauffman_datum()
    if name == "trivial":
        return trivial_datum()
    with open(name, "r", encoding="utf-8") as fh:
        return datum_from_text(fh.read())


def _diagram_from_args(args, dim: AmbientDim) -> Diagram:
    text = _read_expr(args)
    d = to_diagram(parse_expr(text), dim)
    report = validate(d, dim)
    if not report.valid:
        raise DiagramError(str(report))
    return d


def _cmd_validate(args) -> int:
    dim = _dim(args)
    text = _read_expr(args)
    d = to_diagram(parse_expr(text), dim)
    window = None
    if args.window:
        lo, hi = args.window.split(",")
        window = (int(lo), int(hi))
    report = validate(d, dim, label_window=window)
    print(report)
    print(f"source: {' '.join(str(k) for k in d.source)}")
    print(f"target: {' '.join(str(k) for k in d.target)}")
    print(f"events: {d.num_events}")
    return 0 if report.valid else 1


def _cmd_normalize(args) -> int:
    dim = _dim(args)
    d = _diagram_from_args(args, dim)
    if dim is AmbientDim.PLANAR:
        print(normalize_planar(d), end="")
    else:
        print(to_text(reduce_diagram(d, dim)), end="")
    return 0


def _cmd_eval(args) -> int:
    dim = _dim(args)
    d = _diagram_from_args(args, dim)
    datum = _datum(args.datum)
    report = validate_datum(datum, dim)
    if not report.valid:
        raise EvaluationError(f"datum {datum.name!r} is not valid for n={args.dim}:\n{report}")
    m = evaluate(d, datum)
    if m.rows == 1 and m.cols == 1:
        print(m.scalar())
    else:
        print(f"matrix {m.rows}x{m.cols}")
        for row in m.to_rows():
            print(" ".join(str(x) for x in row))
    return 0


def _cmd_invariant(args) -> int:
    dim = _dim(args)
    d = _diagram_from_args(args, dim)
    comps = trace_components(d)
    if any(not c.closed for c in comps):
        raise DiagramError("invariants need a closed diagram")
    crossings = sum(1 for _, e in d.events() if e.is_crossing)
    print(f"components: {len(comps)}")
    print(f"crossings: {crossings}")
    print(f"writhe: {writhe(d)}")
    print(f"self-writhe: {self_writhe(d)}")
    print("framings: " + " ".join(str(f) for f in component_framings(d)))
    print(f"bracket: {bracket_state_sum(d)}")
    print(f"normalized: {jones_normalized(d)}")
    return 0


def _cmd_datum(args) -> int:
    datum = _datum(args.datum)
    report = validate_datum(datum, _dim(args))
    print(report)
    return 0 if report.valid else 1


def _cmd_words_factor(args) -> int:
    factors = alternating_factorization(tuple(args.word))
    print(" ".join("".join(f) for f in factors) if factors else "(empty)")
    return 0


def _cmd_star_enum(args) -> int:
    left = _MONOIDS[args.left]()
    right = _MONOIDS[args.right]()
    elements = free_product_enumerate(left, right, args.bound)
    by_length: dict[int, int] = {}
    for e in elements:
        by_length[e.alternation_length()] = by_length.get(e.alternation_length(), 0) + 1
    print(f"total: {len(elements)}")
    for length in sorted(by_length):
        print(f"length {length}: {by_length[length]}")
    for e in sorted(elements, key=lambda e: (e.alternation_length(), str(e))):
        print(str(e))
    return 0


def _cmd_seg_complete(args) -> int:
    data = _PRESETS[args.preset]()
    comp = complete(data, args.budget)
    print(f"objects: {len(comp.presentation.objects)}")
    print(f"generators: {len(comp.presentation.generators)}")
    print(f"relations: {len(comp.presentation.relations)}")
    for key in sorted(comp.hom_classes, key=repr):
        print(f"hom {key[0]} -> {key[1]}: {comp.class_count(*key)} classes")
    print(f"stabilized: {comp.stabilized}")
    return 0


def _cmd_simplex_phi(args) -> int:
    values = tuple(int(v) for v in args.map.split(","))
    f = MonotoneMap(SimplexObject(len(values) - 1), SimplexObject(args.target), values)
    C = ConvexSubset(args.lo, args.hi, SimplexObject(args.target))
    print(str(outer_hull(f, C)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tangles", description="framed tangle diagrams: validate, rewrite, evaluate"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_expr_command(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.add_argument("expr", nargs="?", help="diagram expression (default: stdin)")
        p.add_argument("--file", help="read the expression from a file")
        p.add_argument("--dim", type=int, default=3, help="ambient dimension n >= 2")
        p.set_defaults(fn=fn)
        return p

    p = add_expr_command("validate", _cmd_validate, help="type-check a diagram")
    p.add_argument("--window", help="label window 'i,j' restricting levels to [-i, j]")
    add_expr_command("normalize", _cmd_normalize, help="planar normal form or reduced diagram")
    p = add_expr_command("eval", _cmd_eval, help="evaluate against a rigid datum")
    p.add_argument("--datum", default="kauffman", help="kauffman, trivial, or a datum file")
    add_expr_command("invariant", _cmd_invariant, help="bracket, normalized value, writhe table")
    p = add_expr_command("datum", _cmd_datum, help="validate a rigid datum")
    p.add_argument("--datum", default="kauffman", help="kauffman, trivial, or a datum file")

    words = sub.add_parser("words", help="word combinatorics").add_subparsers(
        dest="subcommand", required=True
    )
    p = words.add_parser("factor", help="minimal alternating factorization")
    p.add_argument("word", help="a word, one character per letter")
    p.set_defaults(fn=_cmd_words_factor)

    star = sub.add_parser("star", help="free products of monoids").add_subparsers(
        dest="subcommand", required=True
    )
    p = star.add_parser("enum", help="enumerate a free product")
    p.add_argument("--left", default="z2", choices=sorted(_MONOIDS))
    p.add_argument("--right", default="z2", choices=sorted(_MONOIDS))
    p.add_argument("--bound", type=int, default=4)
    p.set_defaults(fn=_cmd_star_enum)

    seg = sub.add_parser("seg", help="Segal machinery").add_subparsers(
        dest="subcommand", required=True
    )
    p = seg.add_parser("complete", help="complete a preset simplicial datum")
    p.add_argument("--preset", default="pushout-z2-z2", choices=sorted(_PRESETS))
    p.add_argument("--budget", type=int, default=4)
    p.set_defaults(fn=_cmd_seg_complete)

    simplex = sub.add_parser("simplex", help="simplex-category operators").add_subparsers(
        dest="subcommand", required=True
    )
    p = simplex.add_parser("phi", help="outer hull of a convex subset along a map")
    p.add_argument("--map", required=True, help="comma-separated values of the map")
    p.add_argument("--target", type=int, required=True, help="p of the target simplex [p]")
    p.add_argument("--lo", type=int, required=True)
    p.add_argument("--hi", type=int, required=True)
    p.set_defaults(fn=_cmd_simplex_phi)

    return parser


USER_ERRORS = (
    ParseError,
    DiagramError,
    MoveError,
    EvaluationError,
    MonoidError,
    SimplexError,
    FileNotFoundError,
    KeyError,
    ValueError,
)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except USER_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (RuntimeError, AssertionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
