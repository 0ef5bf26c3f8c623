"""Plain-text file formats for algebras, actions, crossed modules,
groupoids, crossed-module morphisms and homotopies.

A file holds one or more blocks; each block starts with a line
``<kind> <name>`` and later blocks may refer to earlier ones (or to names
supplied in a context, e.g. the catalog) by name.  Blank lines and ``#``
comments are ignored everywhere.

Block layouts::

    algebra <name>            action <name>          xmod <name>
    order <n>                 actor <algebra>        A <algebra>
    binops <k>                acted <algebra>        B <algebra>
    <op> <opposite>   (x k)   dot                    alpha
    unops <m>                 <|actor| rows>         <one row of |A| entries>
    <op>              (x m)   <op>       (per binop) action <action>
    add                       <|actor| rows>
    <n rows>
    neg                       groupoid <name>        xmodmorphism <name>
    <one row>                 C1 <algebra>           source <xmod>
    <op> + <n rows>  (binops) C0 <algebra>           target <xmod>
    <op> + <one row> (unops)  d0 / d1 / eps rows     f1 / f0 rows

    homotopy <name>
    from <xmodmorphism>
    to <xmodmorphism>
    d
    <one row of |B| entries>
"""

from __future__ import annotations

from .actions import ActionSet, make_action
from .core import OmegaAlgebra, Signature, make_algebra
from .errors import ParseError
from .groupoid import InternalGroupoid, make_groupoid
from .homotopy import XModHomotopy
from .xmod import CrossedModule, XModMorphism, make_crossed_module

KINDS = ("algebra", "action", "xmod", "groupoid", "xmodmorphism", "homotopy")


class _Lines:
    def __init__(self, text: str):
        self.items: list[tuple[int, list[str]]] = []
        for i, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if line:
                self.items.append((i, line.split()))
        self.pos = 0

    def peek(self):
        return self.items[self.pos] if self.pos < len(self.items) else (None, None)

    def next(self, what: str) -> tuple[int, list[str]]:
        if self.pos >= len(self.items):
            raise ParseError(f"unexpected end of file, expected {what}",
                             self.items[-1][0] if self.items else 1)
        item = self.items[self.pos]
        self.pos += 1
        return item

    def keyword(self, word: str) -> tuple[int, list[str]]:
        line_no, tokens = self.next(f"'{word}'")
        if tokens[0] != word:
            raise ParseError(f"expected '{word}', found {tokens[0]!r}", line_no)
        return line_no, tokens[1:]

    def int_row(self, count: int, what: str) -> list[int]:
        line_no, tokens = self.next(what)
        try:
            values = [int(t) for t in tokens]
        except ValueError:
            raise ParseError(f"{what}: non-integer entry in {tokens}", line_no) from None
        if len(values) != count:
            raise ParseError(f"{what}: expected {count} entries, found {len(values)}", line_no)
        return values

    def int_table(self, rows: int, cols: int, what: str) -> list[list[int]]:
        return [self.int_row(cols, f"{what} row {r}") for r in range(rows)]


def _resolve(context: dict, name: str, want: type, line_no: int):
    if name not in context:
        raise ParseError(f"unknown name {name!r}", line_no)
    obj = context[name]
    if not isinstance(obj, want):
        raise ParseError(f"{name!r} is a {type(obj).__name__}, expected {want.__name__}", line_no)
    return obj


def _named_ref(lines: _Lines, word: str) -> tuple[int, str]:
    line_no, rest = lines.keyword(word)
    if len(rest) != 1:
        raise ParseError(f"expected '{word} <name>'", line_no)
    return line_no, rest[0]


def _parse_algebra(lines: _Lines, name: str) -> OmegaAlgebra:
    line_no, rest = lines.keyword("order")
    try:
        order = int(rest[0])
    except (IndexError, ValueError):
        raise ParseError("expected 'order <n>'", line_no) from None
    line_no, rest = lines.keyword("binops")
    k = int(rest[0]) if rest else -1
    if k < 0:
        raise ParseError("expected 'binops <k>'", line_no)
    binary_ops, opposite = [], []
    for _ in range(k):
        line_no, tokens = lines.next("binary op pair")
        if len(tokens) != 2:
            raise ParseError(f"expected '<op> <opposite>', found {tokens}", line_no)
        binary_ops.append(tokens[0])
        opposite.append(tokens[1])
    line_no, rest = lines.keyword("unops")
    m = int(rest[0]) if rest else -1
    if m < 0:
        raise ParseError("expected 'unops <m>'", line_no)
    unary_ops = []
    for _ in range(m):
        line_no, tokens = lines.next("unary op name")
        if len(tokens) != 1:
            raise ParseError(f"expected a single op name, found {tokens}", line_no)
        unary_ops.append(tokens[0])
    signature = Signature(tuple(binary_ops), tuple(opposite), tuple(unary_ops))
    lines.keyword("add")
    add = lines.int_table(order, order, "add")
    lines.keyword("neg")
    neg = lines.int_row(order, "neg")
    bins = []
    for op in binary_ops:
        lines.keyword(op)
        bins.append((op, lines.int_table(order, order, op)))
    uns = []
    for op in unary_ops:
        lines.keyword(op)
        uns.append((op, lines.int_row(order, op)))
    return make_algebra(name, signature, add, neg, bins, uns)


def _parse_action(lines: _Lines, name: str, context: dict) -> ActionSet:
    line_no, ref = _named_ref(lines, "actor")
    actor = _resolve(context, ref, OmegaAlgebra, line_no)
    line_no, ref = _named_ref(lines, "acted")
    acted = _resolve(context, ref, OmegaAlgebra, line_no)
    lines.keyword("dot")
    dot = lines.int_table(actor.order, acted.order, "dot")
    stars = []
    for op in actor.signature.binary_ops:
        lines.keyword(op)
        stars.append((op, lines.int_table(actor.order, acted.order, op)))
    return make_action(actor, acted, dot, stars)


def _parse_xmod(lines: _Lines, name: str, context: dict) -> CrossedModule:
    line_no, ref = _named_ref(lines, "A")
    top = _resolve(context, ref, OmegaAlgebra, line_no)
    line_no, ref = _named_ref(lines, "B")
    base = _resolve(context, ref, OmegaAlgebra, line_no)
    lines.keyword("alpha")
    boundary = lines.int_row(top.order, "alpha")
    line_no, ref = _named_ref(lines, "action")
    action = _resolve(context, ref, ActionSet, line_no)
    return make_crossed_module(top, base, boundary, action)


def _parse_groupoid(lines: _Lines, name: str, context: dict) -> InternalGroupoid:
    line_no, ref = _named_ref(lines, "C1")
    arrows = _resolve(context, ref, OmegaAlgebra, line_no)
    line_no, ref = _named_ref(lines, "C0")
    objects = _resolve(context, ref, OmegaAlgebra, line_no)
    lines.keyword("d0")
    d0 = lines.int_row(arrows.order, "d0")
    lines.keyword("d1")
    d1 = lines.int_row(arrows.order, "d1")
    lines.keyword("eps")
    eps = lines.int_row(objects.order, "eps")
    return make_groupoid(name, arrows, objects, d0, d1, eps)


def _parse_xmodmorphism(lines: _Lines, name: str, context: dict) -> XModMorphism:
    line_no, ref = _named_ref(lines, "source")
    source = _resolve(context, ref, CrossedModule, line_no)
    line_no, ref = _named_ref(lines, "target")
    target = _resolve(context, ref, CrossedModule, line_no)
    lines.keyword("f1")
    f1 = lines.int_row(source.top.order, "f1")
    lines.keyword("f0")
    f0 = lines.int_row(source.base.order, "f0")
    return XModMorphism(source, target, tuple(f1), tuple(f0))


def _parse_homotopy(lines: _Lines, name: str, context: dict) -> XModHomotopy:
    line_no, ref = _named_ref(lines, "from")
    f = _resolve(context, ref, XModMorphism, line_no)
    line_no, ref = _named_ref(lines, "to")
    g = _resolve(context, ref, XModMorphism, line_no)
    lines.keyword("d")
    d = lines.int_row(f.source.base.order, "d")
    return XModHomotopy(f, g, tuple(d))


def parse_blocks(text: str, context: dict | None = None) -> list[tuple[str, str, object]]:
    """Parse every block in the text; returns (kind, name, object) triples.

    The context maps names to previously known objects; parsed blocks are
    added to a copy of it so later blocks can refer to earlier ones.
    """
    context = dict(context or {})
    lines = _Lines(text)
    out = []
    while True:
        line_no, tokens = lines.peek()
        if tokens is None:
            break
        if tokens[0] not in KINDS:
            raise ParseError(
                f"expected one of {', '.join(KINDS)}, found {tokens[0]!r}", line_no)
        if len(tokens) != 2:
            raise ParseError(f"expected '{tokens[0]} <name>'", line_no)
        kind, name = tokens
        lines.next("block header")
        try:
            if kind == "algebra":
                obj = _parse_algebra(lines, name)
            elif kind == "action":
                obj = _parse_action(lines, name, context)
            elif kind == "xmod":
                obj = _parse_xmod(lines, name, context)
            elif kind == "groupoid":
                obj = _parse_groupoid(lines, name, context)
            elif kind == "xmodmorphism":
                obj = _parse_xmodmorphism(lines, name, context)
            else:
                obj = _parse_homotopy(lines, name, context)
        except ParseError:
            raise
        except Exception as exc:
            raise ParseError(f"in block {kind} {name}: {exc}", line_no) from exc
        context[name] = obj
        out.append((kind, name, obj))
    return out


def parse_file(path: str, context: dict | None = None) -> list[tuple[str, str, object]]:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_blocks(fh.read(), context)


# ---------------------------------------------------------------------------
# writers (self-contained: referenced objects are emitted first)

def _rows(table) -> list[str]:
    return [" ".join(str(x) for x in row) for row in table]


def algebra_to_text(alg: OmegaAlgebra) -> str:
    sig = alg.signature
    lines = [f"algebra {alg.name}", f"order {alg.order}", f"binops {len(sig.binary_ops)}"]
    for op, opp in zip(sig.binary_ops, sig.opposite):
        lines.append(f"{op} {opp}")
    lines.append(f"unops {len(sig.unary_ops)}")
    lines.extend(sig.unary_ops)
    lines.append("add")
    lines.extend(_rows(alg.add))
    lines.append("neg")
    lines.append(" ".join(str(x) for x in alg.neg))
    for op, table in alg.binary_tables:
        lines.append(op)
        lines.extend(_rows(table))
    for op, row in alg.unary_tables:
        lines.append(op)
        lines.append(" ".join(str(x) for x in row))
    return "\n".join(lines) + "\n"


def action_to_text(act: ActionSet, name: str, standalone: bool = True) -> str:
    parts = []
    if standalone:
        parts.append(algebra_to_text(act.actor))
        if act.acted != act.actor or act.acted.name != act.actor.name:
            parts.append(algebra_to_text(act.acted))
    lines = [f"action {name}", f"actor {act.actor.name}", f"acted {act.acted.name}", "dot"]
    lines.extend(_rows(act.dot))
    for op, table in act.star_tables:
        lines.append(op)
        lines.extend(_rows(table))
    parts.append("\n".join(lines) + "\n")
    return "\n".join(parts)


def xmod_to_text(x: CrossedModule, name: str) -> str:
    parts = [algebra_to_text(x.top)]
    if x.base != x.top or x.base.name != x.top.name:
        parts.append(algebra_to_text(x.base))
    parts.append(action_to_text(x.action, f"{name}-action", standalone=False))
    lines = [f"xmod {name}", f"A {x.top.name}", f"B {x.base.name}", "alpha",
             " ".join(str(v) for v in x.boundary), f"action {name}-action"]
    parts.append("\n".join(lines) + "\n")
    return "\n".join(parts)


def groupoid_to_text(g: InternalGroupoid, name: str | None = None) -> str:
    name = name or g.name
    parts = [algebra_to_text(g.arrows)]
    if g.objects != g.arrows or g.objects.name != g.arrows.name:
        parts.append(algebra_to_text(g.objects))
    lines = [f"groupoid {name}", f"C1 {g.arrows.name}", f"C0 {g.objects.name}",
             "d0", " ".join(str(v) for v in g.d0),
             "d1", " ".join(str(v) for v in g.d1),
             "eps", " ".join(str(v) for v in g.eps)]
    parts.append("\n".join(lines) + "\n")
    return "\n".join(parts)
