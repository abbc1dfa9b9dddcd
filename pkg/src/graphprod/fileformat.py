"""Presentation files: a line-based text format for graphs, factors and options.

One declaration per line, ``#`` starts a comment.  The grammar is written out
in ``docs/presentation-format.md``; in short::

    vertex a b c
    edge a b
    class C aleph1 [independent]
    nonedge C a
    factor a Zmod 2
    factor b table | 0 1 2 | 1 2 0 | 2 0 1
    factor C abelian Z 2 1 continuum ; Q aleph0 ; H reduced bound 4
    factor d nonabelian center-index countable countable no
    center d Z 2 1 continuum
    option kstar 2

:func:`parse` returns a :class:`ParsedFile`; :func:`emit` writes one back in a
canonical order, and ``parse(emit(f)) == f`` for every parsed file.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator

from .abelian import (
    DIVISIBLE, REDUCED, AbelianDescriptor, CountablePart, DescriptorError, INF, SIndex, cyc, pruefer,
)
from .cardinals import Cardinal, format_cardinal, parse_cardinal
from .classifier import AbelianFactor, ClassifierError, ConcreteFactor, NonAbelianFactor, SymbolicInstance
from .graph import Graph, GraphError, SymbolicGraph, VertexClass
from .groups import ConcreteGroup, DirectSum, FiniteTable, GroupError, IntCyclic, ModCyclic
from .words import Presentation, WordError


OPTION_KEYS = ("alphabet", "depth", "gstar", "h", "kstar", "maxlen", "p", "seed")

_ID = re.compile(r"[A-Za-z_][A-Za-z0-9_\-\[\]\.,()]*$")
_RESERVED = {"|", ";", ":"}


class ParseError(ValueError):
    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"line {line}, column {column}: {message}" if line else message)
        self.line, self.column, self.message = line, column, message


@dataclass(frozen=True)
class Token:
    text: str
    line: int
    column: int


def _tokens(line: str, lineno: int) -> list[Token]:
    return [Token(m.group(), lineno, m.start() + 1) for m in re.finditer(r"\S+", line)]


@dataclass(frozen=True)
class ParsedFile:
    vertices: tuple[str, ...]
    edges: frozenset[frozenset[str]]
    classes: tuple[VertexClass, ...]
    non_edges: frozenset[frozenset[str]]
    factors: tuple[tuple[str, object], ...]          # id -> ConcreteGroup or symbolic spec
    options: tuple[tuple[str, tuple[str, ...]], ...] = ()

    @property
    def graph(self) -> Graph:
        return Graph(self.vertices, self.edges)

    @property
    def symbolic_graph(self) -> SymbolicGraph:
        return SymbolicGraph(self.graph, self.classes, self.non_edges)

    @property
    def factor_map(self) -> dict[str, object]:
        return dict(self.factors)

    @property
    def is_concrete(self) -> bool:
        return not self.classes and all(isinstance(f, ConcreteGroup) for _, f in self.factors)

    def option(self, key: str, default=None):
        for k, v in self.options:
            if k == key:
                return v
        return default

    def presentation(self) -> Presentation:
        if not self.is_concrete:
            raise ParseError(0, 0, "file has symbolic parts; it is not a concrete presentation")
        return Presentation(self.graph, self.factor_map)

    def instance(self) -> SymbolicInstance:
        specs = {x: ConcreteFactor(f) if isinstance(f, ConcreteGroup) else f for x, f in self.factors}
        return SymbolicInstance(self.symbolic_graph, specs)


# ------------------------------------------------------------------ factor specs

def _int(tok: Token, what: str, minimum: int = 0) -> int:
    if not re.fullmatch(r"-?\d+", tok.text):
        raise ParseError(tok.line, tok.column, f"expected {what}, got {tok.text!r}")
    v = int(tok.text)
    if v < minimum:
        raise ParseError(tok.line, tok.column, f"{what} must be >= {minimum}")
    return v


def _cardinal(toks: list[Token], i: int) -> tuple[Cardinal, int]:
    if i >= len(toks):
        last = toks[-1]
        raise ParseError(last.line, last.column + len(last.text), "expected a cardinal")
    try:
        c, used = parse_cardinal([t.text for t in toks[i:i + 2]])
    except ValueError as exc:
        raise ParseError(toks[i].line, toks[i].column, str(exc)) from None
    return c, i + used


def _concrete(toks: list[Token], where: Token) -> ConcreteGroup:
    if not toks:
        raise ParseError(where.line, where.column, "missing factor description")
    head = toks[0]
    try:
        if head.text == "Z":
            _no_more(toks, 1)
            return IntCyclic()
        if head.text == "Zmod":
            if len(toks) < 2:
                raise ParseError(head.line, head.column, "Zmod needs a modulus")
            n = _int(toks[1], "a modulus", 2)
            _no_more(toks, 2)
            return ModCyclic(n)
        if head.text == "table":
            return _table(toks)
        if head.text == "sum":
            return _sum(toks)
    except GroupError as exc:
        raise ParseError(head.line, head.column, str(exc)) from None
    raise ParseError(head.line, head.column, f"unknown factor kind {head.text!r}")


def _no_more(toks: list[Token], i: int) -> None:
    if len(toks) > i:
        raise ParseError(toks[i].line, toks[i].column, f"unexpected {toks[i].text!r}")


def _table(toks: list[Token]) -> FiniteTable:
    rows: list[list[int]] = []
    names = None
    i = 1
    while i < len(toks):
        t = toks[i]
        if t.text == "|":
            rows.append([])
        elif t.text == "names":
            names = [x.text for x in toks[i + 1:]]
            break
        else:
            if not rows:
                raise ParseError(t.line, t.column, "a table row starts with '|'")
            rows[-1].append(_int(t, "an element index"))
        i += 1
    if not rows:
        raise ParseError(toks[0].line, toks[0].column, "empty table")
    return FiniteTable(rows, names)


def _sum(toks: list[Token]) -> DirectSum:
    parts: list[list[Token]] = [[]]
    for t in toks[1:]:
        pieces = t.text.split(",")
        col = t.column
        for j, piece in enumerate(pieces):
            if j:
                parts.append([])
            if piece:
                parts[-1].append(Token(piece, t.line, col))
            col += len(piece) + 1
    comps = []
    for part in parts:
        if not part:
            raise ParseError(toks[0].line, toks[0].column, "empty component in sum")
        if part[0].text == "sum":
            raise ParseError(part[0].line, part[0].column, "nested sums are not allowed")
        comps.append(_concrete(part, toks[0]))
    return DirectSum(comps)


def _clauses(toks: list[Token]) -> Iterator[list[Token]]:
    cur: list[Token] = []
    for t in toks:
        if t.text == ";":
            yield cur
            cur = []
        else:
            cur.append(t)
    yield cur


def _descriptor(toks: list[Token], where: Token) -> AbelianDescriptor:
    lambdas: list[tuple[SIndex, Cardinal]] = []
    countable = None
    seen: set = set()
    for clause in _clauses(toks):
        if not clause:
            raise ParseError(where.line, where.column, "empty abelian clause")
        head = clause[0]
        try:
            if head.text == "Q":
                s, i = INF, 1
            elif head.text == "P":
                s, i = pruefer(_int(clause[1], "a prime", 2)) if len(clause) > 1 else _missing(head), 2
            elif head.text == "Z":
                if len(clause) < 3:
                    raise ParseError(head.line, head.column, "Z block needs a prime and an exponent")
                s, i = cyc(_int(clause[1], "a prime", 2), _int(clause[2], "an exponent", 1)), 3
            elif head.text == "H":
                if countable is not None:
                    raise ParseError(head.line, head.column, "duplicate H clause")
                countable = _countable_part(clause)
                continue
            else:
                raise ParseError(head.line, head.column, f"unknown abelian clause {head.text!r}")
        except DescriptorError as exc:
            raise ParseError(head.line, head.column, str(exc)) from None
        if s in seen:
            raise ParseError(head.line, head.column, f"duplicate block {s.label()}")
        seen.add(s)
        c, j = _cardinal(clause, i)
        _no_more(clause, j)
        lambdas.append((s, c))
    try:
        return AbelianDescriptor.of(lambdas, countable)
    except DescriptorError as exc:
        raise ParseError(where.line, where.column, str(exc)) from None


def _missing(tok: Token):
    raise ParseError(tok.line, tok.column, f"{tok.text} needs an argument")


def _countable_part(clause: list[Token]) -> CountablePart:
    div = bound = None
    unbounded = False
    i = 1
    while i < len(clause):
        t = clause[i]
        if t.text in (DIVISIBLE, REDUCED):
            if div is not None:
                raise ParseError(t.line, t.column, "divisibility given twice")
            div = t.text
        elif t.text == "unbounded":
            unbounded = True
        elif t.text == "bound":
            if i + 1 >= len(clause):
                raise ParseError(t.line, t.column, "bound needs a value")
            bound = _int(clause[i + 1], "a bound", 1)
            i += 1
        else:
            raise ParseError(t.line, t.column, f"unknown H flag {t.text!r}")
        i += 1
    try:
        return CountablePart(div, bound, unbounded)
    except DescriptorError as exc:
        raise ParseError(clause[0].line, clause[0].column, str(exc)) from None


def _flag(toks: list[Token], i: int, values: dict[str, bool]) -> bool:
    if i >= len(toks) or toks[i].text not in values:
        t = toks[min(i, len(toks) - 1)]
        raise ParseError(t.line, t.column, f"expected one of {sorted(values)}")
    return values[toks[i].text]


def _nonabelian(toks: list[Token]) -> dict:
    out: dict = {}
    i = 0
    while i < len(toks):
        t = toks[i]
        if t.text == "center-index" and "center_index_countable" not in out:
            out["center_index_countable"] = _flag(toks, i + 1, {"countable": True, "uncountable": False})
        elif t.text == "countable" and "countable" not in out:
            out["countable"] = _flag(toks, i + 1, {"yes": True, "no": False})
        else:
            raise ParseError(t.line, t.column, f"unexpected {t.text!r} in nonabelian flags")
        i += 2
    return out


# ------------------------------------------------------------------ parse

def _ident(tok: Token) -> str:
    if tok.text in _RESERVED or not _ID.match(tok.text):
        raise ParseError(tok.line, tok.column, f"bad identifier {tok.text!r}")
    return tok.text


def parse(text: str) -> ParsedFile:
    vertices: list[str] = []
    edges: list[tuple[Token, Token]] = []
    classes: list[VertexClass] = []
    class_tok: dict[str, Token] = {}
    non_edges: list[tuple[Token, Token]] = []
    factors: dict[str, tuple[Token, object]] = {}
    nonab: dict[str, tuple[Token, dict]] = {}
    centers: dict[str, tuple[Token, AbelianDescriptor]] = {}
    options: dict[str, tuple[str, ...]] = {}
    declared: dict[str, Token] = {}

    def declare(tok: Token) -> str:
        name = _ident(tok)
        if name in declared:
            first = declared[name]
            raise ParseError(tok.line, tok.column, f"{name!r} already declared on line {first.line}")
        declared[name] = tok
        return name

    def known(tok: Token) -> str:
        if tok.text not in declared:
            raise ParseError(tok.line, tok.column, f"unknown vertex or class {tok.text!r}")
        return tok.text

    for lineno, raw in enumerate(text.splitlines(), 1):
        toks = _tokens(raw.split("#", 1)[0], lineno)
        if not toks:
            continue
        head, rest = toks[0], toks[1:]
        kw = head.text
        if kw == "vertex":
            if not rest:
                raise ParseError(lineno, head.column, "vertex needs at least one id")
            vertices += [declare(t) for t in rest]
        elif kw in ("edge", "nonedge"):
            if len(rest) != 2:
                raise ParseError(lineno, head.column, f"{kw} takes exactly two ids")
            a, b = rest
            known(a), known(b)
            if a.text == b.text:
                raise ParseError(b.line, b.column, f"reflexive {kw} {a.text!r}")
            (edges if kw == "edge" else non_edges).append((a, b))
        elif kw == "class":
            if len(rest) < 2:
                raise ParseError(lineno, head.column, "class needs an id and a multiplicity")
            cid = declare(rest[0])
            card, j = _cardinal(rest, 1)
            independent = False
            if j < len(rest):
                if rest[j].text != "independent":
                    raise ParseError(rest[j].line, rest[j].column, f"unexpected {rest[j].text!r}")
                independent = True
                _no_more(rest, j + 1)
            try:
                classes.append(VertexClass(cid, card, independent))
            except GraphError as exc:
                raise ParseError(lineno, rest[0].column, str(exc)) from None
            class_tok[cid] = rest[0]
        elif kw == "factor":
            if len(rest) < 2:
                raise ParseError(lineno, head.column, "factor needs an id and a description")
            x = known(rest[0])
            if x in factors or x in nonab:
                raise ParseError(lineno, rest[0].column, f"second factor for {x!r}")
            body = rest[1:]
            if body[0].text == "abelian":
                factors[x] = (rest[0], AbelianFactor(_descriptor(body[1:], body[0])))
            elif body[0].text == "nonabelian":
                nonab[x] = (rest[0], _nonabelian(body[1:]))
            else:
                factors[x] = (rest[0], _concrete(body, rest[0]))
        elif kw == "center":
            if len(rest) < 2:
                raise ParseError(lineno, head.column, "center needs an id and abelian clauses")
            x = known(rest[0])
            if x in centers:
                raise ParseError(lineno, rest[0].column, f"second center for {x!r}")
            centers[x] = (rest[0], _descriptor(rest[1:], rest[0]))
        elif kw == "option":
            if len(rest) < 2:
                raise ParseError(lineno, head.column, "option needs a key and a value")
            key = rest[0].text
            if key not in OPTION_KEYS:
                raise ParseError(lineno, rest[0].column, f"unknown option {key!r}")
            if key in options:
                raise ParseError(lineno, rest[0].column, f"option {key!r} given twice")
            options[key] = tuple(t.text for t in rest[1:])
        else:
            raise ParseError(lineno, head.column, f"unknown keyword {kw!r}")

    for x, (tok, desc) in centers.items():
        if x not in nonab:
            raise ParseError(tok.line, tok.column, f"center given for {x!r}, which has no nonabelian factor")
    for x, (tok, flags) in nonab.items():
        c = centers.get(x)
        factors[x] = (tok, NonAbelianFactor(center=c[1] if c else None, **flags))

    ids = tuple(vertices) + tuple(c.id for c in classes)
    for x in ids:
        if x not in factors:
            t = declared[x]
            raise ParseError(t.line, t.column, f"no factor for {x!r}")
    for x, (tok, f) in factors.items():
        if x in class_tok and isinstance(f, ConcreteGroup):
            raise ParseError(tok.line, tok.column, f"class {x!r} needs a symbolic factor")

    vset = set(vertices)
    for a, b in edges:
        for t in (a, b):
            if t.text not in vset:
                raise ParseError(t.line, t.column, "edges join explicit vertices; use nonedge for classes")
    for a, b in non_edges:
        if a.text in vset and b.text in vset:
            raise ParseError(a.line, a.column, "nonedge needs a class; omit the edge instead")

    out = ParsedFile(
        vertices=tuple(vertices),
        edges=frozenset(frozenset((a.text, b.text)) for a, b in edges),
        classes=tuple(classes),
        non_edges=frozenset(frozenset((a.text, b.text)) for a, b in non_edges),
        factors=tuple((x, factors[x][1]) for x in ids),
        options=tuple(sorted(options.items())),
    )
    try:
        out.instance()
    except (ClassifierError, GraphError, WordError) as exc:
        raise ParseError(0, 0, str(exc)) from None
    return out


# ------------------------------------------------------------------ emit

def _emit_descriptor(d: AbelianDescriptor) -> str:
    parts = []
    for s, c in d.lambdas:
        lit = format_cardinal(c)
        if s.is_inf:
            parts.append(f"Q {lit}")
        elif s.is_pruefer:
            parts.append(f"P {s.p} {lit}")
        else:
            parts.append(f"Z {s.p} {s.k} {lit}")
    if d.countable is not None:
        h = d.countable
        flags = ["H"]
        if h.divisibility:
            flags.append(h.divisibility)
        if h.bound is not None:
            flags.append(f"bound {h.bound}")
        if h.unbounded:
            flags.append("unbounded")
        parts.append(" ".join(flags))
    return " ; ".join(parts)


def emit(f: ParsedFile) -> str:
    lines = []
    if f.vertices:
        lines.append("vertex " + " ".join(f.vertices))
    for c in f.classes:
        lines.append(f"class {c.id} {format_cardinal(c.multiplicity)}" + (" independent" if c.independent else ""))
    order = {x: i for i, x in enumerate(f.vertices + tuple(c.id for c in f.classes))}
    for kw, pairs in (("edge", f.edges), ("nonedge", f.non_edges)):
        for a, b in sorted(tuple(sorted(e, key=order.get)) for e in pairs):
            lines.append(f"{kw} {a} {b}")
    for x, spec in f.factors:
        if isinstance(spec, ConcreteGroup):
            lines.append(f"factor {x} {spec.describe()}")
        elif isinstance(spec, AbelianFactor):
            lines.append(f"factor {x} abelian {_emit_descriptor(spec.descriptor)}")
        else:
            flags = []
            if spec.center_index_countable is not None:
                flags.append("center-index " + ("countable" if spec.center_index_countable else "uncountable"))
            if spec.countable is not None:
                flags.append("countable " + ("yes" if spec.countable else "no"))
            lines.append(" ".join([f"factor {x} nonabelian"] + flags))
            if spec.center is not None:
                lines.append(f"center {x} {_emit_descriptor(spec.center)}")
    for k, v in f.options:
        lines.append(f"option {k} " + " ".join(v))
    return "\n".join(lines) + "\n"


def load(path: str) -> ParsedFile:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


__all__ = ["OPTION_KEYS", "ParseError", "ParsedFile", "emit", "load", "parse"]
