from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from graphprod.cardinals import CONTINUUM
from graphprod.classifier import compute_partition
from graphprod.equations import FreeProductInstance
from graphprod.fileformat import ParseError, emit, load, parse
from graphprod.groups import IntCyclic

INSTANCES = sorted((Path(__file__).resolve().parent.parent / "instances").glob("*.gp"))


def _shape(f):
    factors = [(x, emit_one(f, x)) for x, _ in f.factors]
    return f.vertices, f.edges, f.classes, f.non_edges, factors, f.options


def emit_one(f, x):
    return [line for line in emit(f).splitlines() if line.split()[1:2] == [x] and line.split()[0] in ("factor", "center")]


@pytest.mark.parametrize("path", INSTANCES, ids=lambda p: p.stem)
def test_instance_files_round_trip(path):
    f = load(str(path))
    g = parse(emit(f))
    assert _shape(g) == _shape(f)
    assert emit(g) == emit(f)


def test_two_vertex_z_file_is_a_free_product():
    f = parse("vertex a b\nfactor a Z\nfactor b Z\n")
    inst = FreeProductInstance.from_presentation(f.presentation())
    assert isinstance(inst.H1, IntCyclic) and isinstance(inst.H2, IntCyclic)


def test_exceptional_file_matches_partition():
    f = parse("""
vertex v0
class C aleph1
factor v0 nonabelian center-index uncountable countable no
center v0 Z 2 1 continuum
factor C abelian Z 2 1 mid lambda
""")
    part = compute_partition(f.instance())
    assert part.A5 == ("v0",) and part.A9 == ("C",)
    assert f.factor_map["v0"].center.lambdas[0][1] == CONTINUUM


@pytest.mark.parametrize("text,line,column", [
    ("vertex a\nedge a a\nfactor a Z\n", 2, 8),
    ("vertex a b\nfactor a Zmod 1\nfactor b Z\n", 2, 15),
    ("vertex a\nfactor a Q\n", 2, 10),
    ("vertex a\nfactor a Z\nfrobnicate\n", 3, 1),
    ("vertex a\nvertex a\n", 2, 8),
    ("vertex a\n", 1, 8),
    ("vertex a\nfactor a Z\noption colour red\n", 3, 8),
    ("class C aleph0\nfactor C Zmod 2\n", 2, 8),
    ("class C aleph0\nfactor C abelian Z 2 1 mid\n", 2, 24),
    ("vertex a b\nedge a c\n", 2, 8),
    ("vertex a\nclass C 3\nfactor a Z\nfactor C abelian Q 1 ; P 0 1\n", 4, 26),
    ("vertex a\nfactor a table | 0 1 | 1 1\n", 2, 10),
])
def test_errors_carry_locations(text, line, column):
    with pytest.raises(ParseError) as exc:
        parse(text)
    assert (exc.value.line, exc.value.column) == (line, column)
    assert str(exc.value).startswith(f"line {line}, column {column}: ")


def test_semantic_errors_are_reported_without_location():
    with pytest.raises(ParseError) as exc:
        parse("vertex a\nclass C 2\nfactor a Z\nfactor C abelian Q 1\nnonedge a C\n").presentation()
    assert not str(exc.value).startswith("line")


def test_center_needs_a_nonabelian_factor():
    with pytest.raises(ParseError):
        parse("vertex a\nfactor a Z\ncenter a Q 1\n")


def test_comments_and_blank_lines_are_ignored():
    f = parse("# header\n\nvertex a b   # two\nedge a b\nfactor a Zmod 2\nfactor b sum Zmod 2, Z\n")
    assert f.is_concrete and f.graph.adjacent("a", "b")
    assert f.factor_map["b"].describe() == "sum Zmod 2, Z"


CARDS = ["1", "5", "aleph0", "aleph1", "mid kappa", "continuum"]
CONCRETE = ["Z", "Zmod 2", "Zmod 6", "table | 0 1 | 1 0", "table | 0 1 2 | 1 2 0 | 2 0 1 names e r s",
            "sum Zmod 2, Zmod 3"]


@st.composite
def files(draw):
    nv = draw(st.integers(0, 3))
    nc = draw(st.integers(0 if nv else 1, 2))
    vs = [f"v{i}" for i in range(nv)]
    cs = [f"C{i}" for i in range(nc)]
    lines = []
    if vs:
        lines.append("vertex " + " ".join(vs))
    for c in cs:
        lines.append(f"class {c} {draw(st.sampled_from(CARDS))}" + (" independent" if draw(st.booleans()) else ""))
    pairs = [(a, b) for i, a in enumerate(vs) for b in vs[i + 1:]]
    for a, b in draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []:
        lines.append(f"edge {a} {b}")
    mixed = [(a, c) for a in vs + cs for c in cs if a != c]
    for a, b in draw(st.lists(st.sampled_from(mixed), unique_by=lambda e: frozenset(e), max_size=2)) if mixed else []:
        lines.append(f"nonedge {a} {b}")
    for x in vs + cs:
        kind = draw(st.sampled_from(["concrete", "abelian", "nonabelian"] if x in vs else ["abelian", "nonabelian"]))
        if kind == "concrete":
            lines.append(f"factor {x} {draw(st.sampled_from(CONCRETE))}")
        elif kind == "abelian":
            clauses = [f"Q {draw(st.sampled_from(CARDS))}"]
            if draw(st.booleans()):
                clauses.append(f"Z 3 2 {draw(st.sampled_from(CARDS))}")
            if draw(st.booleans()):
                clauses.append(draw(st.sampled_from(["H", "H reduced bound 4", "H unbounded", "H divisible"])))
            lines.append(f"factor {x} abelian " + " ; ".join(draw(st.permutations(clauses))))
        else:
            flags = draw(st.sampled_from(["", "center-index countable", "countable no", "countable yes center-index uncountable"]))
            lines.append(f"factor {x} nonabelian {flags}".rstrip())
            if draw(st.booleans()):
                lines.append(f"center {x} P 5 {draw(st.sampled_from(CARDS))}")
    if draw(st.booleans()):
        lines.append("option seed 7")
    return "\n".join(draw(st.permutations(lines[:1])) + lines[1:]) + "\n"


@settings(max_examples=200, deadline=None)
@given(files())
def test_emit_parse_is_stable(text):
    f = parse(text)
    g = parse(emit(f))
    assert _shape(g) == _shape(f)
    assert emit(g) == emit(f)
