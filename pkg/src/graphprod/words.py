"""Words in a graph product and their normal forms.

A :class:`Presentation` pairs a :class:`~graphprod.graph.Graph` with one concrete
group per vertex.  Words are tuples of :class:`Syllable`; :func:`reduce` returns
the canonical normal form, which is the lexicographically least member of the
word's class under commuting swaps (vertex order first, then element order).

Internally words are lists of ``(vertex_index, element)`` pairs and adjacency
is a bit mask per vertex, which keeps the hot loops free of string handling.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Any, Iterable, Mapping, NamedTuple, Sequence

from .graph import Graph, GraphError
from .groups import ConcreteGroup, GroupError


class WordError(ValueError):
    pass


class Syllable(NamedTuple):
    vertex: str
    element: Any


class Word(tuple):
    """A finite sequence of syllables (not necessarily reduced)."""

    def __new__(cls, syllables: Iterable[Syllable] = ()):
        return super().__new__(cls, (s if isinstance(s, Syllable) else Syllable(*s) for s in syllables))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({list(self)!r})"


class NormalForm(Word):
    """A word returned by :func:`reduce`; canonical for the element it spells."""


EMPTY = NormalForm()


class Presentation:
    """A graph together with a concrete factor group per vertex (immutable)."""

    def __init__(self, graph: Graph, factors: Mapping[str, ConcreteGroup]):
        missing = [v for v in graph.vertices if v not in factors]
        if missing:
            raise WordError(f"vertices without a factor: {missing!r}")
        extra = [v for v in factors if v not in graph]
        if extra:
            raise WordError(f"factors for unknown vertices: {extra!r}")
        self.graph = graph
        self.factors = {v: factors[v] for v in graph.vertices}
        self.vertices = graph.vertices
        self.vindex = {v: i for i, v in enumerate(graph.vertices)}
        n = len(graph.vertices)
        self.groups = tuple(self.factors[v] for v in graph.vertices)
        masks = []
        for a in graph.vertices:
            m = 0
            for j, b in enumerate(graph.vertices):
                if a != b and graph.adjacent(a, b):
                    m |= 1 << j
            masks.append(m)
        self.adj = tuple(masks)
        # vertices that do not commute with vertex i, including i itself
        self.blockers = tuple(tuple(j for j in range(n) if not (masks[i] >> j) & 1) for i in range(n))

    # conversions ---------------------------------------------------------
    def to_internal(self, w: Iterable[Syllable]) -> list[tuple[int, Any]]:
        out = []
        for s in w:
            vertex, element = s
            i = self.vindex.get(vertex)
            if i is None:
                raise WordError(f"vertex {vertex!r} is not in the presentation")
            if not self.groups[i].contains(element):
                raise WordError(f"{element!r} is not an element of the factor at {vertex!r}")
            out.append((i, element))
        return out

    def from_internal(self, w: Iterable[tuple[int, Any]], cls=NormalForm) -> Word:
        vs = self.vertices
        return cls(Syllable(vs[i], e) for i, e in w)

    # text form -------------------------------------------------------------
    def parse_word(self, text: str) -> Word:
        """Parse whitespace separated ``vertex:element`` tokens; ``1`` is the empty word."""
        tokens = text.split()
        if tokens == ["1"]:
            return Word()
        out = []
        for tok in tokens:
            vertex, sep, elem = tok.partition(":")
            if not sep:
                raise WordError(f"bad syllable {tok!r}; expected vertex:element")
            if vertex not in self.vindex:
                raise WordError(f"vertex {vertex!r} is not in the presentation")
            try:
                g = self.factors[vertex].parse_element(elem)
            except GroupError as exc:
                raise WordError(f"in {tok!r}: {exc}") from None
            if not self.factors[vertex].is_identity(g):
                out.append(Syllable(vertex, g))
        return Word(out)

    def format_word(self, w: Iterable[Syllable]) -> str:
        parts = [f"{v}:{self.factors[v].format_element(e)}" for v, e in w]
        return " ".join(parts) if parts else "1"

    def syllable(self, vertex: str, element) -> Syllable:
        return Syllable(vertex, element)

    def word(self, text: str) -> Word:
        return self.parse_word(text)

    def commute(self, a: str, b: str) -> bool:
        return a != b and self.graph.adjacent(a, b)

    def __repr__(self) -> str:
        return f"Presentation({self.vertices!r})"


# ------------------------------------------------------------------ internals

def _push(p: Presentation, out: list, pending: list) -> None:
    """Append pending syllables (a stack, last item first) to the reduced list ``out``."""
    groups, adj = p.groups, p.adj
    while pending:
        v, g = pending.pop()
        grp = groups[v]
        if grp.is_identity(g):
            continue
        j = len(out) - 1
        while j >= 0:
            u = out[j][0]
            if u == v or not (adj[v] >> u) & 1:
                break
            j -= 1
        if j >= 0 and out[j][0] == v:
            h = grp.mul(out[j][1], g)
            if grp.is_identity(h):
                tail = out[j + 1:]
                del out[j:]
                pending.extend(reversed(tail))
            else:
                out[j] = (v, h)
        else:
            out.append((v, g))


def _reduce_list(p: Presentation, w: Sequence[tuple[int, Any]]) -> list:
    out: list = []
    _push(p, out, list(reversed(w)))
    return out


def _canonical_order(p: Presentation, w: list) -> list:
    """Lexicographically least rearrangement of a reduced word by commuting swaps."""
    n = len(w)
    if n < 2:
        return list(w)
    blockers = p.blockers
    last: dict[int, int] = {}
    indeg = [0] * n
    succ: list[list[int]] = [[] for _ in range(n)]
    for j, (v, _) in enumerate(w):
        for u in blockers[v]:
            i = last.get(u)
            if i is not None:
                succ[i].append(j)
                indeg[j] += 1
        last[v] = j
    groups = p.groups
    heap = [(w[j][0], groups[w[j][0]].key(w[j][1]), j) for j in range(n) if indeg[j] == 0]
    heapq.heapify(heap)
    out = []
    while heap:
        _, _, i = heapq.heappop(heap)
        out.append(w[i])
        for j in succ[i]:
            indeg[j] -= 1
            if indeg[j] == 0:
                v = w[j][0]
                heapq.heappush(heap, (v, groups[v].key(w[j][1]), j))
    return out


def _normal(p: Presentation, w: Sequence[tuple[int, Any]]) -> list:
    return _canonical_order(p, _reduce_list(p, w))


def _first_positions(p: Presentation, w: Sequence[tuple[int, Any]]) -> list[int]:
    """Positions of syllables that commute with everything before them (reduced w)."""
    adj = p.adj
    out = []
    seen = 0           # bit mask of vertices occurring so far
    for i, (v, _) in enumerate(w):
        if seen & ~adj[v] == 0:
            out.append(i)
        seen |= 1 << v
    return out


def _last_positions(p: Presentation, w: Sequence[tuple[int, Any]]) -> list[int]:
    adj = p.adj
    out = []
    seen = 0
    for i in range(len(w) - 1, -1, -1):
        v = w[i][0]
        if seen & ~adj[v] == 0:
            out.append(i)
        seen |= 1 << v
    return out[::-1]


def _internal_nf(p: Presentation, w: Iterable[Syllable]) -> list:
    """Internal form of an arbitrary word, reduced and canonically ordered."""
    return _normal(p, p.to_internal(w))


# ------------------------------------------------------------------ public API

def reduce(p: Presentation, w: Iterable[Syllable]) -> NormalForm:
    """Canonical normal form of the element spelled by ``w``."""
    return p.from_internal(_normal(p, p.to_internal(w)))


def multiply(p: Presentation, *ws: Iterable[Syllable]) -> NormalForm:
    acc: list = []
    for w in ws:
        _push(p, acc, list(reversed(p.to_internal(w))))
    return p.from_internal(_canonical_order(p, acc))


def _inverse_list(p: Presentation, w: Sequence[tuple[int, Any]]) -> list:
    groups = p.groups
    return [(v, groups[v].inv(g)) for v, g in reversed(w)]


def inverse(p: Presentation, w: Iterable[Syllable]) -> NormalForm:
    return p.from_internal(_normal(p, _inverse_list(p, p.to_internal(w))))


def _power_list(p: Presentation, w: list, k: int) -> list:
    if k < 0:
        w, k = _inverse_list(p, w), -k
    acc: list = []
    base = _reduce_list(p, w)
    while k:
        if k & 1:
            _push(p, acc, list(reversed(base)))
        k >>= 1
        if k:
            sq = list(base)
            _push(p, sq, list(reversed(base)))
            base = sq
    return acc


def power(p: Presentation, w: Iterable[Syllable], k: int) -> NormalForm:
    """``w`` to the integer power ``k`` by repeated squaring."""
    return p.from_internal(_canonical_order(p, _power_list(p, p.to_internal(w), k)))


def lg(w: Sequence[Syllable]) -> int:
    return len(w)


def sp(w: Iterable[Syllable]) -> frozenset[str]:
    return frozenset(s.vertex for s in w)


def first_set(p: Presentation, w: Sequence[Syllable]) -> frozenset[Syllable]:
    """Syllables that can start some normal form of ``w`` (``w`` reduced)."""
    iw = p.to_internal(w)
    return frozenset(w[i] for i in _first_positions(p, iw))


def last_set(p: Presentation, w: Sequence[Syllable]) -> frozenset[Syllable]:
    iw = p.to_internal(w)
    return frozenset(w[i] for i in _last_positions(p, iw))


def lhat(p: Presentation, w: Sequence[Syllable]) -> frozenset[Syllable]:
    return frozenset(Syllable(v, p.factors[v].inv(g)) for v, g in last_set(p, w))


def is_weakly_cyclically_reduced(p: Presentation, w: Sequence[Syllable]) -> bool:
    return not (first_set(p, w) & lhat(p, w))


def _shortening_pair(p: Presentation, iw: list) -> tuple[int, int] | None:
    """A first-position and a distinct last-position syllable on the same vertex.

    Among all such pairs the one with the least vertex, then least first element,
    then least last element, is returned.
    """
    firsts = {iw[i][0]: i for i in _first_positions(p, iw)}
    best = None
    for j in _last_positions(p, iw):
        v = iw[j][0]
        i = firsts.get(v)
        if i is None or i == j:
            continue
        grp = p.groups[v]
        cand = (v, grp.key(iw[i][1]), grp.key(iw[j][1]), i, j)
        if best is None or cand < best:
            best = cand
    return None if best is None else (best[3], best[4])


def is_cyclically_reduced(p: Presentation, w: Sequence[Syllable]) -> bool:
    """No sequence of moves including cyclic rotation shortens ``w`` (``w`` reduced).

    A reduced word is shortenable exactly when some vertex has one occurrence
    that can be moved to the front and a different one that can be moved to the
    back: rotating the back one around puts the two side by side.
    """
    return _shortening_pair(p, p.to_internal(w)) is None


def is_ab_cyclically_reduced(p: Presentation, w: Sequence[Syllable], a: str, b: str) -> bool:
    if len(w) == 0:
        return False
    return all(s.vertex == a for s in first_set(p, w)) and all(s.vertex == b for s in last_set(p, w))


def _remove_positions(w: list, drop: Iterable[int]) -> list:
    d = set(drop)
    return [s for k, s in enumerate(w) if k not in d]


def cyclically_reduce(p: Presentation, w: Sequence[Syllable]) -> tuple[NormalForm, NormalForm]:
    """Return ``(c, core)`` with ``w = c core c^-1`` and ``core`` cyclically reduced."""
    core = _internal_nf(p, w)
    conj: list = []
    while True:
        pair = _shortening_pair(p, core)
        if pair is None:
            break
        i, j = pair
        x, y = core[i], core[j]
        rest = _remove_positions(core, (i, j))
        grp = p.groups[x[0]]
        rest.append((x[0], grp.mul(y[1], x[1])))
        core = _normal(p, rest)
        _push(p, conj, [x])
    return p.from_internal(_canonical_order(p, conj)), p.from_internal(core)


@dataclass(frozen=True)
class PyramidDecomposition:
    """``w = w1 w2 w3 w2p w1^-1`` with a clique head ``w2`` and tail ``w2p``."""

    w1: NormalForm
    w2: NormalForm
    w3: NormalForm
    w2p: NormalForm

    def pieces(self) -> tuple[NormalForm, ...]:
        return (self.w1, self.w2, self.w3, self.w2p)


def _cancel_pair(p: Presentation, iw: list) -> tuple[int, int] | None:
    firsts = {iw[i][0]: i for i in _first_positions(p, iw)}
    best = None
    for j in _last_positions(p, iw):
        v = iw[j][0]
        i = firsts.get(v)
        if i is None or i == j:
            continue
        grp = p.groups[v]
        if grp.is_identity(grp.mul(iw[i][1], iw[j][1])):
            cand = (v, grp.key(iw[i][1]), i, j)
            if best is None or cand < best:
                best = cand
    return None if best is None else (best[2], best[3])


def pyramid_decompose(p: Presentation, w: Sequence[Syllable], check: bool = True) -> PyramidDecomposition:
    core = _internal_nf(p, w)
    w1: list = []
    while True:
        pair = _cancel_pair(p, core)
        if pair is None:
            break
        i, j = pair
        w1.append(core[i])
        core = _canonical_order(p, _remove_positions(core, (i, j)))
    firsts = {core[i][0]: i for i in _first_positions(p, core)}
    heads, tails = [], []
    for j in _last_positions(p, core):
        i = firsts.get(core[j][0])
        if i is not None and i != j:
            heads.append(i)
            tails.append(j)
    w1 = _canonical_order(p, w1)
    w2 = _canonical_order(p, [core[i] for i in sorted(heads)])
    w2p = _canonical_order(p, [core[j] for j in sorted(tails)])
    w3 = _canonical_order(p, _remove_positions(core, heads + tails))
    dec = PyramidDecomposition(*(p.from_internal(x) for x in (w1, w2, w3, w2p)))
    if check:
        failed = pyramid_violations(p, dec, w)
        if failed:
            raise AssertionError(f"pyramid decomposition of {w!r} violates {failed}")
    return dec


def pyramid_violations(p: Presentation, dec: PyramidDecomposition, w: Sequence[Syllable] | None = None) -> list[str]:
    """Names of the conditions a candidate decomposition fails (empty when valid)."""
    w1, w2, w3, w2p = dec.pieces()
    bad = []
    inv1 = list(reversed([Syllable(v, p.factors[v].inv(g)) for v, g in w1]))
    whole = list(w1) + list(w2) + list(w3) + list(w2p) + inv1
    nf = reduce(p, whole)
    if len(nf) != len(whole) or any(p.factors[v].is_identity(g) for v, g in whole):
        bad.append("normal-form")
    if w is not None and nf != reduce(p, w):
        bad.append("reassembly")
    rot = reduce(p, list(w3) + list(w2p) + list(w2))
    if not is_cyclically_reduced(p, rot):
        bad.append("core-cyclically-reduced")
    if sp(w2) != sp(w2p):
        bad.append("same-support")
    if w2 and not all(p.commute(a, b) for a in sp(w2) for b in sp(w2) if a != b):
        bad.append("clique-support")
    if w2 and (first_set(p, w2) & lhat(p, w2p)):
        bad.append("head-tail-disjoint")
    return bad


def csp(p: Presentation, w: Sequence[Syllable]) -> frozenset[str]:
    d = pyramid_decompose(p, w, check=False)
    return sp(d.w2) | sp(d.w3) | sp(d.w2p)


def clg(p: Presentation, w: Sequence[Syllable]) -> int:
    d = pyramid_decompose(p, w, check=False)
    return len(d.w2) + len(d.w3) + len(d.w2p)


def project(p: Presentation, w: Iterable[Syllable], a: Iterable[str]) -> NormalForm:
    """Image of ``w`` under the retraction killing every vertex outside ``a``."""
    keep = set(a)
    unknown = keep - set(p.vertices)
    if unknown:
        raise GraphError(f"unknown vertices {sorted(unknown)!r}")
    return reduce(p, [s for s in w if s.vertex in keep])


def restrict(p: Presentation, a: Iterable[str]) -> Presentation:
    """Presentation of the sub-product on the vertex set ``a``."""
    from .graph import induced_subgraph

    sub = induced_subgraph(p.graph, a)
    return Presentation(sub, {v: p.factors[v] for v in sub.vertices})


__all__ = [
    "EMPTY", "NormalForm", "Presentation", "PyramidDecomposition", "Syllable", "Word",
    "WordError", "clg", "csp", "cyclically_reduce", "first_set", "inverse",
    "is_ab_cyclically_reduced", "is_cyclically_reduced", "is_weakly_cyclically_reduced",
    "last_set", "lg", "lhat", "multiply", "power", "project", "pyramid_decompose",
    "pyramid_violations", "reduce", "restrict", "sp",
]
