"""Graphs underlying a graph product.

Vertex ids are opaque strings.  The order of ``Graph.vertices`` is the total
order used everywhere downstream (canonical forms, tie-breaking, reports).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .cardinals import Cardinal, card_sum, fin


class GraphError(ValueError):
    pass


def _edge(a: str, b: str) -> frozenset[str]:
    return frozenset((a, b))


@dataclass(frozen=True)
class Graph:
    vertices: tuple[str, ...]
    edges: frozenset[frozenset[str]] = frozenset()

    def __post_init__(self):
        vs = tuple(self.vertices)
        if len(set(vs)) != len(vs):
            raise GraphError(f"duplicate vertex ids in {vs!r}")
        es = frozenset(frozenset(e) for e in self.edges)
        known = set(vs)
        for e in es:
            if len(e) != 2:
                raise GraphError(f"reflexive edge {sorted(e)!r}")
            missing = e - known
            if missing:
                raise GraphError(f"edge {sorted(e)!r} uses unknown vertex {sorted(missing)!r}")
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "edges", es)

    @classmethod
    def from_edges(cls, vertices: Iterable[str], edges: Iterable[tuple[str, str]] = ()) -> "Graph":
        return cls(tuple(vertices), frozenset(_edge(a, b) for a, b in edges))

    @classmethod
    def complete(cls, vertices: Iterable[str]) -> "Graph":
        vs = tuple(vertices)
        return cls(vs, frozenset(_edge(a, b) for i, a in enumerate(vs) for b in vs[i + 1:]))

    def adjacent(self, a: str, b: str) -> bool:
        return _edge(a, b) in self.edges

    def neighbours(self, a: str) -> frozenset[str]:
        return frozenset(b for b in self.vertices if b != a and self.adjacent(a, b))

    def index(self, a: str) -> int:
        return self.vertices.index(a)

    def is_complete(self) -> bool:
        n = len(self.vertices)
        return len(self.edges) == n * (n - 1) // 2

    def __contains__(self, a: object) -> bool:
        return a in self.vertices

    def __len__(self) -> int:
        return len(self.vertices)


def induced_subgraph(g: Graph, a: Iterable[str]) -> Graph:
    """Restriction of ``g`` to the vertex set ``a``; vertex order is kept."""
    keep = set(a)
    unknown = keep - set(g.vertices)
    if unknown:
        raise GraphError(f"unknown vertices {sorted(unknown)!r}")
    vs = tuple(v for v in g.vertices if v in keep)
    return Graph(vs, frozenset(e for e in g.edges if e <= keep))


def non_clique_set(g: Graph) -> frozenset[str]:
    """Vertices having at least one non-neighbour other than themselves."""
    out = set()
    vs = g.vertices
    for i, a in enumerate(vs):
        for b in vs[i + 1:]:
            if not g.adjacent(a, b):
                out.add(a)
                out.add(b)
    return frozenset(out)


@dataclass(frozen=True)
class VertexClass:
    """A family of ``multiplicity`` vertices sharing one factor description.

    A clique class is pairwise adjacent and adjacent to every other vertex of
    the graph, except where a ``non_edges`` pair of the enclosing
    :class:`SymbolicGraph` says otherwise.  An ``independent`` class is
    pairwise non-adjacent instead.
    """

    id: str
    multiplicity: Cardinal
    independent: bool = False

    def __post_init__(self):
        if self.multiplicity.is_zero:
            raise GraphError(f"class {self.id!r} must have multiplicity >= 1")


@dataclass(frozen=True)
class SymbolicGraph:
    """A finite explicit graph plus symbolically counted vertex classes.

    ``non_edges`` lists unordered pairs of ids (explicit vertices or class ids,
    at least one side a class) whose members are pairwise non-adjacent.  Any
    pair not listed is adjacent whenever a class is involved.
    """

    explicit: Graph = field(default_factory=lambda: Graph(()))
    classes: tuple[VertexClass, ...] = ()
    non_edges: frozenset[frozenset[str]] = frozenset()

    def __post_init__(self):
        classes = tuple(self.classes)
        ids = [c.id for c in classes]
        if len(set(ids)) != len(ids):
            raise GraphError(f"duplicate class ids in {ids!r}")
        clash = set(ids) & set(self.explicit.vertices)
        if clash:
            raise GraphError(f"class ids collide with explicit vertices: {sorted(clash)!r}")
        nes = frozenset(frozenset(e) for e in self.non_edges)
        known = set(ids) | set(self.explicit.vertices)
        for e in nes:
            if len(e) != 2:
                raise GraphError(f"reflexive non-edge {sorted(e)!r}; use an independent class")
            if e - known:
                raise GraphError(f"non-edge {sorted(e)!r} uses unknown ids")
            if not (e & set(ids)):
                raise GraphError(
                    f"non-edge {sorted(e)!r} joins two explicit vertices; omit the edge instead")
        object.__setattr__(self, "classes", classes)
        object.__setattr__(self, "non_edges", nes)

    @property
    def ids(self) -> tuple[str, ...]:
        return self.explicit.vertices + tuple(c.id for c in self.classes)

    def get_class(self, cid: str) -> VertexClass:
        for c in self.classes:
            if c.id == cid:
                return c
        raise KeyError(cid)

    def is_class(self, x: str) -> bool:
        return any(c.id == x for c in self.classes)

    def multiplicity(self, x: str) -> Cardinal:
        if x in self.explicit:
            return fin(1)
        return self.get_class(x).multiplicity

    def ids_adjacent(self, x: str, y: str) -> bool:
        """Adjacency between a member of ``x`` and a (different) member of ``y``."""
        if x == y:
            if x in self.explicit:
                raise GraphError("a vertex is not adjacent to itself")
            return not self.get_class(x).independent
        if x in self.explicit and y in self.explicit:
            return self.explicit.adjacent(x, y)
        return frozenset((x, y)) not in self.non_edges

    def non_clique_ids(self) -> frozenset[str]:
        """Ids whose members have a non-neighbour, the symbolic counterpart of ``non_clique_set``."""
        out = set(non_clique_set(self.explicit))
        for e in self.non_edges:
            out |= e
        for c in self.classes:
            if c.independent and not (c.multiplicity <= fin(1)):
                out.add(c.id)
        return frozenset(out)

    def total(self, ids: Iterable[str]) -> Cardinal:
        return card_sum([(fin(1), self.multiplicity(x)) for x in ids])

    def representatives(self) -> Graph:
        """A finite graph with at most two members per class, same adjacency pattern.

        Enough for connectivity questions: members of a class are interchangeable.
        """
        reps: list[str] = list(self.explicit.vertices)
        owner: dict[str, str] = {v: v for v in reps}
        for c in self.classes:
            copies = 1 if c.multiplicity <= fin(1) else 2
            for i in range(copies):
                name = f"{c.id}#{i}"
                reps.append(name)
                owner[name] = c.id
        edges = []
        for i, a in enumerate(reps):
            for b in reps[i + 1:]:
                if self.ids_adjacent(owner[a], owner[b]):
                    edges.append((a, b))
        return Graph.from_edges(reps, edges)


def components(g: Graph) -> list[frozenset[str]]:
    seen: set[str] = set()
    out = []
    for v in g.vertices:
        if v in seen:
            continue
        comp = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for y in g.neighbours(x):
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        out.append(frozenset(comp))
    return out


__all__ = [
    "Graph", "GraphError", "SymbolicGraph", "VertexClass",
    "components", "induced_subgraph", "non_clique_set",
]
