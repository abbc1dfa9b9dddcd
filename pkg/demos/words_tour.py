"""Normal forms, cyclic reduction and the pyramid decomposition on a small graph product.

Run with ``python demos/words_tour.py``.
"""
from graphprod.graph import Graph
from graphprod.groups import FiniteTable, IntCyclic, ModCyclic, symmetric_group_table
from graphprod.words import (
    Presentation, clg, csp, cyclically_reduce, multiply, project, pyramid_decompose, reduce,
)


def main():
    # a - b - c path, with an S3 factor at the middle vertex
    p = Presentation(Graph.from_edges("abc", [("a", "b"), ("b", "c")]),
                     {"a": ModCyclic(2), "b": FiniteTable(*symmetric_group_table(3)), "c": IntCyclic()})
    b_elem = p.factors["b"].format_element(1)
    w = p.parse_word(f"a:1 c:2 b:{b_elem} a:1 c:-2")
    print("word        ", p.format_word(w))
    print("normal form ", p.format_word(reduce(p, w)))

    u = multiply(p, p.parse_word("c:1 a:1"), w, p.parse_word("a:1 c:-1"))
    conj, core = cyclically_reduce(p, u)
    print("conjugate   ", p.format_word(u))
    print("  core      ", p.format_word(core), " conjugator", p.format_word(conj))

    d = pyramid_decompose(p, u)
    for name in ("w1", "w2", "w3", "w2p"):
        print(f"  {name:<9} ", p.format_word(getattr(d, name)))
    print("  csp/clg   ", sorted(csp(p, u)), clg(p, u))
    print("onto {a, b} ", p.format_word(project(p, u, ["a", "b"])))


if __name__ == "__main__":
    main()
