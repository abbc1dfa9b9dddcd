"""Rule identifiers used in verdict trails.

Every trail entry names one of these rules.  The identifiers are stable and
are what tests and reports compare; the text is a one-line gloss.
"""

RULES: dict[str, str] = {
    # obstructions
    "nonclique-uncountable": "uncountably many vertices have a non-neighbour",
    "uncountable-factor-nonedge": "an uncountable factor sits at a vertex with a non-neighbour",
    "nonabelian-uncountable": "uncountably many factors are non-abelian",
    "no-torsion-bound": "for every m, uncountably many factors have an element outside Div + Tor_m",
    "pruefer-uncountable": "a central direct summand is a sum of uncountably many Pruefer groups",
    "cardinal-gap": "a multiplicity of a building block lies strictly between aleph0 and the continuum",
    "center-index-infinite": "infinitely many central vertices carry a non-abelian factor with uncountable center index",
    "a6-infinite": "no n makes the set of factors with uncountable Cent/(Div + Tor_n) finite",
    "free-product": "an uncountable group split as a non-trivial free product",
    # positive steps
    "partition": "the six-set partition is computed and its finiteness clauses hold",
    "outside-shape": "factors outside the countable witness set are sums of building blocks",
    "torsion-bound": "a common n bounds the cyclic blocks outside the witness set",
    "countable-iff": "characterisation for countable factors",
    "abelian-sum-shape": "characterisation for direct sums of countable abelian groups",
    "restricted-sums": "block multiplicities over the queried set are countable or the continuum",
    "ch-collapse": "under CH the restricted product admits a non-Archimedean Polish topology",
}


def describe(rule: str) -> str:
    return RULES[rule]
