"""Sandwich words over Z * Z: the trichotomy, the length law and a planted omega search.

Run with ``python demos/equations_tour.py``; it takes a few seconds.
"""
import random

from graphprod.equations import (
    FreeProductInstance, SandwichSpec, build_sandwich_words, default_omega, descending_length_step,
    omega_prefix_search, planted_target, random_ab_word, trichotomy_check, trichotomy_sweep,
)


def main():
    inst = FreeProductInstance()
    spec = SandwichSpec(2, 1, ((1, 2), (3, 4)))
    g1, g2 = build_sandwich_words(inst, spec)
    print(f"exponent p = {spec.p}")
    print("g1 =", inst.format_word(g1), "  g2 =", inst.format_word(g2))

    u = inst.word("h1:1 h2:-3 h1:2")
    r = trichotomy_check(inst, spec, u)
    print("u =", inst.format_word(u), "->", r)

    rep = trichotomy_sweep(inst, spec, [1, -1, 2, -2, 3, -3, 4, -4], 4)
    print("\n".join(rep.lines()))

    rng = random.Random(7)
    t = random_ab_word(inst, rng, 6, [1, -1, 2, -2, 5])
    ab, before, after = descending_length_step(inst, spec, t, (g1, g2))
    print(f"t = {inst.format_word(t)}: reduced={ab}, length {before} -> {after}")

    sys_ = default_omega(3)
    print("\n".join(omega_prefix_search(inst, sys_, 3, 2).lines()[:8]))
    target = planted_target(inst, sys_, 3, inst.word("h2:3 h1:-1"), materialize=False)
    found = omega_prefix_search(inst, sys_, 3, 4, target=target)
    print(f"planted target of length {target.length}: {found.status} after {found.examined} candidates")


if __name__ == "__main__":
    main()
