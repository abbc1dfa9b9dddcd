"""Element-level referees for finite abelian groups given as tables."""
from collections import Counter
from itertools import product

from graphprod.abelian import factorize


def multiple(table, g, n):
    x = 0
    for _ in range(n):
        x = table[x][g]
    return x


def torsion_elements(table, n):
    return [g for g in range(len(table)) if multiple(table, g, n) == 0]


def order_profile(table, elements):
    """Multiset of element orders; determines a finite abelian group up to isomorphism."""
    out = Counter()
    for g in elements:
        k, x = 1, g
        while x != 0:
            x = table[x][g]
            k += 1
        out[k] += 1
    return out


def divisible_elements(table):
    """Intersection of the subgroups nG for n = 1 .. |G|."""
    size = len(table)
    cycles = []
    for g in range(size):
        seq, x = [0], g
        while x != 0:
            seq.append(x)
            x = table[x][g]
        cycles.append(seq)          # seq[n % order] is n * g
    keep = set(range(size))
    for n in range(1, size + 1):
        keep &= {seq[n % len(seq)] for seq in cycles}
    return sorted(keep)


def partitions(n, largest=None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def abelian_types(order):
    """Every abelian group of the given order as a list of prime-power invariants."""
    per_prime = [[[p ** k for k in part] for part in partitions(e)] for p, e in sorted(factorize(order).items())]
    for choice in product(*per_prime):
        yield [q for block in choice for q in block]


def profile_of_invariants(invariants):
    """Order multiset of Z_{q1} + ... + Z_{qr}, computed from coordinates."""
    from math import gcd
    out = Counter()
    for x in product(*(range(q) for q in invariants)):
        o = 1
        for xi, q in zip(x, invariants):
            oi = q // gcd(xi, q)
            o = o * oi // gcd(o, oi)
        out[o] += 1
    return out
