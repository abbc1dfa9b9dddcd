"""Brute-force referees for the word engine.

Nothing here uses the engine's reduction code: moves are applied literally to
tuples of syllables using only the factor groups and the graph.  Exhaustive
closures are exponential and meant for words of a handful of syllables.
"""
from __future__ import annotations

import random
from collections import deque
from typing import Iterator

from .words import Presentation, Syllable


Raw = tuple  # a tuple of Syllable


def _commute(p: Presentation, a: str, b: str) -> bool:
    return a != b and p.graph.adjacent(a, b)


def moves(p: Presentation, w: Raw, rotations: bool = False) -> Iterator[Raw]:
    """Every word reachable from ``w`` by a single move (M4 rotations optional)."""
    n = len(w)
    for i, (v, g) in enumerate(w):
        if p.factors[v].is_identity(g):
            yield w[:i] + w[i + 1:]
    for i in range(n - 1):
        (a, g), (b, h) = w[i], w[i + 1]
        if a == b:
            yield w[:i] + (Syllable(a, p.factors[a].mul(g, h)),) + w[i + 2:]
        elif _commute(p, a, b):
            yield w[:i] + (w[i + 1], w[i]) + w[i + 2:]
    if rotations and n > 1:
        yield w[1:] + w[:1]
        yield w[-1:] + w[:-1]


def closure(p: Presentation, w, rotations: bool = False, limit: int = 2_000_000) -> set[Raw]:
    start = tuple(Syllable(*s) for s in w)
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for y in moves(p, x, rotations):
            if y not in seen:
                seen.add(y)
                if len(seen) > limit:
                    raise RuntimeError("closure exceeded its size limit")
                queue.append(y)
    return seen


def sort_key(p: Presentation, w: Raw):
    return tuple((p.vindex[v], p.factors[v].key(g)) for v, g in w)


def closure_normal_forms(p: Presentation, w, rotations: bool = False) -> list[Raw]:
    """Shortest words reachable from ``w``, sorted least first."""
    c = closure(p, w, rotations)
    m = min(len(x) for x in c)
    return sorted((x for x in c if len(x) == m), key=lambda x: sort_key(p, x))


def closure_key(p: Presentation, w) -> Raw:
    """Least shortest word reachable by M1-M3; equal keys mean equal elements."""
    return closure_normal_forms(p, w)[0]


def is_empty_reachable(p: Presentation, w) -> bool:
    return () in closure(p, w)


def min_cyclic_length(p: Presentation, w) -> int:
    """Shortest length reachable with M1-M4."""
    return min(len(x) for x in closure(p, w, rotations=True))


def orbit(p: Presentation, w) -> set[Raw]:
    """All rearrangements of ``w`` by commuting swaps alone."""
    start = tuple(Syllable(*s) for s in w)
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for i in range(len(x) - 1):
            if _commute(p, x[i][0], x[i + 1][0]):
                y = x[:i] + (x[i + 1], x[i]) + x[i + 2:]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
    return seen


def first_syllables(p: Presentation, w) -> set[Syllable]:
    return {x[0] for x in orbit(p, w) if x}


def last_syllables(p: Presentation, w) -> set[Syllable]:
    return {x[-1] for x in orbit(p, w) if x}


# ------------------------------------------------------------------ random sequences

def _mergeable_pairs(p: Presentation, w: list) -> list[tuple[int, int]]:
    out = []
    for i, (a, _) in enumerate(w):
        for j in range(i + 1, len(w)):
            b = w[j][0]
            if b == a:
                out.append((i, j))
                break
            if not _commute(p, a, b):
                break
    return out


def random_maximal_sequence(p: Presentation, w, rng: random.Random, noise: int = 4) -> tuple[list, int]:
    """Apply random moves until no deletion or merge can ever be enabled by swaps.

    Each round either deletes an identity syllable, or picks a random pair of
    same-vertex syllables separated only by commuting ones, walks them together
    with swaps (from a random side) and merges them.  Random harmless swaps are
    interleaved.  Returns the final word and the number of moves applied.
    """
    x = [Syllable(*s) for s in w]
    count = 0
    while True:
        for _ in range(rng.randint(0, noise)):
            if len(x) < 2:
                break
            i = rng.randrange(len(x) - 1)
            if _commute(p, x[i][0], x[i + 1][0]):
                x[i], x[i + 1] = x[i + 1], x[i]
                count += 1
        ids = [i for i, (v, g) in enumerate(x) if p.factors[v].is_identity(g)]
        pairs = _mergeable_pairs(p, x)
        if not ids and not pairs:
            return x, count
        if ids and (not pairs or rng.random() < 0.5):
            del x[rng.choice(ids)]
            count += 1
            continue
        i, j = rng.choice(pairs)
        if rng.random() < 0.5:
            while j > i + 1:            # walk the right one leftwards
                x[j - 1], x[j] = x[j], x[j - 1]
                j -= 1
                count += 1
        else:
            while i < j - 1:            # walk the left one rightwards
                x[i], x[i + 1] = x[i + 1], x[i]
                i += 1
                count += 1
        v = x[i][0]
        x[i:j + 1] = [Syllable(v, p.factors[v].mul(x[i][1], x[j][1]))]
        count += 1


def random_word(p: Presentation, rng: random.Random, max_len: int, int_range: int = 3) -> list[Syllable]:
    """Random word with up to ``max_len`` syllables; identity syllables allowed."""
    n = rng.randint(0, max_len)
    out = []
    for _ in range(n):
        v = rng.choice(p.vertices)
        grp = p.factors[v]
        if grp.order is None:
            g = rng.randint(-int_range, int_range)
        else:
            g = rng.choice(grp.elements())
        out.append(Syllable(v, g))
    return out


def all_words(p: Presentation, max_len: int, skip_equal_neighbours: bool = False) -> Iterator[tuple[Syllable, ...]]:
    """Every word of at most ``max_len`` non-identity syllables, shortest first.

    With ``skip_equal_neighbours`` words containing two neighbouring
    same-vertex syllables are left out.  The count grows exponentially.
    """
    letters = [Syllable(v, g) for v in p.vertices for g in p.factors[v].elements()
               if not p.factors[v].is_identity(g)]

    layer: list[tuple] = [()]
    for _ in range(max_len + 1):
        yield from layer
        layer = [w + (s,) for w in layer for s in letters
                 if not (skip_equal_neighbours and w and w[-1].vertex == s.vertex)]


__all__ = [
    "all_words", "closure", "closure_key", "closure_normal_forms", "first_syllables",
    "is_empty_reachable", "last_syllables", "min_cyclic_length", "moves", "orbit",
    "random_maximal_sequence", "random_word", "sort_key",
]
