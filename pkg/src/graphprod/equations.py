"""Desk-scale laboratory for sandwich words and equation systems in free products.

Two exact routes compute ``g1 u^p g2``: :func:`trichotomy_check` goes through
the general word engine, while :func:`trichotomy_fast` works on alternating
words directly and never materialises the middle of ``u^p``.  Their agreement
is itself tested.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .graph import Graph
from .groups import ConcreteGroup, IntCyclic
from .words import (
    NormalForm, Presentation, Syllable, Word, clg, csp, inverse, is_ab_cyclically_reduced,
    multiply, power, reduce,
)


class SandwichError(ValueError):
    def __init__(self, clause: str, message: str):
        super().__init__(f"clause ({clause}): {message}")
        self.clause = clause


class FreeProductInstance(Presentation):
    """H1 * H2 as the graph product over two non-adjacent vertices."""

    def __init__(self, H1: ConcreteGroup | None = None, H2: ConcreteGroup | None = None,
                 h1: str = "h1", h2: str = "h2"):
        H1 = IntCyclic() if H1 is None else H1
        H2 = IntCyclic() if H2 is None else H2
        if h1 == h2:
            raise ValueError("the two vertices need distinct names")
        super().__init__(Graph((h1, h2)), {h1: H1, h2: H2})
        self.h1, self.h2 = h1, h2
        self.H1, self.H2 = H1, H2

    @classmethod
    def from_presentation(cls, p: Presentation) -> "FreeProductInstance":
        if len(p.vertices) != 2 or p.graph.edges:
            raise ValueError("a free product instance has exactly two vertices and no edge")
        a, b = p.vertices
        return cls(p.factors[a], p.factors[b], a, b)


def default_p(k: int) -> int:
    return 36 * k + 100


# ------------------------------------------------------------------ sandwich specs

@dataclass(frozen=True)
class SandwichSpec:
    """Data of a sandwich pair: ``k_star``, exponent ``p``, ``g_star`` in H1 and
    the matrix ``h[l][i-1]`` of H2 elements (rows l < k_star, columns i = 1, 2)."""

    k_star: int
    g_star: object
    h: tuple[tuple[object, object], ...]
    p: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "h", tuple(tuple(row) for row in self.h))
        if self.p is None:
            object.__setattr__(self, "p", default_p(self.k_star))

    @property
    def weakened(self) -> bool:
        """True when ``p`` is below the default 36 k + 100."""
        return self.p < default_p(self.k_star)

    def entry(self, l: int, i: int):
        return self.h[l][i - 1]


def sandwich_violations(inst: FreeProductInstance, s: SandwichSpec) -> list[tuple[str, str]]:
    """All failed hypotheses as ``(clause, message)`` pairs, in clause order."""
    H1, H2 = inst.H1, inst.H2
    k = s.k_star
    out: list[tuple[str, str]] = []
    if not isinstance(k, int) or k < 2 or k % 2:
        out.append(("k", f"k_star must be an even integer >= 2, got {k!r}"))
        return out
    if not isinstance(s.p, int) or s.p < 2:
        out.append(("p", f"p must be an integer >= 2, got {s.p!r}"))
    if len(s.h) != k or any(len(row) != 2 for row in s.h):
        out.append(("c", f"h must have {k} rows of two entries"))
        return out
    if not H1.contains(s.g_star) or H1.is_identity(s.g_star):
        out.append(("b", "g_star must be a non-identity element of H1"))
    flat = [s.entry(l, i) for l in range(k) for i in (1, 2)]
    if any(not H2.contains(x) or H2.is_identity(x) for x in flat):
        out.append(("c", "every h entry must be a non-identity element of H2"))
        return out
    if len(set(flat)) != len(flat):
        out.append(("d", "h entries repeat"))
    inv = H2.inv
    last1 = s.entry(k - 1, 1)
    if inv(s.entry(0, 2)) == last1 or last1 == inv(s.entry(1, 2)):
        out.append(("e", "h_(k-1,1) equals the inverse of h_(0,2) or of h_(1,2)"))
    if any(s.entry(0, 2) == inv(s.entry(l, 2)) for l in range(1, k)):
        out.append(("f", "h_(0,2) is the inverse of some h_(l,2) with 0 < l"))
    if any(last1 == inv(s.entry(l, 1)) for l in range(0, k - 1)):
        out.append(("g", "h_(k-1,1) is the inverse of some h_(l,1) with l < k-1"))
    return out


def validate_sandwich(inst: FreeProductInstance, s: SandwichSpec) -> None:
    bad = sandwich_violations(inst, s)
    if bad:
        raise SandwichError(*bad[0])


def build_sandwich_words(inst: FreeProductInstance, s: SandwichSpec) -> tuple[NormalForm, NormalForm]:
    """``g_i = h_(0,i) g* h_(1,i) g*^-1 ... h_(k-1,i) g*^-1`` for i = 1, 2."""
    validate_sandwich(inst, s)
    ginv = inst.H1.inv(s.g_star)
    out = []
    for i in (1, 2):
        syl = []
        for l in range(s.k_star):
            syl.append(Syllable(inst.h2, s.entry(l, i)))
            syl.append(Syllable(inst.h1, s.g_star if l % 2 == 0 else ginv))
        out.append(reduce(inst, syl))
    return out[0], out[1]


# ------------------------------------------------------------------ trichotomy

@dataclass(frozen=True)
class TrichotomyResult:
    lg_u: int
    clg_u: int
    lg_total: int
    ab_reduced: bool        # g1 u^p g2 is (H2, H1)-cyclically reduced
    case_a: bool
    case_b: bool
    case_c: bool

    @property
    def cases(self) -> str:
        return "".join(c for c, ok in zip("abc", (self.case_a, self.case_b, self.case_c)) if ok)

    @property
    def holds(self) -> bool:
        return self.case_a or self.case_b or self.case_c


def _judge(k: int, lg_u: int, clg_u: int, total: int, ab: bool) -> TrichotomyResult:
    small = clg_u <= 1 and total >= 2 * k
    return TrichotomyResult(lg_u, clg_u, total, ab, total > lg_u, small and ab, small and total == lg_u)


def trichotomy_check(inst: FreeProductInstance, s: SandwichSpec, u: Sequence[Syllable],
                     words: tuple[NormalForm, NormalForm] | None = None) -> TrichotomyResult:
    """Evaluate the three alternatives for ``u`` with the general engine."""
    g1, g2 = words if words is not None else build_sandwich_words(inst, s)
    u = reduce(inst, u)
    total = multiply(inst, g1, power(inst, u, s.p), g2)
    ab = is_ab_cyclically_reduced(inst, total, inst.h2, inst.h1)
    return _judge(s.k_star, len(u), clg(inst, u), len(total), ab)


class FastFreeProduct:
    """Alternating-word arithmetic for a two-vertex free product.

    Words are lists of ``(side, element)`` with side 0 for H1 and 1 for H2.
    """

    def __init__(self, inst: FreeProductInstance):
        self.inst = inst
        self.groups = (inst.H1, inst.H2)
        self.mul = (inst.H1.mul, inst.H2.mul)
        self.e = (inst.H1.identity, inst.H2.identity)
        self.inv_ = (inst.H1.inv, inst.H2.inv)

    def side_word(self, w: Iterable[Syllable]) -> list:
        h1 = self.inst.h1
        return [(0 if v == h1 else 1, g) for v, g in w]

    def to_word(self, w: Iterable[tuple[int, object]]) -> NormalForm:
        names = (self.inst.h1, self.inst.h2)
        return NormalForm(Syllable(names[v], g) for v, g in w)

    def push(self, out: list, seq: Iterable[tuple[int, object]]) -> list:
        mul, e = self.mul, self.e
        for v, x in seq:
            if out and out[-1][0] == v:
                y = mul[v](out[-1][1], x)
                if y == e[v]:
                    out.pop()
                else:
                    out[-1] = (v, y)
            elif x != e[v]:
                out.append((v, x))
        return out

    def inverse(self, w: Sequence[tuple[int, object]]) -> list:
        inv = self.inv_
        return [(v, inv[v](x)) for v, x in reversed(w)]

    def decompose(self, u: Sequence[tuple[int, object]]):
        """Return (w1, w0, conj, core): pyramid pieces and a cyclically reduced core.

        ``u = w1 w0 w1^-1`` with ``lg(w0) = clg(u)``, and ``u = conj core conj^-1``.
        """
        mul, e = self.mul, self.e
        i, j = 0, len(u) - 1
        while j > i and u[i][0] == u[j][0] and mul[u[i][0]](u[i][1], u[j][1]) == e[u[i][0]]:
            i += 1
            j -= 1
        w1 = list(u[:i])
        w0 = list(u[i:j + 1])
        if len(w0) >= 3 and len(w0) % 2 == 1:
            v = w0[0][0]
            core = w0[1:-1] + [(v, mul[v](w0[-1][1], w0[0][1]))]
            return w1, w0, w1 + [w0[0]], core
        return w1, w0, w1, w0

    def power_parts(self, u: Sequence[tuple[int, object]], p: int):
        """``u^p`` as (prefix, core, reps, suffix), a normal form once ``core^reps`` is expanded."""
        w1, w0, conj, core = self.decompose(u)
        w1inv = self.inverse(w1)
        if not w0:
            return [], [], 0, []
        if len(w0) == 1:
            v, x = w0[0]
            y = self.groups[v].power(x, p)
            if y == self.e[v]:
                return [], [], 0, []
            return w1, [(v, y)], 1, w1inv
        if len(w0) % 2 == 0:
            return w1, w0, p, w1inv
        # odd: w1 w2 (w3 w2'w2)^(p-1) w3 w2' w1^-1
        return conj, core, p - 1, w0[1:] + w1inv

    def sandwich_length(self, g1: list, u: Sequence[tuple[int, object]], p: int, g2: list):
        """(length, first side, last side) of the normal form of ``g1 u^p g2``."""
        conj, core, reps, cinv = self.power_parts(u, p)
        m = max(len(g1), len(g2)) + 2
        n_x = len(conj) + reps * len(core) + len(cinv)
        if n_x <= 2 * m + 2 * len(core) + len(conj) + len(cinv):
            x = conj + core * reps + cinv
            out = self.push(list(g1), x)
            self.push(out, g2)
            if not out:
                return 0, None, None
            return len(out), out[0][0], out[-1][0]
        head = (conj + core * (m // len(core) + 1))[:m]
        tail = (core * (m // len(core) + 1) + cinv)[-m:]
        left = self.push(list(g1), head)
        right = self.push(list(tail), g2)
        total = len(left) + (n_x - 2 * m) + len(right)
        return total, left[0][0], right[-1][0]


def trichotomy_fast(fp: FastFreeProduct, k: int, p: int, g1: list, g2: list,
                    u: Sequence[tuple[int, object]]) -> TrichotomyResult:
    """Same verdict as :func:`trichotomy_check`, for an alternating reduced ``u``."""
    _, w0, _, _ = fp.decompose(u)
    total, first, last = fp.sandwich_length(g1, u, p, g2)
    ab = total > 0 and first == 1 and last == 0
    return _judge(k, len(u), len(w0), total, ab)


def alternating_words(alphabet1: Sequence, alphabet2: Sequence, max_len: int) -> Iterator[list]:
    """Every reduced word of length <= ``max_len`` in H1 * H2 over the given element lists."""
    yield []
    alph = (list(alphabet1), list(alphabet2))
    for n in range(1, max_len + 1):
        for start in (0, 1):
            sides = [(start + t) % 2 for t in range(n)]
            for elems in itertools.product(*(alph[s] for s in sides)):
                yield list(zip(sides, elems))


@dataclass
class SweepReport:
    k_star: int
    p: int
    weakened: bool
    max_len: int
    alphabet: tuple
    examined: int = 0
    tally: dict = field(default_factory=lambda: {"a": 0, "b": 0, "c": 0})
    violations: list = field(default_factory=list)

    def lines(self) -> list[str]:
        out = [
            f"k_star: {self.k_star}",
            f"p: {self.p}" + (" (parameter-weakened)" if self.weakened else ""),
            f"max_len: {self.max_len}",
            f"alphabet: {' '.join(str(a) for a in self.alphabet)}",
            f"examined: {self.examined}",
            f"case a: {self.tally['a']}",
            f"case b: {self.tally['b']}",
            f"case c: {self.tally['c']}",
            f"violations: {len(self.violations)}",
        ]
        return out


def trichotomy_sweep(inst: FreeProductInstance, s: SandwichSpec, alphabet: Sequence,
                     max_len: int) -> SweepReport:
    """Check the trichotomy for every u of length <= ``max_len`` with elements from ``alphabet``.

    ``alphabet`` lists non-identity elements usable in both factors.
    """
    g1w, g2w = build_sandwich_words(inst, s)
    fp = FastFreeProduct(inst)
    g1, g2 = fp.side_word(g1w), fp.side_word(g2w)
    rep = SweepReport(s.k_star, s.p, s.weakened, max_len, tuple(alphabet))
    a1 = [x for x in alphabet if not inst.H1.is_identity(x)]
    a2 = [x for x in alphabet if not inst.H2.is_identity(x)]
    tally = rep.tally
    for u in alternating_words(a1, a2, max_len):
        r = trichotomy_fast(fp, s.k_star, s.p, g1, g2, u)
        rep.examined += 1
        if r.case_a:
            tally["a"] += 1
        if r.case_b:
            tally["b"] += 1
        if r.case_c:
            tally["c"] += 1
        if not r.holds and len(rep.violations) < 20:
            rep.violations.append((fp.to_word(u), r))
    return rep


# ------------------------------------------------------------------ compressed words

class Rope:
    """A word stored as a tree of leaves, concatenations and repetitions."""

    length: int = 0

    def at(self, i: int):
        raise NotImplementedError

    def slice(self, a: int, b: int) -> "Rope":
        raise NotImplementedError

    def __iter__(self):
        raise NotImplementedError

    def __len__(self) -> int:
        return self.length

    def first(self):
        return self.at(0) if self.length else None

    def last(self):
        return self.at(self.length - 1) if self.length else None

    def materialize(self, cap: int) -> list:
        if self.length > cap:
            raise OverflowError(f"word of length {self.length} exceeds cap {cap}")
        return list(self)


class Leaf(Rope):
    __slots__ = ("items", "length")

    def __init__(self, items):
        self.items = tuple(items)
        self.length = len(self.items)

    def at(self, i):
        return self.items[i]

    def slice(self, a, b):
        a, b = max(a, 0), min(b, self.length)
        if a == 0 and b == self.length:
            return self
        return Leaf(self.items[a:b]) if a < b else EMPTY_ROPE

    def __iter__(self):
        return iter(self.items)


EMPTY_ROPE = Leaf(())
_SMALL = 64


class Cat(Rope):
    __slots__ = ("parts", "offsets", "length")

    def __init__(self, parts):
        self.parts = tuple(parts)
        offs, n = [], 0
        for part in self.parts:
            offs.append(n)
            n += part.length
        self.offsets = offs
        self.length = n

    def _locate(self, i):
        import bisect
        j = bisect.bisect_right(self.offsets, i) - 1
        return j, i - self.offsets[j]

    def at(self, i):
        j, r = self._locate(i)
        return self.parts[j].at(r)

    def slice(self, a, b):
        a, b = max(a, 0), min(b, self.length)
        if a >= b:
            return EMPTY_ROPE
        if a == 0 and b == self.length:
            return self
        out = []
        for part, off in zip(self.parts, self.offsets):
            lo, hi = max(a - off, 0), min(b - off, part.length)
            if lo < hi:
                out.append(part.slice(lo, hi))
        return cat(*out)

    def __iter__(self):
        for part in self.parts:
            yield from part


class Rep(Rope):
    __slots__ = ("child", "k", "length")

    def __init__(self, child, k):
        self.child, self.k = child, k
        self.length = child.length * k

    def at(self, i):
        return self.child.at(i % self.child.length)

    def slice(self, a, b):
        a, b = max(a, 0), min(b, self.length)
        if a >= b:
            return EMPTY_ROPE
        if a == 0 and b == self.length:
            return self
        n = self.child.length
        qa, ra = divmod(a, n)
        qb, rb = divmod(b, n)
        if qa == qb:
            return self.child.slice(ra, rb)
        return cat(self.child.slice(ra, n), rep(self.child, qb - qa - 1), self.child.slice(0, rb))

    def __iter__(self):
        for _ in range(self.k):
            yield from self.child


def cat(*parts: Rope) -> Rope:
    flat: list[Rope] = []
    for part in parts:
        if part.length == 0:
            continue
        items = part.parts if isinstance(part, Cat) else (part,)
        for x in items:
            if flat and isinstance(x, Leaf) and isinstance(flat[-1], Leaf) and \
                    x.length + flat[-1].length <= _SMALL:
                flat[-1] = Leaf(flat[-1].items + x.items)
            else:
                flat.append(x)
    if not flat:
        return EMPTY_ROPE
    return flat[0] if len(flat) == 1 else Cat(flat)


def rep(child: Rope, k: int) -> Rope:
    if k <= 0 or child.length == 0:
        return EMPTY_ROPE
    if k == 1:
        return child
    if child.length * k <= _SMALL:
        return Leaf(tuple(child) * k)
    return Rep(child, k)


class RopeArithmetic:
    """Exact normal-form arithmetic on ropes in a two-vertex free product."""

    def __init__(self, fp: FastFreeProduct):
        self.fp = fp
        self._inv_cache: dict[int, Rope] = {}

    def inverse(self, x: Rope) -> Rope:
        inv = self.fp.inv_
        if isinstance(x, Leaf):
            return Leaf((v, inv[v](g)) for v, g in reversed(x.items))
        if isinstance(x, Cat):
            return cat(*(self.inverse(part) for part in reversed(x.parts)))
        return rep(self.inverse(x.child), x.k)

    def power(self, x: Rope, p: int) -> Rope:
        """``x^p`` for a normal-form rope ``x``; the result is again a normal form."""
        mul, e = self.fp.mul, self.fp.e
        n = x.length
        i = 0
        while 2 * i + 1 < n:
            (v, a), (w, b) = x.at(i), x.at(n - 1 - i)
            if v != w or mul[v](a, b) != e[v]:
                break
            i += 1
        w1, w0 = x.slice(0, i), x.slice(i, n - i)
        w1inv = self.inverse(w1)
        m = w0.length
        if m == 0:
            return EMPTY_ROPE
        if m == 1:
            v, a = w0.at(0)
            y = self.fp.groups[v].power(a, p)
            return EMPTY_ROPE if y == e[v] else cat(w1, Leaf([(v, y)]), w1inv)
        if m % 2 == 0:
            return cat(w1, rep(w0, p), w1inv)
        (v, a), (_, b) = w0.at(0), w0.at(m - 1)
        core = cat(w0.slice(1, m - 1), Leaf([(v, mul[v](b, a))]))
        return cat(w1, Leaf([(v, a)]), rep(core, p - 1), w0.slice(1, m), w1inv)

    def sandwich(self, g1: list, x: Rope, g2: list) -> Rope:
        """Normal form of ``g1 x g2``; only windows at both junctions are expanded."""
        push = self.fp.push
        m = max(len(g1), len(g2)) + 2
        n = x.length
        if n <= 2 * m:
            out = push(list(g1), x)
            return Leaf(push(out, g2))
        left = push(list(g1), x.slice(0, m))
        right = push(list(x.slice(n - m, n)), g2)
        return cat(Leaf(left), x.slice(m, n - m), Leaf(right))


def _same_tree(a: Rope, b: Rope, memo: dict) -> bool:
    """Exact check that two ropes are built the same way; False says nothing."""
    if a is b:
        return True
    key = (id(a), id(b))
    if key in memo:
        return memo[key]
    if a.length != b.length or type(a) is not type(b):
        out = False
    elif isinstance(a, Leaf):
        out = a.items == b.items
    elif isinstance(a, Cat):
        out = len(a.parts) == len(b.parts) and all(_same_tree(x, y, memo) for x, y in zip(a.parts, b.parts))
    else:
        out = a.k == b.k and _same_tree(a.child, b.child, memo)
    memo[key] = out
    return out


def _rope_equal(a: Rope, b: Rope, cap: int) -> bool | None:
    """Equality of the words; None when undecided within ``cap`` syllables."""
    if a.length != b.length:
        return False
    if _same_tree(a, b, {}):
        return True
    if a.length > cap:
        return None
    return all(x == y for x, y in zip(a, b))


# ------------------------------------------------------------------ faithful matrix route

_SANOV_PRIMES = (2305843009213693951, 4611686018427387847)


def _mat_mul(x, y, q):
    return ((x[0] * y[0] + x[1] * y[2]) % q, (x[0] * y[1] + x[1] * y[3]) % q,
            (x[2] * y[0] + x[3] * y[2]) % q, (x[2] * y[1] + x[3] * y[3]) % q)


_ID = (1, 0, 0, 1)


def _mat_pow(x, k, q):
    out = _ID
    while k:
        if k & 1:
            out = _mat_mul(out, x, q)
        x = _mat_mul(x, x, q)
        k >>= 1
    return out


def sanov_matrix(word: Iterable[tuple[int, int]], q: int):
    """Image of a word of Z * Z under side 0 -> [[1,2],[0,1]], side 1 -> [[1,0],[2,1]], mod q.

    Over the integers this representation is faithful.
    """
    out = _ID
    for v, n in word:
        out = _mat_mul(out, (1, 2 * n % q, 0, 1) if v == 0 else (1, 0, 2 * n % q, 1), q)
    return out


def sanov_rope(x: Rope, q: int, memo: dict | None = None):
    memo = {} if memo is None else memo
    key = id(x)
    if key in memo:
        return memo[key]
    if isinstance(x, Leaf):
        r = sanov_matrix(x.items, q)
    elif isinstance(x, Cat):
        r = _ID
        for part in x.parts:
            r = _mat_mul(r, sanov_rope(part, q, memo), q)
    else:
        r = _mat_pow(sanov_rope(x.child, q, memo), x.k, q)
    memo[key] = r
    return r


# ------------------------------------------------------------------ omega systems

_LEVEL_CLAUSE = {"b": "d.1", "c": "d.2", "d": "d.3", "e": "d.4", "f": "d.5", "g": "d.6"}


@dataclass(frozen=True)
class OmegaSystem:
    """Equations ``x_n = g_(n,1) x_(n+1)^p(n) g_(n,2)`` for the listed levels n."""

    levels: tuple[SandwichSpec, ...]

    def __post_init__(self):
        object.__setattr__(self, "levels", tuple(self.levels))

    @property
    def weakened(self) -> bool:
        return any(s.weakened for s in self.levels)

    def violations(self, inst: FreeProductInstance) -> list[tuple[str, str]]:
        out = []
        ks = [s.k_star for s in self.levels]
        if any(a >= b for a, b in zip(ks, ks[1:])):
            out.append(("b", "k(n) must be strictly increasing"))
        for n, s in enumerate(self.levels):
            for clause, msg in sandwich_violations(inst, s):
                out.append((_LEVEL_CLAUSE.get(clause, clause), f"level {n}: {msg}"))
        return out

    def validate(self, inst: FreeProductInstance) -> None:
        bad = self.violations(inst)
        if bad:
            raise SandwichError(*bad[0])


def default_omega(depth: int, p: int | None = None) -> OmegaSystem:
    """Levels n < depth over Z * Z with k(n) = 2(n+1), g* = 1 and
    h_(n,l,i) = n! + 2l + i; ``p`` overrides every p(n)."""
    levels = []
    for n in range(depth):
        k = 2 * (n + 1)
        base = math.factorial(n)
        h = tuple((base + 2 * l + 1, base + 2 * l + 2) for l in range(k))
        levels.append(SandwichSpec(k, 1, h, p))
    return OmegaSystem(tuple(levels))


class SearchError(ValueError):
    pass


@dataclass
class ChainTrace:
    candidate: NormalForm
    lengths: tuple[int, ...]     # lg(t_d), lg(t_(d-1)), ..., lg(t_0)
    ab_reduced: tuple[bool, ...]  # same order


@dataclass
class OmegaSearchResult:
    status: str                  # "found", "none" or "undecided"
    depth: int
    max_len: int
    weakened: bool
    alphabet1: tuple
    alphabet2: tuple
    examined: int = 0
    undecided: int = 0
    law_checks: int = 0
    law_violations: int = 0
    route_disagreements: int = 0
    witness: list | None = None  # ropes t_0, ..., t_d
    traces: list = field(default_factory=list)

    @property
    def found(self) -> bool:
        return self.status == "found"

    def lines(self) -> list[str]:
        out = [
            f"status: {self.status}",
            f"depth: {self.depth}",
            f"max_len: {self.max_len}",
            "p: " + ("parameter-weakened" if self.weakened else "default"),
            f"alphabet h1: {' '.join(map(str, self.alphabet1))}",
            f"alphabet h2: {' '.join(map(str, self.alphabet2))}",
            f"examined: {self.examined}",
            f"undecided: {self.undecided}",
            f"descending-length checks: {self.law_checks}",
            f"descending-length violations: {self.law_violations}",
            f"route disagreements: {self.route_disagreements}",
        ]
        if self.witness is not None:
            out.append("witness lengths: " + " ".join(str(len(t)) for t in self.witness))
        for tr in self.traces:
            marks = " ".join(f"{n}{'*' if ab else ''}" for n, ab in zip(tr.lengths, tr.ab_reduced))
            out.append(f"trace {_fmt(tr.candidate)}: {marks}")
        return out


def _fmt(w) -> str:
    return " ".join(f"{v}:{g}" for v, g in w) if len(w) else "1"


def system_alphabet(inst: FreeProductInstance, sys: OmegaSystem, depth: int,
                    extra: Sequence = ()) -> tuple[list, list]:
    """Elements available to candidate syllables, sorted by the factor order."""
    H1, H2 = inst.H1, inst.H2
    a1, a2 = set(), set()
    for s in sys.levels[:depth]:
        a1.update((s.g_star, H1.inv(s.g_star)))
        for row in s.h:
            for x in row:
                a2.update((x, H2.inv(x)))
    for x in extra:
        if H1.contains(x) and not H1.is_identity(x):
            a1.add(x)
        if H2.contains(x) and not H2.is_identity(x):
            a2.add(x)
    return sorted(a1, key=H1.key), sorted(a2, key=H2.key)


class OmegaChain:
    """Back-substitution ``t_n = g_(n,1) t_(n+1)^p(n) g_(n,2)`` over ropes."""

    def __init__(self, inst: FreeProductInstance, sys: OmegaSystem, depth: int):
        if depth < 1 or depth > len(sys.levels):
            raise SearchError(f"depth must be between 1 and {len(sys.levels)}")
        sys.validate(inst)
        self.inst, self.sys, self.depth = inst, sys, depth
        self.fp = FastFreeProduct(inst)
        self.ra = RopeArithmetic(self.fp)
        self.g = []
        for s in sys.levels[:depth]:
            g1, g2 = build_sandwich_words(inst, s)
            self.g.append((self.fp.side_word(g1), self.fp.side_word(g2)))
        self.matrix_route = isinstance(inst.H1, IntCyclic) and isinstance(inst.H2, IntCyclic)
        if self.matrix_route:
            self.g_mats = [[(sanov_matrix(a, q), sanov_matrix(b, q)) for a, b in self.g]
                           for q in _SANOV_PRIMES]

    def run(self, t_d: Sequence[tuple[int, object]]) -> list[Rope]:
        """Ropes ``[t_0, ..., t_d]``."""
        chain = [Leaf(t_d)]
        for n in range(self.depth - 1, -1, -1):
            g1, g2 = self.g[n]
            x = self.ra.power(chain[0], self.sys.levels[n].p)
            chain.insert(0, self.ra.sandwich(g1, x, g2))
        return chain

    def matrices(self, t_d) -> list[tuple]:
        """Image of t_0 under the faithful representation, from the recurrence alone."""
        out = []
        for q, mats in zip(_SANOV_PRIMES, self.g_mats):
            m = sanov_matrix(t_d, q)
            for n in range(self.depth - 1, -1, -1):
                a, b = mats[n]
                m = _mat_mul(_mat_mul(a, _mat_pow(m, self.sys.levels[n].p, q), q), b, q)
            out.append(m)
        return out

    @staticmethod
    def ab_reduced(x: Rope) -> bool:
        return x.length > 0 and x.first()[0] == 1 and x.last()[0] == 0


def omega_prefix_search(inst: FreeProductInstance, sys: OmegaSystem, depth: int, max_len: int,
                        target: Sequence[Syllable] | Rope = (), alphabet: Sequence = (),
                        use_system_elements: bool = True, cap: int = 5_000_000,
                        keep_traces: int = 10) -> OmegaSearchResult:
    """Search every t_d of length <= ``max_len`` for a chain ending in ``t_0 = target``.

    Candidates are visited in shortlex order, so the first witness is the
    least one.  Equality with the target is decided on exact compressed normal
    forms; over Z * Z a faithful matrix representation is evaluated from the
    recurrence alone and must agree.
    """
    if max_len < 0:
        raise SearchError("max_len must be >= 0")
    chain = OmegaChain(inst, sys, depth)
    if use_system_elements:
        a1, a2 = system_alphabet(inst, sys, depth, alphabet)
    else:
        a1, a2 = system_alphabet(inst, OmegaSystem(()), 0, alphabet)
    if not a1 and not a2:
        raise SearchError("the candidate alphabet is empty")
    fp = chain.fp
    tgt = target if isinstance(target, Rope) else Leaf(fp.side_word(reduce(inst, target)))
    tgt_mats = [sanov_rope(tgt, q) for q in _SANOV_PRIMES] if chain.matrix_route else None
    res = OmegaSearchResult("none", depth, max_len, sys.levels[0].weakened or sys.weakened,
                            tuple(a1), tuple(a2))
    for t_d in alternating_words(a1, a2, max_len):
        res.examined += 1
        ropes = chain.run(t_d)
        ab = [chain.ab_reduced(r) for r in ropes]
        for n in range(depth):
            if ab[n + 1]:
                res.law_checks += 1
                if not (ab[n] and ropes[n].length > ropes[n + 1].length):
                    res.law_violations += 1
        if len(res.traces) < keep_traces:
            res.traces.append(ChainTrace(fp.to_word(t_d), tuple(len(r) for r in reversed(ropes)),
                                         tuple(reversed(ab))))
        verdict = _rope_equal(ropes[0], tgt, cap)
        if chain.matrix_route:
            by_matrix = chain.matrices(t_d) == tgt_mats
            if verdict is not None and verdict != by_matrix:
                res.route_disagreements += 1
            if verdict is None and not by_matrix:
                verdict = False
            if by_matrix and [sanov_rope(ropes[0], q) for q in _SANOV_PRIMES] != tgt_mats:
                res.route_disagreements += 1
        if verdict is None:
            res.undecided += 1
            continue
        if verdict:
            res.status = "found"
            res.witness = ropes
            return res
    if res.undecided:
        res.status = "undecided"
    return res


def planted_target(inst: FreeProductInstance, sys: OmegaSystem, depth: int,
                   t_d: Sequence[Syllable], cap: int = 5_000_000,
                   materialize: bool = True) -> NormalForm | Rope:
    """t_0 obtained by substituting a chosen t_d; used as a search-completeness control.

    With ``materialize=False`` the compressed rope is returned, which keeps
    deep controls at the default exponents within memory.
    """
    chain = OmegaChain(inst, sys, depth)
    t0 = chain.run(chain.fp.side_word(reduce(inst, t_d)))[0]
    return t0 if not materialize else chain.fp.to_word(t0.materialize(cap))


def descending_length_step(inst: FreeProductInstance, s: SandwichSpec, t: Sequence[Syllable],
                           words: tuple[NormalForm, NormalForm] | None = None) -> tuple[bool, int, int]:
    """Full-engine evaluation of ``g1 t^p g2``: (is (H2, H1)-reduced, lg(t), lg(result))."""
    g1, g2 = words if words is not None else build_sandwich_words(inst, s)
    t = reduce(inst, t)
    out = multiply(inst, g1, power(inst, t, s.p), g2)
    return is_ab_cyclically_reduced(inst, out, inst.h2, inst.h1), len(t), len(out)


def random_ab_word(inst: FreeProductInstance, rng: random.Random, max_len: int,
                   elements: Sequence) -> NormalForm:
    """Random alternating word starting in H2 and ending in H1, of even length <= ``max_len``."""
    n = 2 * rng.randint(1, max_len // 2)
    return NormalForm(Syllable(inst.h2 if t % 2 == 0 else inst.h1, rng.choice(elements)) for t in range(n))


# ------------------------------------------------------------------ four-vertex lab

DEFAULT_FOUR_EDGES = (("a1", "a2"), ("a2", "b1"), ("b1", "b2"), ("b2", "a1"))


def four_vertex_presentation(edges: Sequence[tuple[str, str]] = DEFAULT_FOUR_EDGES,
                             factors: dict | None = None) -> Presentation:
    """Vertices a1, a2, b1, b2 with a_i and b_i never adjacent; the other edges are an input."""
    from .groups import ModCyclic
    for a, b in edges:
        if {a, b} in ({"a1", "b1"}, {"a2", "b2"}):
            raise ValueError(f"{a} and {b} must not be adjacent")
    factors = factors or {"a1": ModCyclic(2), "a2": ModCyclic(3), "b1": ModCyclic(2), "b2": ModCyclic(3)}
    return Presentation(Graph.from_edges(("a1", "a2", "b1", "b2"), edges), factors)


def _require_finite(p: Presentation) -> None:
    for v in p.vertices:
        if p.factors[v].order is None:
            raise ValueError(f"factor at {v} is infinite; the bounded search needs finite factors")


@dataclass(frozen=True)
class FiniteOrderReport:
    status: str                 # "complete", "not complete" or "order not witnessed"
    order: int | None
    csp: frozenset

    @property
    def complete(self) -> bool:
        return self.status == "complete"


def finite_order_csp(p4: Presentation, w: Sequence[Syllable], order_bound: int) -> FiniteOrderReport:
    """Find the order of ``w`` up to ``order_bound`` and test whether its core support is a clique."""
    _require_finite(p4)
    w = reduce(p4, w)
    support = frozenset(csp(p4, w))
    x = NormalForm(())
    for k in range(1, order_bound + 1):
        x = multiply(p4, x, w)
        if not x:
            ok = all(p4.graph.adjacent(a, b) for a in support for b in support if a != b)
            return FiniteOrderReport("complete" if ok else "not complete", k, support)
    return FiniteOrderReport("order not witnessed", None, support)


def element_ball(p: Presentation, radius: int) -> list[NormalForm]:
    """Every element of length <= ``radius``, shortlex ordered."""
    from .oracle import sort_key
    _require_finite(p)
    letters = [Syllable(v, g) for v in p.vertices for g in p.factors[v].elements()
               if not p.factors[v].is_identity(g)]
    seen = {(): NormalForm(())}
    layer = [NormalForm(())]
    for _ in range(radius):
        nxt = {}
        for w in layer:
            for s in letters:
                y = multiply(p, w, [s])
                if len(y) == len(w) + 1 and tuple(y) not in seen:
                    nxt[tuple(y)] = y
        seen.update(nxt)
        layer = sorted(nxt.values(), key=lambda y: sort_key(p, y))
    return sorted(seen.values(), key=lambda y: (len(y), sort_key(p, y)))


@dataclass(frozen=True)
class RootSearch:
    no_root: bool
    witness: NormalForm | None
    examined: int


def find_qth_root(p: Presentation, target: Sequence[Syllable], q: int, max_len: int,
                  ball: list[NormalForm] | None = None) -> RootSearch:
    """Least y of length <= ``max_len`` with ``y^q = target``, if any."""
    target = reduce(p, target)
    ball = element_ball(p, max_len) if ball is None else ball
    for i, y in enumerate(ball):
        if power(p, y, q) == target:
            return RootSearch(False, y, i + 1)
    return RootSearch(True, None, len(ball))


def no_qth_root(p4: Presentation, d: Sequence[Syllable], q: int, p: int,
                        g1, g2, h1, h2, max_len: int,
                        ball: list[NormalForm] | None = None, check_primes: bool = True) -> RootSearch:
    """Search for a q-th root of ``d (g1 g2 h1 h2)^p`` among all words of length <= ``max_len``.

    ``g_i`` are syllables at ``a_i`` and ``h_i`` at ``b_i``.  ``check_primes=False``
    drops the requirement that q < p are primes; it exists for planted controls
    such as p = q, where g1 g2 h1 h2 itself is a root.
    """
    from .abelian import is_prime
    _require_finite(p4)
    if check_primes and not (is_prime(q) and is_prime(p) and q < p):
        raise ValueError("need primes q < p")
    for s, v in ((g1, "a1"), (g2, "a2"), (h1, "b1"), (h2, "b2")):
        s = Syllable(*s)
        if s.vertex != v or p4.factors[v].is_identity(s.element):
            raise ValueError(f"expected a non-identity syllable at {v}, got {s}")
    d = reduce(p4, d)
    support = csp(p4, d)
    if any(not p4.graph.adjacent(a, b) for a in support for b in support if a != b):
        raise ValueError("csp(d) is not a complete graph")
    g = power(p4, [Syllable(*g1), Syllable(*g2), Syllable(*h1), Syllable(*h2)], p)
    return find_qth_root(p4, multiply(p4, d, g), q, max_len, ball)
