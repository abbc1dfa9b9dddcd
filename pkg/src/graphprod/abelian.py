"""Descriptor-level abelian group calculus.

An :class:`AbelianDescriptor` stands for a direct sum ``H + sum_s G*_s^(lambda_s)``
where the building blocks are Q (``INF``), Prüfer p-groups (``pruefer(p)``) and
cyclic groups Z_{p^k} (``cyc(p, k)``), each repeated a symbolic cardinal number of
times, and ``H`` is an optional countable summand described only by a few flags.

>>> d = AbelianDescriptor.of({cyc(2, 3): ALEPH0})
>>> tor_n(d, 4).lambdas
((Cyc(2,2), Cardinal<aleph0>),)
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

from .cardinals import ALEPH0, ONE, ZERO, Cardinal, card_sum, fin
from .groups import ConcreteGroup, DirectSum, FiniteTable, IntCyclic, ModCyclic


class DescriptorError(ValueError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


# ---------------------------------------------------------------- indices

@dataclass(frozen=True, order=True)
class SIndex:
    """Building-block index: Q, a Prüfer p-group, or Z_{p^k}."""

    rank: int          # 0 = Q, 1 = Prüfer, 2 = cyclic; gives a deterministic order
    p: int = 0
    k: int = 0

    def __post_init__(self):
        if self.rank not in (0, 1, 2):
            raise DescriptorError(f"bad index rank {self.rank}")
        if self.rank >= 1 and not is_prime(self.p):
            raise DescriptorError(f"{self.p} is not prime")
        if self.rank == 2 and self.k < 1:
            raise DescriptorError("cyclic index needs k >= 1")

    @property
    def is_inf(self) -> bool:
        return self.rank == 0

    @property
    def is_pruefer(self) -> bool:
        return self.rank == 1

    @property
    def is_cyc(self) -> bool:
        return self.rank == 2

    @property
    def divisible(self) -> bool:
        return self.rank < 2

    @property
    def in_s_star(self) -> bool:
        return self.rank != 1

    @property
    def order(self) -> int | None:
        return self.p ** self.k if self.is_cyc else None

    def __repr__(self) -> str:
        if self.is_inf:
            return "Inf"
        if self.is_pruefer:
            return f"Pruefer({self.p})"
        return f"Cyc({self.p},{self.k})"

    def label(self) -> str:
        if self.is_inf:
            return "Q"
        if self.is_pruefer:
            return f"P{self.p}"
        return f"Z{self.p ** self.k}"


INF = SIndex(0)


def pruefer(p: int) -> SIndex:
    return SIndex(1, p)


def cyc(p: int, k: int = 1) -> SIndex:
    return SIndex(2, p, k)


def cyclic_blocks(m: int) -> list[SIndex]:
    """Primary decomposition of Z_m."""
    return [cyc(p, k) for p, k in sorted(factorize(m).items())]


# ---------------------------------------------------------------- countable part

DIVISIBLE = "divisible"
REDUCED = "reduced"


@dataclass(frozen=True)
class CountablePart:
    """A countable summand H known only through declared flags.

    ``divisibility`` is ``"divisible"``, ``"reduced"`` or None (undeclared).
    ``bound`` is an n with H n-bounded-divisible, when one is declared (ideally the least).
    ``unbounded`` declares that H is bounded-divisible for no n (for instance Z).
    """

    divisibility: str | None = None
    bound: int | None = None
    unbounded: bool = False

    def __post_init__(self):
        if self.divisibility not in (None, DIVISIBLE, REDUCED):
            raise DescriptorError(f"bad divisibility flag {self.divisibility!r}")
        if self.bound is not None and self.bound < 1:
            raise DescriptorError("bound must be >= 1")
        if self.bound is not None and self.unbounded:
            raise DescriptorError("a countable part cannot be both bounded and unbounded")
        if self.divisibility == DIVISIBLE and self.unbounded:
            raise DescriptorError("a divisible group is 1-bounded-divisible")

    @property
    def effective_bound(self) -> int | None:
        """Least n with H n-bounded-divisible, when known; a divisible H has bound 1."""
        if self.bound is not None:
            return self.bound
        if self.divisibility == DIVISIBLE:
            return 1
        return None

    def bounded_status(self) -> bool | None:
        """True if bounded-divisible, False if declared not, None if unknown."""
        if self.effective_bound is not None:
            return True
        if self.unbounded:
            return False
        return None

    def n_bounded_status(self, n: int) -> bool | None:
        b = self.effective_bound
        if b is not None:
            return n % b == 0
        if self.unbounded:
            return False
        return None


# ---------------------------------------------------------------- descriptors

@dataclass(frozen=True)
class AbelianDescriptor:
    countable: CountablePart | None = None
    lambdas: tuple[tuple[SIndex, Cardinal], ...] = ()

    def __post_init__(self):
        merged: dict[SIndex, Cardinal] = {}
        for s, c in self.lambdas:
            if not isinstance(s, SIndex):
                raise DescriptorError(f"bad index {s!r}")
            merged[s] = merged.get(s, ZERO) + c
        items = tuple(sorted((s, c) for s, c in merged.items() if not c.is_zero))
        object.__setattr__(self, "lambdas", items)

    @classmethod
    def of(cls, lambdas: Mapping[SIndex, Cardinal] | Iterable[tuple[SIndex, Cardinal]] = (),
           countable: CountablePart | None = None) -> "AbelianDescriptor":
        items = lambdas.items() if isinstance(lambdas, Mapping) else lambdas
        return cls(countable, tuple(items))

    def lam(self, s: SIndex) -> Cardinal:
        for t, c in self.lambdas:
            if t == s:
                return c
        return ZERO

    def keys(self) -> list[SIndex]:
        return [s for s, _ in self.lambdas]

    @property
    def is_trivial(self) -> bool:
        return self.countable is None and not self.lambdas

    def cardinality(self) -> Cardinal:
        """|G| as a symbolic cardinal (any countable part counted as aleph_0)."""
        if self.countable is None and all(s.is_cyc and c.is_finite for s, c in self.lambdas):
            return fin(math.prod(s.order ** c.n for s, c in self.lambdas))
        items = [(fin(s.order) if s.is_cyc else ALEPH0, c) for s, c in self.lambdas]
        items.append((ALEPH0, ONE))
        return card_sum(items)

    def __str__(self) -> str:
        parts = []
        if self.countable is not None:
            parts.append("H")
        parts += [f"{s.label()}^({c})" for s, c in self.lambdas]
        return " + ".join(parts) if parts else "0"


TRIVIAL = AbelianDescriptor()


def direct_sum(*ds: AbelianDescriptor) -> AbelianDescriptor:
    items: list[tuple[SIndex, Cardinal]] = []
    countable = None
    for d in ds:
        items.extend(d.lambdas)
        if d.countable is not None:
            countable = d.countable if countable is None else _sum_countable(countable, d.countable)
    return AbelianDescriptor(countable, tuple(items))


def _sum_countable(a: CountablePart, b: CountablePart) -> CountablePart:
    div = a.divisibility if a.divisibility == b.divisibility else None
    if a.unbounded or b.unbounded:
        return CountablePart(divisibility=div if div != DIVISIBLE else None, unbounded=True)
    ba, bb = a.effective_bound, b.effective_bound
    if ba is not None and bb is not None:
        bound = ba * bb // math.gcd(ba, bb)
        return CountablePart(div, None if div == DIVISIBLE else bound)
    return CountablePart(div)


def scale(d: AbelianDescriptor, count: Cardinal) -> AbelianDescriptor:
    """Direct sum of ``count`` copies of ``d`` (countable part kept as a flag only)."""
    return AbelianDescriptor(d.countable, tuple((s, c * count) for s, c in d.lambdas))


# ---------------------------------------------------------------- operations

def _check_n(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise DescriptorError(f"n must be a positive integer, got {n!r}")


def tor_n(d: AbelianDescriptor, n: int) -> AbelianDescriptor:
    """Descriptor of {g : n g = 0}."""
    _check_n(n)
    items: list[tuple[SIndex, Cardinal]] = []
    for s, c in d.lambdas:
        if s.is_inf:
            continue
        v = valuation(n, s.p)
        k = v if s.is_pruefer else min(s.k, v)
        if k >= 1:
            items.append((cyc(s.p, k), c))
    countable = None
    if d.countable is not None:
        countable = CountablePart(REDUCED, n)     # n kills Tor_n(H); not always the least such
    return AbelianDescriptor(countable, tuple(items))


@dataclass(frozen=True)
class DivSplit:
    divisible: AbelianDescriptor
    reduced: AbelianDescriptor
    exact: bool     # False when an undeclared countable part was set aside as reduced


def div_part(d: AbelianDescriptor) -> DivSplit:
    """Split into the maximal divisible subgroup and a reduced complement."""
    div = [(s, c) for s, c in d.lambdas if s.divisible]
    red = [(s, c) for s, c in d.lambdas if not s.divisible]
    h = d.countable
    div_h = red_h = None
    exact = True
    if h is not None:
        if h.divisibility == DIVISIBLE:
            div_h = h
        else:
            red_h = h
            exact = h.divisibility == REDUCED
    return DivSplit(AbelianDescriptor(div_h, tuple(div)), AbelianDescriptor(red_h, tuple(red)), exact)


def is_n_bounded_divisible(d: AbelianDescriptor, n: int) -> bool:
    _check_n(n)
    if d.countable is not None:
        raise DescriptorError("n-bounded-divisibility is decided on descriptors without a countable part")
    return all(n % s.order == 0 for s, _ in d.lambdas if s.is_cyc)


def bounded_divisible_status(d: AbelianDescriptor) -> bool | None:
    """Whether d is n-bounded-divisible for some n (None when the countable part is undeclared)."""
    if d.countable is None:
        return True
    return d.countable.bounded_status()


def torsion_bound(d: AbelianDescriptor, keys_only: bool = False) -> int | None:
    """Least n with d n-bounded-divisible; None if there is none or it is unknown."""
    n = 1
    for s, _ in d.lambdas:
        if s.is_cyc:
            n = n * s.order // math.gcd(n, s.order)
    if d.countable is not None and not keys_only:
        b = d.countable.effective_bound
        if b is None:
            return None
        n = n * b // math.gcd(n, b)
    return n


def quotient_uncountable(d: AbelianDescriptor, n: int) -> bool:
    """Is G / (Div(G) + Tor_n(G)) uncountable?

    Only blocks Z_{p^m} with p^m not dividing n survive in the quotient, each
    copy contributing a nonzero cyclic group; the countable part stays countable.
    """
    _check_n(n)
    return any(c.is_uncountable for s, c in d.lambdas if s.is_cyc and n % s.order)


def quotient_lcm(d: AbelianDescriptor) -> int:
    """Least n making G / (Div + Tor_n) countable."""
    n = 1
    for s, c in d.lambdas:
        if s.is_cyc and c.is_uncountable:
            n = n * s.order // math.gcd(n, s.order)
    return n


class SplitRefused(DescriptorError):
    pass


def split_K_M(total: AbelianDescriptor, n: int, hypothesis: bool) -> tuple[CountablePart, AbelianDescriptor]:
    """Split G = K + M with K countable and M n-bounded-divisible.

    ``hypothesis`` is the caller's declaration that G/(Div + Tor_n) is countable.
    Blocks of countable multiplicity are absorbed into K; uncountable ones form M.
    """
    _check_n(n)
    if not hypothesis:
        raise SplitRefused("split needs G/(Div + Tor_n) countable")
    if quotient_uncountable(total, n):
        bad = [s for s, c in total.lambdas if s.is_cyc and n % s.order and c.is_uncountable]
        raise SplitRefused(f"declared hypothesis contradicts the descriptor: {bad!r} is uncountable")
    m = tuple((s, c) for s, c in total.lambdas if c.is_uncountable)
    return CountablePart(), AbelianDescriptor(None, m)


def phi_n_holds(d: AbelianDescriptor, n: int) -> bool | None:
    """Does some element escape Div(G) + Tor_n(G)?  None when the countable part leaves it open."""
    _check_n(n)
    if any(n % s.order for s, _ in d.lambdas if s.is_cyc):
        return True
    if d.countable is None:
        return False
    status = d.countable.n_bounded_status(n)
    return None if status is None else not status


# ---------------------------------------------------------------- concrete factors

def _orders_of(group: ConcreteGroup, elements: list) -> list[int]:
    return [group.element_order(x) for x in elements]


def invariants_from_elements(group: ConcreteGroup, elements: list) -> AbelianDescriptor:
    """Primary decomposition of a finite abelian subgroup given by its elements, by counting.

    The number of cyclic factors of order at least p^k equals
    log_p(|Tor_{p^k}| / |Tor_{p^(k-1)}|).
    """
    orders = _orders_of(group, elements)
    size = len(elements)
    items: list[tuple[SIndex, Cardinal]] = []
    for p, e in sorted(factorize(size).items()):
        tor = [sum(1 for o in orders if (p ** k) % o == 0) for k in range(e + 1)]
        ranks = []
        for k in range(1, e + 1):
            ranks.append(valuation(tor[k] // tor[k - 1], p))
        ranks.append(0)
        for k in range(1, e + 1):
            count = ranks[k - 1] - ranks[k]
            if count:
                items.append((cyc(p, k), fin(count)))
    return AbelianDescriptor(None, tuple(items))


def descriptor_of(group: ConcreteGroup) -> AbelianDescriptor:
    """Exact descriptor of a concrete abelian group."""
    if not group.is_abelian:
        raise DescriptorError("group is not abelian")
    if isinstance(group, IntCyclic):
        return AbelianDescriptor(CountablePart(REDUCED, unbounded=True))
    if isinstance(group, ModCyclic):
        return AbelianDescriptor.of([(s, ONE) for s in cyclic_blocks(group.modulus)])
    if isinstance(group, DirectSum):
        return direct_sum(*(descriptor_of(c) for c in group.components))
    if isinstance(group, FiniteTable):
        return invariants_from_elements(group, group.elements())
    raise DescriptorError(f"no descriptor rule for {group!r}")


def center_descriptor(group: ConcreteGroup) -> AbelianDescriptor:
    if group.is_abelian:
        return descriptor_of(group)
    if isinstance(group, FiniteTable):
        return invariants_from_elements(group, group.center())
    if isinstance(group, DirectSum):
        return direct_sum(*(center_descriptor(c) for c in group.components))
    raise DescriptorError(f"no center rule for {group!r}")


__all__ = [
    "AbelianDescriptor", "CountablePart", "DescriptorError", "DivSplit", "INF", "SIndex",
    "SplitRefused", "TRIVIAL", "bounded_divisible_status", "center_descriptor", "cyc",
    "cyclic_blocks", "descriptor_of", "direct_sum", "div_part", "factorize",
    "invariants_from_elements", "is_n_bounded_divisible", "is_prime", "phi_n_holds",
    "pruefer", "quotient_lcm", "quotient_uncountable", "scale", "split_K_M",
    "tor_n", "torsion_bound", "valuation",
]
