"""Symbolic cardinals: finite n, aleph_0, named intermediate atoms, the continuum.

Intermediate atoms stand for cardinals strictly between aleph_0 and 2^aleph_0.
They are uninterpreted: two distinct atoms are incomparable, and their sum is a
formal join that only answers the three-region question of
:func:`card_predicates`.  The single exception is the atom named ``aleph1``,
the least uncountable cardinal, which lies below every other atom.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

ALEPH1_NAME = "aleph1"

_FIN, _ALEPH0, _MID, _CONTINUUM = 0, 1, 2, 3


@dataclass(frozen=True)
class Cardinal:
    level: int
    n: int = 0
    names: frozenset[str] = frozenset()

    def __post_init__(self):
        if self.level == _FIN and self.n < 0:
            raise ValueError("finite cardinals are nonnegative")
        if self.level == _MID:
            names = frozenset(self.names)
            if not names:
                raise ValueError("intermediate cardinal needs at least one atom name")
            if len(names) > 1:
                names = names - {ALEPH1_NAME}
            object.__setattr__(self, "names", names)

    # classification -----------------------------------------------------
    @property
    def is_finite(self) -> bool:
        return self.level == _FIN

    @property
    def is_zero(self) -> bool:
        return self.level == _FIN and self.n == 0

    @property
    def is_countable(self) -> bool:
        return self.level <= _ALEPH0

    @property
    def is_uncountable(self) -> bool:
        return self.level > _ALEPH0

    @property
    def is_mid(self) -> bool:
        return self.level == _MID

    @property
    def is_join(self) -> bool:
        return self.level == _MID and len(self.names) > 1

    @property
    def is_continuum(self) -> bool:
        return self.level == _CONTINUUM

    # order --------------------------------------------------------------
    def __le__(self, other: "Cardinal") -> bool:
        if self.level != other.level:
            return self.level < other.level
        if self.level == _FIN:
            return self.n <= other.n
        if self.level == _MID:
            return self.names <= other.names or self.names == {ALEPH1_NAME}
        return True

    def __lt__(self, other: "Cardinal") -> bool:
        return self <= other and self != other

    def __ge__(self, other: "Cardinal") -> bool:
        return other <= self

    def __gt__(self, other: "Cardinal") -> bool:
        return other < self

    def comparable(self, other: "Cardinal") -> bool:
        return self <= other or other <= self

    # arithmetic ---------------------------------------------------------
    def __add__(self, other: "Cardinal") -> "Cardinal":
        if self.level == _FIN and other.level == _FIN:
            return Cardinal(_FIN, self.n + other.n)
        return lub(self, other)

    def __mul__(self, other: "Cardinal") -> "Cardinal":
        if self.is_zero or other.is_zero:
            return ZERO
        if self.level == _FIN and other.level == _FIN:
            return Cardinal(_FIN, self.n * other.n)
        return lub(self, other)

    def __str__(self) -> str:
        if self.level == _FIN:
            return str(self.n)
        if self.level == _ALEPH0:
            return "aleph0"
        if self.level == _CONTINUUM:
            return "continuum"
        if len(self.names) == 1:
            return f"mid {next(iter(self.names))}"
        return "join(" + ",".join(sorted(self.names)) + ")"

    def __repr__(self) -> str:
        return f"Cardinal<{self}>"


def fin(n: int) -> Cardinal:
    return Cardinal(_FIN, n)


def mid(name: str) -> Cardinal:
    return Cardinal(_MID, names=frozenset([name]))


ZERO = fin(0)
ONE = fin(1)
ALEPH0 = Cardinal(_ALEPH0)
ALEPH1 = mid(ALEPH1_NAME)
CONTINUUM = Cardinal(_CONTINUUM)


def lub(a: Cardinal, b: Cardinal) -> Cardinal:
    """Least upper bound in the atom algebra (the formal join for atoms)."""
    if a.level != b.level:
        return a if a.level > b.level else b
    if a.level == _FIN:
        return a if a.n >= b.n else b
    if a.level == _MID:
        return Cardinal(_MID, names=a.names | b.names)
    return a


def card_sum(items: Iterable[tuple[Cardinal, Cardinal]]) -> Cardinal:
    """Sum of ``count`` copies of ``multiplicand`` over all ``(multiplicand, count)`` items."""
    total = ZERO
    for multiplicand, count in items:
        total = total + multiplicand * count
    return total


def total(cards: Iterable[Cardinal]) -> Cardinal:
    return card_sum((c, ONE) for c in cards)


class Regions(NamedTuple):
    leq_aleph0: bool
    strictly_between: bool
    equals_continuum: bool


def card_predicates(c: Cardinal) -> Regions:
    return Regions(c.is_countable, c.is_mid, c.is_continuum)


def collapse_ch(c: Cardinal) -> Cardinal:
    """Read ``c`` under CH: every intermediate value becomes 2^aleph_0."""
    return CONTINUUM if c.is_mid else c


def parse_cardinal(tokens: list[str]) -> tuple[Cardinal, int]:
    """Parse a cardinal literal at the head of ``tokens``; returns (value, tokens used)."""
    if not tokens:
        raise ValueError("expected a cardinal")
    t = tokens[0]
    if t == "aleph0":
        return ALEPH0, 1
    if t == "continuum":
        return CONTINUUM, 1
    if t == ALEPH1_NAME:
        return ALEPH1, 1
    if t == "mid":
        if len(tokens) < 2:
            raise ValueError("'mid' needs an atom name")
        return mid(tokens[1]), 2
    if t.isdigit():
        return fin(int(t)), 1
    raise ValueError(f"bad cardinal literal {t!r}")


def format_cardinal(c: Cardinal) -> str:
    if c.is_join:
        raise ValueError("formal joins have no literal form")
    if c == ALEPH1:
        return ALEPH1_NAME
    return str(c)
