"""Concrete computable groups used as vertex factors.

Every group exposes the same small interface: ``identity``, ``mul``, ``inv``,
``key`` (a total order used for canonical tie-breaking), ``parse_element`` and
``format_element``.  Elements are plain hashable Python values: table indices,
integers, or tuples for direct sums.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Iterable, Sequence

import numpy as np


class GroupError(ValueError):
    pass


class ConcreteGroup:
    identity: Any

    def mul(self, x, y):
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def key(self, x):
        raise NotImplementedError

    def is_identity(self, x) -> bool:
        return x == self.identity

    def power(self, x, k: int):
        if k < 0:
            x, k = self.inv(x), -k
        acc = self.identity
        while k:
            if k & 1:
                acc = self.mul(acc, x)
            x = self.mul(x, x)
            k >>= 1
        return acc

    @property
    def order(self) -> int | None:
        """Number of elements, or None when infinite."""
        raise NotImplementedError

    def elements(self) -> list:
        if self.order is None:
            raise GroupError(f"{self.describe()} is infinite")
        raise NotImplementedError

    @property
    def is_abelian(self) -> bool:
        raise NotImplementedError

    def element_order(self, x) -> int | None:
        n = self.order
        if n is None:
            return None if not self.is_identity(x) else 1
        y, k = x, 1
        while not self.is_identity(y):
            y = self.mul(y, x)
            k += 1
        return k

    def contains(self, x) -> bool:
        raise NotImplementedError

    def parse_element(self, text: str):
        raise NotImplementedError

    def format_element(self, x) -> str:
        raise NotImplementedError

    def describe(self) -> str:
        """Source form used by the presentation file format."""
        raise NotImplementedError


# ---------------------------------------------------------------- tables

@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    reason: str = ""
    witness: tuple[int, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def _as_square(table: Sequence[Sequence[int]]) -> np.ndarray:
    try:
        arr = np.asarray(table, dtype=np.int64)
    except (ValueError, TypeError) as exc:
        raise GroupError(f"malformed table: {exc}") from None
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise GroupError(f"table must be a non-empty square matrix, got shape {arr.shape}")
    n = arr.shape[0]
    if arr.min() < 0 or arr.max() >= n:
        raise GroupError("table entries must be element indices 0..n-1")
    return arr


def group_verify(table: Sequence[Sequence[int]]) -> VerifyResult:
    """Check the group axioms for a row-major multiplication table.

    Index 0 must be the identity.  On failure the result carries the first
    offending index tuple in lexicographic order.
    """
    t = _as_square(table)
    n = t.shape[0]
    idx = np.arange(n)
    bad_row = np.nonzero(t[0] != idx)[0]
    bad_col = np.nonzero(t[:, 0] != idx)[0]
    if bad_row.size or bad_col.size:
        x = int(min(bad_row.min(initial=n), bad_col.min(initial=n)))
        return VerifyResult(False, "index 0 is not a two-sided identity", (x,))
    has_inv = (t == 0).any(axis=1)
    if not has_inv.all():
        x = int(np.nonzero(~has_inv)[0][0])
        return VerifyResult(False, "element has no inverse", (x,))
    left = t[t]                                     # left[a, b, c] = (ab)c
    right = t[idx[:, None, None], t[None, :, :]]    # right[a, b, c] = a(bc)
    bad = np.argwhere(left != right)
    if bad.size:
        a, b, c = (int(v) for v in bad[0])
        return VerifyResult(False, "associativity fails", (a, b, c))
    return VerifyResult(True)


class FiniteTable(ConcreteGroup):
    """A finite group given by its multiplication table; identity is index 0."""

    def __init__(self, table: Sequence[Sequence[int]], names: Sequence[str] | None = None):
        res = group_verify(table)
        if not res:
            raise GroupError(f"not a group: {res.reason} at {res.witness}")
        arr = _as_square(table)
        n = arr.shape[0]
        self._np = arr
        self.table = tuple(tuple(int(v) for v in row) for row in arr)
        self.inverse = tuple(int(np.nonzero(arr[i] == 0)[0][0]) for i in range(n))
        if names is None:
            names = [str(i) for i in range(n)]
        names = tuple(names)
        if len(names) != n or len(set(names)) != n:
            raise GroupError("element names must be distinct, one per table row")
        self.names = names
        self._by_name = {s: i for i, s in enumerate(names)}
        self.identity = 0
        self._abelian = bool((arr == arr.T).all())

    @property
    def order(self) -> int:
        return len(self.table)

    def elements(self) -> list[int]:
        return list(range(len(self.table)))

    def mul(self, x: int, y: int) -> int:
        return self.table[x][y]

    def inv(self, x: int) -> int:
        return self.inverse[x]

    def key(self, x: int) -> int:
        return x

    def contains(self, x) -> bool:
        return isinstance(x, int) and 0 <= x < len(self.table)

    @property
    def is_abelian(self) -> bool:
        return self._abelian

    def center(self) -> list[int]:
        arr = self._np
        return [int(i) for i in np.nonzero((arr == arr.T).all(axis=1))[0]]

    def parse_element(self, text: str) -> int:
        if text in self._by_name:
            return self._by_name[text]
        raise GroupError(f"unknown element {text!r}")

    def format_element(self, x: int) -> str:
        return self.names[x]

    def describe(self) -> str:
        rows = " | ".join(" ".join(str(v) for v in row) for row in self.table)
        out = f"table | {rows}"
        if self.names != tuple(str(i) for i in range(self.order)):
            out += " names " + " ".join(self.names)
        return out

    def __eq__(self, other):
        return isinstance(other, FiniteTable) and (self.table, self.names) == (other.table, other.names)

    def __hash__(self):
        return hash((self.table, self.names))

    def __repr__(self):
        return f"FiniteTable(order={self.order})"


# ---------------------------------------------------------------- cyclic

class IntCyclic(ConcreteGroup):
    """The integers under addition; elements ordered by absolute value, then sign."""

    identity = 0

    @property
    def order(self) -> None:
        return None

    def mul(self, x: int, y: int) -> int:
        return x + y

    def inv(self, x: int) -> int:
        return -x

    def power(self, x: int, k: int) -> int:
        return x * k

    def key(self, x: int):
        return (abs(x), x < 0)

    def contains(self, x) -> bool:
        return isinstance(x, int)

    @property
    def is_abelian(self) -> bool:
        return True

    def parse_element(self, text: str) -> int:
        try:
            return int(text)
        except ValueError:
            raise GroupError(f"bad integer {text!r}") from None

    def format_element(self, x: int) -> str:
        return str(x)

    def describe(self) -> str:
        return "Z"

    def __eq__(self, other):
        return isinstance(other, IntCyclic)

    def __hash__(self):
        return hash("Z")

    def __repr__(self):
        return "IntCyclic()"


class ModCyclic(ConcreteGroup):
    """Integers modulo ``modulus`` (at least 2), residues in 0..modulus-1."""

    identity = 0

    def __init__(self, modulus: int):
        if not isinstance(modulus, int) or modulus < 2:
            raise GroupError(f"modulus must be an integer >= 2, got {modulus!r}")
        self.modulus = modulus

    @property
    def order(self) -> int:
        return self.modulus

    def elements(self) -> list[int]:
        return list(range(self.modulus))

    def mul(self, x: int, y: int) -> int:
        return (x + y) % self.modulus

    def inv(self, x: int) -> int:
        return (-x) % self.modulus

    def power(self, x: int, k: int) -> int:
        return (x * k) % self.modulus

    def key(self, x: int) -> int:
        return x

    def contains(self, x) -> bool:
        return isinstance(x, int) and 0 <= x < self.modulus

    @property
    def is_abelian(self) -> bool:
        return True

    def element_order(self, x: int) -> int:
        return self.modulus // math.gcd(x, self.modulus)

    def parse_element(self, text: str) -> int:
        try:
            return int(text) % self.modulus
        except ValueError:
            raise GroupError(f"bad residue {text!r}") from None

    def format_element(self, x: int) -> str:
        return str(x)

    def describe(self) -> str:
        return f"Zmod {self.modulus}"

    def __eq__(self, other):
        return isinstance(other, ModCyclic) and other.modulus == self.modulus

    def __hash__(self):
        return hash(("Zmod", self.modulus))

    def __repr__(self):
        return f"ModCyclic({self.modulus})"


# ---------------------------------------------------------------- sums

class DirectSum(ConcreteGroup):
    """Direct product of finitely many groups; elements are tuples.

    Element literals are comma separated component literals, e.g. ``1,0``.
    """

    def __init__(self, components: Iterable[ConcreteGroup]):
        comps = tuple(components)
        if not comps:
            raise GroupError("a direct sum needs at least one component")
        if any(isinstance(c, DirectSum) for c in comps):
            raise GroupError("nest sums by flattening their components")
        self.components = comps
        self.identity = tuple(c.identity for c in comps)

    @property
    def order(self) -> int | None:
        out = 1
        for c in self.components:
            if c.order is None:
                return None
            out *= c.order
        return out

    def elements(self) -> list[tuple]:
        if self.order is None:
            raise GroupError(f"{self.describe()} is infinite")
        out = [()]
        for c in self.components:
            out = [t + (x,) for t in out for x in c.elements()]
        return out

    def mul(self, x, y):
        return tuple(c.mul(a, b) for c, a, b in zip(self.components, x, y))

    def inv(self, x):
        return tuple(c.inv(a) for c, a in zip(self.components, x))

    def power(self, x, k: int):
        return tuple(c.power(a, k) for c, a in zip(self.components, x))

    def key(self, x):
        return tuple(c.key(a) for c, a in zip(self.components, x))

    def contains(self, x) -> bool:
        return (isinstance(x, tuple) and len(x) == len(self.components)
                and all(c.contains(a) for c, a in zip(self.components, x)))

    @property
    def is_abelian(self) -> bool:
        return all(c.is_abelian for c in self.components)

    def element_order(self, x) -> int | None:
        out = 1
        for c, a in zip(self.components, x):
            k = c.element_order(a)
            if k is None:
                return None
            out = out * k // math.gcd(out, k)
        return out

    def parse_element(self, text: str):
        parts = text.split(",")
        if len(parts) != len(self.components):
            raise GroupError(f"expected {len(self.components)} comma-separated components in {text!r}")
        return tuple(c.parse_element(p) for c, p in zip(self.components, parts))

    def format_element(self, x) -> str:
        return ",".join(c.format_element(a) for c, a in zip(self.components, x))

    def describe(self) -> str:
        return "sum " + ", ".join(c.describe() for c in self.components)

    def __eq__(self, other):
        return isinstance(other, DirectSum) and other.components == self.components

    def __hash__(self):
        return hash(("sum", self.components))

    def __repr__(self):
        return f"DirectSum({list(self.components)!r})"


# ---------------------------------------------------------------- builders

def cyclic_table(n: int) -> list[list[int]]:
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def symmetric_group_table(k: int) -> tuple[list[list[int]], list[str]]:
    """Table of S_k with permutations listed lexicographically (identity first).

    Product ``x*y`` is composition "first y, then x".
    """
    from itertools import permutations

    perms = list(permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(x[y[i]] for i in range(k))] for y in perms] for x in perms]
    names = ["".join(str(v + 1) for v in p) for p in perms]
    return table, names


def abelian_table(invariants: Sequence[int]) -> list[list[int]]:
    """Table of Z_{n1} x ... x Z_{nr}, elements enumerated in mixed radix."""
    sizes = list(invariants)
    if not sizes:
        return [[0]]
    grids = np.indices(sizes).reshape(len(sizes), -1).T   # element -> coordinates
    total = grids.shape[0]
    radix = np.cumprod([1] + sizes[:0:-1])[::-1]
    s = np.asarray(sizes)
    summed = (grids[:, None, :] + grids[None, :, :]) % s
    return (summed @ radix).astype(int).reshape(total, total).tolist()


__all__ = [
    "ConcreteGroup", "DirectSum", "FiniteTable", "GroupError", "IntCyclic",
    "ModCyclic", "VerifyResult", "abelian_table", "cyclic_table", "group_verify",
    "symmetric_group_table",
]
