"""Partition and admissibility verdicts for graph products over symbolic inputs.

Each factor is described by a :class:`ConcreteFactor`, an
:class:`AbelianFactor` (a descriptor) or a :class:`NonAbelianFactor` (declared
flags).  Every check returns a :class:`Verdict` whose trail lists the rules
consulted, in a fixed order, with the data that decided them.

Block multiplicities are handled as ranges ``[lo, hi]``: a countable summand
``H_a`` may swallow countably many blocks, so the multiplicity of a block is
known only up to a countable amount.  A check is decided only when both ends
of the range give the same answer.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Union

from .abelian import (
    AbelianDescriptor, REDUCED, SIndex, bounded_divisible_status,
    center_descriptor, descriptor_of, quotient_lcm, quotient_uncountable, torsion_bound,
)
from .cardinals import ALEPH0, CONTINUUM, ZERO, Cardinal, card_predicates, collapse_ch, fin
from .graph import SymbolicGraph, components, induced_subgraph
from .groups import ConcreteGroup
from .rules import RULES


class ClassifierError(ValueError):
    pass


MODES = ("ch", "not-ch")

ADMITS = "Admits"
ADMITS_NA = "AdmitsNonArchimedean"
DOES_NOT_ADMIT = "DoesNotAdmit"
UNDETERMINED = "Undetermined"
PASSES = "Passes"     # a set of necessary conditions holds; not a verdict on its own

DEFAULT_CAP = 10 ** 6


# ------------------------------------------------------------------ factor specs

@dataclass(frozen=True)
class ConcreteFactor:
    group: ConcreteGroup


@dataclass(frozen=True)
class AbelianFactor:
    descriptor: AbelianDescriptor


@dataclass(frozen=True)
class NonAbelianFactor:
    """A non-abelian factor known through flags; None means undeclared."""

    center_index_countable: bool | None = None
    center: AbelianDescriptor | None = None
    countable: bool | None = None


FactorSpec = Union[ConcreteFactor, AbelianFactor, NonAbelianFactor]


@dataclass(frozen=True)
class Profile:
    """What the rules need to know about one factor."""

    abelian: bool
    countable: bool | None
    center_index_countable: bool | None
    center: AbelianDescriptor | None     # the factor itself when abelian
    cardinality: Cardinal | None


def profile(spec: FactorSpec) -> Profile:
    if isinstance(spec, ConcreteFactor):
        g = spec.group
        size = fin(g.order) if g.order is not None else ALEPH0
        if g.is_abelian:
            return Profile(True, True, True, descriptor_of(g), size)
        try:
            center = center_descriptor(g)
        except Exception:
            center = None
        return Profile(False, True, True, center, size)
    if isinstance(spec, AbelianFactor):
        card = spec.descriptor.cardinality()
        return Profile(True, card.is_countable, True, spec.descriptor, card)
    if isinstance(spec, NonAbelianFactor):
        ci = True if spec.countable else spec.center_index_countable
        card = ALEPH0 if spec.countable else (None if spec.countable is None else CONTINUUM)
        return Profile(False, spec.countable, ci, spec.center, card)
    raise ClassifierError(f"unknown factor spec {spec!r}")


def _is_trivial(spec: FactorSpec) -> bool:
    if isinstance(spec, ConcreteFactor):
        return spec.group.order == 1
    if isinstance(spec, AbelianFactor):
        return spec.descriptor.is_trivial
    return False


# ------------------------------------------------------------------ instances

@dataclass(frozen=True)
class SymbolicInstance:
    graph: SymbolicGraph
    factors: tuple[tuple[str, FactorSpec], ...]

    def __init__(self, graph: SymbolicGraph, factors: Mapping[str, FactorSpec] | Iterable):
        items = dict(factors.items() if isinstance(factors, Mapping) else factors)
        ids = graph.ids
        missing = [x for x in ids if x not in items]
        if missing:
            raise ClassifierError(f"no factor given for {missing}")
        extra = [x for x in items if x not in ids]
        if extra:
            raise ClassifierError(f"factors given for unknown vertices {extra}")
        for x in ids:
            spec = items[x]
            if graph.is_class(x) and isinstance(spec, ConcreteFactor):
                raise ClassifierError(f"class {x!r} needs a symbolic factor, not a concrete group")
            if _is_trivial(spec):
                raise ClassifierError(f"factor at {x!r} is trivial")
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "factors", tuple((x, items[x]) for x in ids))

    @property
    def ids(self) -> tuple[str, ...]:
        return self.graph.ids

    def factor(self, x: str) -> FactorSpec:
        for y, spec in self.factors:
            if y == x:
                return spec
        raise KeyError(x)

    def mult(self, x: str) -> Cardinal:
        return self.graph.multiplicity(x)

    def total(self, xs: Iterable[str]) -> Cardinal:
        return self.graph.total(xs)

    def restrict(self, keep: Iterable[str]) -> "SymbolicInstance":
        keep = set(keep)
        unknown = keep - set(self.ids)
        if unknown:
            raise ClassifierError(f"unknown ids {sorted(unknown)}")
        g = self.graph
        explicit = induced_subgraph(g.explicit, [v for v in g.explicit.vertices if v in keep])
        classes = tuple(c for c in g.classes if c.id in keep)
        non_edges = frozenset(e for e in g.non_edges if e <= keep)
        sub = SymbolicGraph(explicit, classes, non_edges)
        return SymbolicInstance(sub, [(x, s) for x, s in self.factors if x in keep])


# ------------------------------------------------------------------ verdicts

@dataclass(frozen=True)
class TrailEntry:
    rule: str
    holds: bool | None          # None: not applicable or not decided
    detail: str

    def __post_init__(self):
        if self.rule not in RULES:
            raise ValueError(f"unregistered rule {self.rule!r}")

    def line(self) -> str:
        mark = {True: "ok", False: "FAIL", None: "n/a"}[self.holds]
        out = f"[{self.rule}] {mark}: {self.detail}"
        return out + f" (rule: {RULES[self.rule]})" if self.holds is False else out


@dataclass(frozen=True)
class Verdict:
    outcome: str
    trail: tuple[TrailEntry, ...]
    reasons: tuple[str, ...] = ()
    non_archimedean: bool = False
    notes: tuple[str, ...] = ()
    subject: str = "G"

    def __post_init__(self):
        object.__setattr__(self, "trail", tuple(self.trail))
        object.__setattr__(self, "reasons", tuple(self.reasons))
        object.__setattr__(self, "notes", tuple(self.notes))
        if self.outcome == DOES_NOT_ADMIT and not self.failing:
            raise ValueError("a negative verdict needs a failing trail entry")
        if self.outcome == UNDETERMINED and not self.reasons:
            raise ValueError("an undetermined verdict needs a reason")

    @property
    def failing(self) -> tuple[TrailEntry, ...]:
        return tuple(e for e in self.trail if e.holds is False)

    @property
    def rules(self) -> tuple[str, ...]:
        return tuple(e.rule for e in self.trail)

    @property
    def cited(self) -> tuple[str, ...]:
        """Rules the outcome rests on: the failing ones for a negative verdict."""
        if self.outcome == DOES_NOT_ADMIT:
            return tuple(e.rule for e in self.failing)
        return tuple(e.rule for e in self.trail if e.holds)

    def lines(self) -> list[str]:
        out = [f"subject: {self.subject}", f"verdict: {self.outcome}"]
        if self.non_archimedean and self.outcome in (ADMITS, ADMITS_NA):
            out.append("non-archimedean: yes")
        out += [f"reason: {r}" for r in self.reasons]
        out += [f"trail: {e.line()}" for e in self.trail]
        out += [f"note: {n}" for n in self.notes]
        return out


def _combine(trail: list[TrailEntry], reasons: list[str], **kw) -> Verdict:
    if any(e.holds is False for e in trail):
        return Verdict(DOES_NOT_ADMIT, trail, reasons, **kw)
    if reasons:
        return Verdict(UNDETERMINED, trail, reasons, **kw)
    return Verdict(PASSES, trail, **kw)


def _check_mode(mode: str) -> None:
    if mode not in MODES:
        raise ClassifierError(f"mode must be one of {MODES}, got {mode!r}")


def _read(c: Cardinal, mode: str) -> Cardinal:
    return collapse_ch(c) if mode == "ch" else c


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


# ------------------------------------------------------------------ partition

@dataclass(frozen=True)
class PartitionA:
    A0: tuple[str, ...]
    A5: tuple[str, ...]
    A6: tuple[str, ...]
    A7: tuple[str, ...]
    A8: tuple[str, ...]
    A9: tuple[str, ...]
    n_a6: int | None           # least n with A6(n) finite
    n_g: int | None            # least m >= 2 with phi_m failing for all but countably many
    n_g_status: str            # "ok", "none" or "unknown"
    unknown: tuple[tuple[str, str], ...] = ()

    def sets(self) -> dict[str, tuple[str, ...]]:
        return {"A0": self.A0, "A5": self.A5, "A6": self.A6, "A7": self.A7, "A8": self.A8, "A9": self.A9}

    def part_of(self, x: str) -> str | None:
        for name, xs in self.sets().items():
            if x in xs:
                return name
        return None

    def lines(self, inst: SymbolicInstance | None = None) -> list[str]:
        out = []
        for name, xs in self.sets().items():
            body = " ".join(xs) if xs else "-"
            if inst is not None:
                body += f"  (total {inst.total(xs)})"
            out.append(f"{name}: {body}")
        out.append(f"n for A6: {self.n_a6 if self.n_a6 is not None else 'undetermined'}")
        out.append(f"n(G): {self.n_g if self.n_g is not None else self.n_g_status}")
        out += [f"unknown: {x} ({why})" for x, why in self.unknown]
        return out


def compute_partition(inst: SymbolicInstance, cap: int = DEFAULT_CAP) -> PartitionA:
    ids = inst.ids
    prof = {x: profile(inst.factor(x)) for x in ids}
    a0 = inst.graph.non_clique_ids()
    A0 = [x for x in ids if x in a0]
    unknown: list[tuple[str, str]] = []
    A5, psi = [], []
    for x in ids:
        if x in a0:
            continue
        p = prof[x]
        if p.abelian or p.center_index_countable:
            psi.append(x)
        elif p.center_index_countable is None:
            unknown.append((x, "center index countability undeclared"))
        else:
            A5.append(x)

    centers: dict[str, AbelianDescriptor | None] = {}
    n_a6: int | None = 1
    for x in psi:
        p = prof[x]
        if p.center is None:
            if p.countable:
                centers[x] = None          # a countable center has a countable quotient
            else:
                unknown.append((x, "center descriptor undeclared"))
            continue
        centers[x] = p.center
        if not inst.mult(x).is_finite:
            n_a6 = _lcm(n_a6, quotient_lcm(p.center))
    if n_a6 > cap:
        for x, c in centers.items():
            if c is not None and not inst.mult(x).is_finite and quotient_lcm(c) > 1:
                unknown.append((x, f"no n <= {cap} makes A6(n) finite"))
        n_a6 = None
    A6 = [] if n_a6 is None else [x for x, c in centers.items() if c is not None and quotient_uncountable(c, n_a6)]

    blocked = {x for x, _ in unknown}
    A7, A8, A9 = [], [], []
    for x in ids:
        if x in a0 or x in A5 or x in A6 or x in blocked:
            continue
        if x not in centers and not prof[x].abelian:
            continue
        p = prof[x]
        if not p.abelian:
            A7.append(x)
            continue
        status = bounded_divisible_status(p.center)
        if status is None:
            unknown.append((x, "countable part: bounded-divisibility undeclared"))
        elif status:
            A9.append(x)
        else:
            A8.append(x)

    n_g, status = _n_of_g(inst, prof)
    return PartitionA(tuple(A0), tuple(A5), tuple(A6), tuple(A7), tuple(A8), tuple(A9),
                      n_a6, n_g, status, tuple(unknown))


def _n_of_g(inst: SymbolicInstance, prof: dict[str, Profile]) -> tuple[int | None, str]:
    m = 1
    for x in inst.ids:
        p = prof[x]
        if not p.abelian or not inst.mult(x).is_uncountable:
            continue
        b = torsion_bound(p.center)
        if b is None:
            cp = p.center.countable
            return None, ("none" if cp is not None and cp.unbounded else "unknown")
        m = _lcm(m, b)
    return (m if m >= 2 else 2), "ok"


# ------------------------------------------------------------------ block sums

@dataclass
class BlockSums:
    """Ranges of summed block multiplicities; ``extra`` may land on any block type."""

    lo: dict[SIndex, Cardinal] = field(default_factory=dict)
    hi: dict[SIndex, Cardinal] = field(default_factory=dict)
    extra: Cardinal = ZERO
    unknown: list[str] = field(default_factory=list)

    def add(self, s: SIndex, lo: Cardinal, hi: Cardinal) -> None:
        self.lo[s] = self.lo.get(s, ZERO) + lo
        self.hi[s] = self.hi.get(s, ZERO) + hi

    def keys(self) -> list[SIndex]:
        return sorted(set(self.lo) | set(self.hi))

    def range(self, s: SIndex) -> tuple[Cardinal, Cardinal]:
        return self.lo.get(s, ZERO), self.hi.get(s, ZERO) + self.extra


def block_sums(inst: SymbolicInstance, xs: Iterable[str]) -> BlockSums:
    out = BlockSums()
    for x in xs:
        p = profile(inst.factor(x))
        mu = inst.mult(x)
        d = p.center
        if d is None:
            if p.countable:
                out.extra = out.extra + ALEPH0 * mu
            else:
                out.unknown.append(f"{x}: no descriptor for an uncountable factor")
            continue
        exact = p.abelian and (d.countable is None or bounded_divisible_status(d) is True)
        for s, c in d.lambdas:
            definite = exact or c.is_uncountable
            out.add(s, c * mu if definite else ZERO, c * mu)
        if d.countable is not None or not p.abelian:
            out.extra = out.extra + ALEPH0 * mu
    return out


def _good(c: Cardinal, mode: str) -> bool:
    r = card_predicates(_read(c, mode))
    return r.leq_aleph0 or r.equals_continuum


@dataclass
class GapReport:
    failing: list[str] = field(default_factory=list)
    undecided: list[str] = field(default_factory=list)
    finite: list[str] = field(default_factory=list)     # values where the strict reading differs
    values: list[str] = field(default_factory=list)


def gap_report(sums: BlockSums, mode: str, star_only: bool = True) -> GapReport:
    rep = GapReport()
    for s in sums.keys():
        if star_only and s.is_pruefer:
            continue
        lo, hi = sums.range(s)
        a, b = _good(lo, mode), _good(hi, mode)
        shown = str(_read(lo, mode)) if lo == hi else f"[{_read(lo, mode)}, {_read(hi, mode)}]"
        rep.values.append(f"{s.label()}={shown}")
        if not a and not b:
            rep.failing.append(f"{s.label()}={shown}")
        elif a != b:
            rep.undecided.append(f"{s.label()} in {shown}")
        if hi.is_finite:
            rep.finite.append(f"{s.label()}={hi}")
    if not _good(sums.extra, mode):
        rep.undecided.append(f"countable summands spread {sums.extra} over unknown blocks")
    return rep


def _pruefer_total(inst: SymbolicInstance, xs: Iterable[str]) -> list[str]:
    """Pruefer blocks whose definite total multiplicity over ``xs`` is uncountable."""
    sums = BlockSums()
    for x in xs:
        p = profile(inst.factor(x))
        if p.center is None:
            continue
        for s, c in p.center.lambdas:
            if s.is_pruefer and (p.abelian or c.is_uncountable):
                sums.add(s, c * inst.mult(x), c * inst.mult(x))
    return [f"{s.label()}={sums.lo[s]}" for s in sums.keys() if sums.lo[s].is_uncountable]


# ------------------------------------------------------------------ fragments

def _nonclique_entry(inst: SymbolicInstance) -> TrailEntry:
    g = inst.graph
    a0 = [x for x in inst.ids if x in g.non_clique_ids()]
    t = inst.total(a0)
    if not t.is_uncountable:
        return TrailEntry("nonclique-uncountable", True, f"A0 has total {t}")
    clauses = []
    many_pairs = many_nonneighbours = False
    for x in a0:
        for y in inst.ids:
            if x == y and not g.is_class(x):
                continue
            if not g.ids_adjacent(x, y):
                if inst.mult(y).is_uncountable:
                    many_nonneighbours = True
                if inst.mult(x).is_uncountable or inst.mult(y).is_uncountable:
                    many_pairs = True
    if many_pairs:
        clauses.append("(i) uncountably many disjoint non-adjacent pairs")
    if many_nonneighbours:
        clauses.append("(ii) a vertex with uncountably many non-neighbours")
    return TrailEntry("nonclique-uncountable", False, f"A0 has total {t}; " + "; ".join(clauses))


def _shape_problem(p: Profile) -> str | None:
    """Why a factor is not a plain sum of blocks Q and Z_{p^k}; None if it is."""
    if not p.abelian:
        return "non-abelian"
    d = p.center
    if any(s.is_pruefer for s in d.keys()):
        return "pruefer"
    h = d.countable
    if h is None:
        return None
    if h.unbounded:
        return "unbounded"
    if h.divisibility == REDUCED and h.bound is not None:
        return None
    return "unknown"


def check_necessary_conditions(inst: SymbolicInstance, mode: str) -> Verdict:
    """Necessary conditions for any Polish group topology on the whole product.

    The countable witness set A is built constructively: the non-clique ids
    together with every countable id whose factor is not a plain block sum.
    """
    _check_mode(mode)
    trail: list[TrailEntry] = []
    reasons: list[str] = []
    ids = inst.ids
    prof = {x: profile(inst.factor(x)) for x in ids}
    trail.append(_nonclique_entry(inst))

    nonab = [x for x in ids if not prof[x].abelian]
    t = inst.total(nonab)
    trail.append(TrailEntry("nonabelian-uncountable", not t.is_uncountable,
                            f"non-abelian factors: total {t}"))

    a0 = inst.graph.non_clique_ids()
    central = [x for x in ids if x not in a0]
    bad = _pruefer_total(inst, central)
    trail.append(TrailEntry("pruefer-uncountable", not bad,
                            "Pruefer totals " + (", ".join(bad) if bad else "countable")))

    witness = [x for x in ids if x in a0]
    outside, unbounded = [], []
    for x in central:
        problem = _shape_problem(prof[x])
        if problem is None:
            outside.append(x)
        elif inst.mult(x).is_countable:
            witness.append(x)
        elif problem == "unbounded":
            unbounded.append(x)
        elif problem == "unknown":
            reasons.append(f"{x}: countable summand of unknown shape on {inst.mult(x)} vertices")
    trail.append(TrailEntry("no-torsion-bound", not unbounded,
                            "unbounded countable summands on uncountable classes: "
                            + (" ".join(unbounded) if unbounded else "none")))
    trail.append(TrailEntry("outside-shape", True, "witness A = {" + " ".join(witness) + "}"))

    n = 1
    for x in outside:
        d = prof[x].center
        n = _lcm(n, torsion_bound(d) or 1)
    trail.append(TrailEntry("torsion-bound", True, f"n = {n}"))

    if all(prof[x].countable for x in witness):
        rep = gap_report(block_sums(inst, outside), mode)
        trail.append(TrailEntry("cardinal-gap", not rep.failing,
                                "outside sums " + (", ".join(rep.failing or rep.values) or "empty")))
        reasons += [f"multiplicity undecided: {u}" for u in rep.undecided]
    else:
        trail.append(TrailEntry("cardinal-gap", None, "witness set has an uncountable factor"))
    return _combine(trail, reasons)


def check_partition_conditions(inst: SymbolicInstance, mode: str,
                      cap: int = DEFAULT_CAP) -> tuple[Verdict, PartitionA]:
    """The partition together with the clauses a product admitting a topology must satisfy."""
    _check_mode(mode)
    part = compute_partition(inst, cap)
    prof = {x: profile(inst.factor(x)) for x in inst.ids}
    trail: list[TrailEntry] = [_nonclique_entry(inst)]
    reasons = [f"{x}: {why}" for x, why in part.unknown]

    big = [x for x in part.A0 if prof[x].countable is False]
    open_ = [x for x in part.A0 if prof[x].countable is None]
    trail.append(TrailEntry("uncountable-factor-nonedge", not big,
                            "uncountable factors in A0: " + (" ".join(big) if big else "none")))
    reasons += [f"{x}: countability undeclared" for x in open_]

    t5 = inst.total(part.A5)
    trail.append(TrailEntry("center-index-infinite", t5.is_finite, f"A5 total {t5}"))
    if part.n_a6 is None:
        trail.append(TrailEntry("a6-infinite", None, f"no n <= {cap} found"))
    else:
        t6 = inst.total(part.A6)
        trail.append(TrailEntry("a6-infinite", t6.is_finite, f"n = {part.n_a6}, A6 total {t6}"))

    t7 = inst.total(part.A7)
    trail.append(TrailEntry("nonabelian-uncountable", not t7.is_uncountable, f"A7 total {t7}"))
    t8 = inst.total(part.A8)
    ok8 = not t8.is_uncountable and part.n_g_status != "none"
    trail.append(TrailEntry("no-torsion-bound", ok8,
                            f"A8 total {t8}, n(G) {part.n_g if part.n_g is not None else part.n_g_status}"))
    if part.n_g_status == "unknown":
        reasons.append("n(G) depends on undeclared countable summands")

    bad = _pruefer_total(inst, part.A7 + part.A8 + part.A9)
    trail.append(TrailEntry("pruefer-uncountable", not bad,
                            "Pruefer totals over A7-A9 " + (", ".join(bad) if bad else "countable")))
    trail.append(TrailEntry("partition", not part.unknown or None,
                            " ".join(f"{k}={len(v)}" for k, v in part.sets().items())))
    return _combine(trail, reasons), part


def free_product_guard(inst: SymbolicInstance) -> Verdict:
    """An uncountable group that splits as a free product admits no Polish topology."""
    reps = inst.graph.representatives()
    comps = components(reps)
    prof = {x: profile(inst.factor(x)) for x in inst.ids}
    uncountable = inst.total(inst.ids).is_uncountable or any(p.countable is False for p in prof.values())
    if len(comps) < 2:
        return Verdict(PASSES, [TrailEntry("free-product", True, "graph is connected")])
    if not uncountable:
        reasons = [] if all(p.countable is not None for p in prof.values()) else \
            ["countability of a free factor undeclared"]
        return _combine([TrailEntry("free-product", True,
                                    f"{len(comps)} free factors, group countable")], reasons)
    trail = [TrailEntry("free-product", False, f"{len(comps)} free factors, group uncountable")]
    nc = _nonclique_entry(inst)
    if nc.holds is False:
        trail.append(nc)
    big = [x for x in inst.ids if x in inst.graph.non_clique_ids() and prof[x].countable is False]
    if big:
        trail.append(TrailEntry("uncountable-factor-nonedge", False, "uncountable factors " + " ".join(big)))
    return Verdict(DOES_NOT_ADMIT, trail)


# ------------------------------------------------------------------ characterisations

def classify_countable_factors(inst: SymbolicInstance, mode: str) -> Verdict:
    """Full characterisation when every factor is countable."""
    _check_mode(mode)
    prof = {x: profile(inst.factor(x)) for x in inst.ids}
    loose = [x for x in inst.ids if prof[x].countable is not True]
    if loose:
        raise ClassifierError(f"factors not declared countable: {loose}; use check_necessary_conditions")
    trail = [_nonclique_entry(inst)]
    reasons: list[str] = []
    a0 = inst.graph.non_clique_ids()
    outside = [x for x in inst.ids if x not in a0 and inst.mult(x).is_uncountable]
    kinds: dict[str, list[str]] = {"non-abelian": [], "pruefer": [], "unbounded": []}
    shaped = []
    for x in outside:
        problem = _shape_problem(prof[x])
        if problem is None:
            shaped.append(x)
        elif problem == "unknown":
            reasons.append(f"{x}: countable summand of unknown shape on {inst.mult(x)} vertices")
        else:
            kinds[problem].append(x)
    for rule, kind in (("nonabelian-uncountable", "non-abelian"), ("pruefer-uncountable", "pruefer"),
                       ("no-torsion-bound", "unbounded")):
        xs = kinds[kind]
        trail.append(TrailEntry(rule, not xs, f"{kind} on uncountable classes: " + (" ".join(xs) or "none")))
    n = 1
    for x in shaped:
        n = _lcm(n, torsion_bound(prof[x].center) or 1)
    trail.append(TrailEntry("torsion-bound", True, f"n = {n}"))
    rep = gap_report(block_sums(inst, shaped), mode)
    trail.append(TrailEntry("cardinal-gap", not rep.failing,
                            "sums outside A " + (", ".join(rep.failing or rep.values) or "empty")))
    reasons += [f"multiplicity undecided: {u}" for u in rep.undecided]
    v = _combine(trail, reasons)
    if v.outcome != PASSES:
        return v
    trail.append(TrailEntry("countable-iff", True, "A = the countable ids; Polish and non-Archimedean coincide"))
    return Verdict(ADMITS, trail, non_archimedean=True)


def classify_abelian_sum(d: AbelianDescriptor, mode: str) -> Verdict:
    """Characterisation of a direct sum of countable abelian groups given as a descriptor."""
    _check_mode(mode)
    trail = []
    bad_p = [f"{s.label()}={c}" for s, c in d.lambdas if s.is_pruefer and c.is_uncountable]
    trail.append(TrailEntry("pruefer-uncountable", not bad_p, ", ".join(bad_p) or "none uncountable"))
    gaps = [f"{s.label()}={_read(c, mode)}" for s, c in d.lambdas
            if s.in_s_star and c.is_uncountable and not _good(c, mode)]
    trail.append(TrailEntry("cardinal-gap", not gaps, ", ".join(gaps) or "every multiplicity countable or continuum"))
    if bad_p or gaps:
        return Verdict(DOES_NOT_ADMIT, trail)
    n = 1
    for s, c in d.lambdas:
        if s.is_cyc:
            n = _lcm(n, s.order)
    trail.append(TrailEntry("abelian-sum-shape", True, f"n = {n} bounds the cyclic blocks"))
    return Verdict(ADMITS, trail, non_archimedean=True)


def classify_restricted(inst: SymbolicInstance, mode: str, b0: Iterable[str] = (),
                      query_b: Iterable[str] | None = None, cap: int = DEFAULT_CAP) -> Verdict:
    """Verdict for the product restricted to ``query_b``, modulo the finite set ``b0``.

    The partition is computed for the instance without ``b0``; ``query_b``
    must avoid ``B1 = b0 + A5 + A6``.  It defaults to ``A0 + A7 + A8 + A9``.
    Sums are accepted when countable or the continuum.
    """
    _check_mode(mode)
    b0 = list(dict.fromkeys(b0))
    if any(x not in inst.ids for x in b0):
        raise ClassifierError(f"B0 uses unknown ids {[x for x in b0 if x not in inst.ids]}")
    if not inst.total(b0).is_finite:
        raise ClassifierError("B0 must be finite")
    sub = inst.restrict([x for x in inst.ids if x not in b0])
    hyp, part = check_partition_conditions(sub, mode, cap)
    if hyp.outcome == DOES_NOT_ADMIT:
        return Verdict(DOES_NOT_ADMIT, hyp.trail, subject="G minus B0",
                       notes=["no partition with the required clauses exists"])
    if hyp.outcome == UNDETERMINED:
        return Verdict(UNDETERMINED, hyp.trail, hyp.reasons, subject="G restricted to B")
    b1 = set(b0) | set(part.A5) | set(part.A6)
    a_set = part.A0 + part.A7 + part.A8 + part.A9
    b = list(a_set if query_b is None else dict.fromkeys(query_b))
    if any(x not in inst.ids for x in b):
        raise ClassifierError(f"B uses unknown ids {[x for x in b if x not in inst.ids]}")
    clash = [x for x in b if x in b1]
    if clash:
        raise ClassifierError(f"B meets B1 = B0 + A5 + A6 in {clash}")

    sums = block_sums(inst, b)
    rep = gap_report(sums, mode)
    trail = list(hyp.trail)
    trail.append(TrailEntry("restricted-sums", not rep.failing,
                            "B = {" + " ".join(b) + "}: " + (", ".join(rep.failing or rep.values) or "no blocks")))
    reasons = [f"multiplicity undecided: {u}" for u in rep.undecided] + sums.unknown
    notes = []
    if rep.finite or not rep.values:
        notes.append("strict reading (exactly aleph0 or continuum) differs: "
                     + (", ".join(rep.finite) if rep.finite else "every block sum is 0"))
    tail = gap_report(block_sums(inst, part.A7 + part.A8 + part.A9), mode)
    notes.append("finite-removal form: " + ("holds with B = A5 + A6" if not tail.failing and not tail.undecided
                                            else "fails for B = A5 + A6"))
    if rep.failing:
        return Verdict(DOES_NOT_ADMIT, trail, reasons, notes=notes, subject="G restricted to B")
    if reasons:
        return Verdict(UNDETERMINED, trail, reasons, notes=notes, subject="G restricted to B")
    if mode == "ch" and set(b) == set(a_set) and not b0:
        trail.append(TrailEntry("ch-collapse", True, "B = A0 + A7 + A8 + A9"))
        return Verdict(ADMITS_NA, trail, non_archimedean=True, notes=notes, subject="G restricted to B")
    return Verdict(ADMITS, trail, notes=notes, subject="G restricted to B")


# ------------------------------------------------------------------ whole-instance driver

@dataclass(frozen=True)
class Classification:
    verdict: Verdict
    partition: PartitionA
    restricted: Verdict | None

    def lines(self, inst: SymbolicInstance | None = None) -> list[str]:
        out = self.verdict.lines()
        out += [f"partition {line}" for line in self.partition.lines(inst)]
        if self.restricted is not None:
            out += [f"restricted {line}" for line in self.restricted.lines()]
        return out


def _merge(*verdicts: Verdict) -> tuple[list[TrailEntry], list[str]]:
    trail: dict[str, TrailEntry] = {}
    reasons: list[str] = []
    for v in verdicts:
        for e in v.trail:
            old = trail.get(e.rule)
            if old is None or (e.holds is False and old.holds is not False):
                trail[e.rule] = e
        reasons += [r for r in v.reasons if r not in reasons]
    order = list(RULES)
    return sorted(trail.values(), key=lambda e: order.index(e.rule)), reasons


def classify(inst: SymbolicInstance, mode: str, cap: int = DEFAULT_CAP) -> Classification:
    """Run every applicable rule and decide as much as the inputs allow."""
    _check_mode(mode)
    guard = free_product_guard(inst)
    first = check_necessary_conditions(inst, mode)
    second, part = check_partition_conditions(inst, mode, cap)
    trail, reasons = _merge(guard, first, second)
    if any(e.holds is False for e in trail):
        return Classification(Verdict(DOES_NOT_ADMIT, trail), part, None)
    restricted = None if reasons else classify_restricted(inst, mode, cap=cap)
    if reasons:
        return Classification(Verdict(UNDETERMINED, trail, reasons), part, None)
    if all(profile(s).countable for _, s in inst.factors):
        return Classification(classify_countable_factors(inst, mode), part, restricted)
    if not part.A5 and not part.A6:
        whole = classify_restricted(inst, mode, query_b=inst.ids, cap=cap)
        v = Verdict(whole.outcome, whole.trail, whole.reasons, whole.non_archimedean, whole.notes, "G")
        return Classification(v, part, restricted)
    v = Verdict(UNDETERMINED, trail,
                ["A5 + A6 is a non-empty finite exceptional set; see the restricted verdict"])
    return Classification(v, part, restricted)


__all__ = [
    "ADMITS", "ADMITS_NA", "AbelianFactor", "BlockSums", "Classification", "ClassifierError",
    "ConcreteFactor", "DOES_NOT_ADMIT", "FactorSpec", "MODES", "NonAbelianFactor", "PASSES",
    "PartitionA", "Profile", "SymbolicInstance", "TrailEntry", "UNDETERMINED", "Verdict",
    "block_sums", "check_necessary_conditions", "check_partition_conditions", "classify_restricted", "classify",
    "classify_abelian_sum", "classify_countable_factors", "compute_partition",
    "free_product_guard", "gap_report", "profile",
]
