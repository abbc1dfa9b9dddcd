"""The eight acceptance criteria, each at its stated tolerance and time budget."""
import random
import time
from itertools import product
from pathlib import Path

import pytest

from brute import abelian_types, divisible_elements, order_profile, profile_of_invariants, torsion_elements
from conftest import PRESENTATIONS
from graphprod import oracle
from graphprod.abelian import INF, AbelianDescriptor, CountablePart, cyc, descriptor_of, div_part, pruefer, tor_n
from graphprod.cardinals import ALEPH0, CONTINUUM, mid
from graphprod.classifier import (
    ADMITS, DOES_NOT_ADMIT, classify, classify_abelian_sum, classify_restricted, compute_partition,
)
from graphprod.equations import (
    FreeProductInstance, SandwichSpec, build_sandwich_words, default_omega, descending_length_step,
    element_ball, finite_order_csp, four_vertex_presentation, no_qth_root, omega_prefix_search,
    planted_target, random_ab_word, trichotomy_sweep,
)
from graphprod.fileformat import load
from graphprod.graph import Graph
from graphprod.groups import FiniteTable, IntCyclic, ModCyclic, abelian_table
from graphprod.words import (
    Presentation, Syllable, csp, is_ab_cyclically_reduced, multiply, power, reduce,
)

INSTANCES = Path(__file__).resolve().parent.parent / "instances"
SEED = 20240101


@pytest.mark.criterion(1, "confluence of random maximal move sequences")
def test_confluence(record_property):
    start = time.perf_counter()
    rng = random.Random(SEED)
    words = failures = runs = 0
    for p in PRESENTATIONS.values():
        assert len(p.vertices) <= 6
        for _ in range(2000):
            w = oracle.random_word(p, rng, 12)
            nf = reduce(p, w)
            words += 1
            for _ in range(10):
                final, _ = oracle.random_maximal_sequence(p, w, rng)
                runs += 1
                failures += len(final) != len(nf) or reduce(p, final) != nf
    elapsed = time.perf_counter() - start
    record_property("words", words)
    record_property("failures", failures)
    record_property("seconds", f"{elapsed:.1f}")
    assert len(PRESENTATIONS) >= 5 and words >= 10 ** 4 and runs == 10 * words
    assert failures == 0 and elapsed < 60


@pytest.mark.criterion(2, "closure oracle equals canonical-form equality")
def test_oracle_equivalence(record_property):
    start = time.perf_counter()
    p = PRESENTATIONS["path-z2z3z2"]
    assert len(p.graph.edges) == 1 and [p.factors[v].order for v in p.vertices] == [2, 3, 2]
    to_nf, to_key, n, empty_mismatch = {}, {}, 0, 0
    for w in oracle.all_words(p, 5):
        n += 1
        key, nf = oracle.closure_key(p, w), tuple(reduce(p, w))
        assert to_nf.setdefault(key, nf) == nf
        assert to_key.setdefault(nf, key) == key
        empty_mismatch += oracle.is_empty_reachable(p, w) != (nf == ())
    elapsed = time.perf_counter() - start
    record_property("words", n)
    record_property("classes", len(to_nf))
    record_property("seconds", f"{elapsed:.1f}")
    assert empty_mismatch == 0 and elapsed < 300


def _alternating(rng, letters, max_pairs):
    out = []
    for _ in range(rng.randint(1, max_pairs)):
        for v in ("a", "b"):
            out.append(Syllable(v, rng.choice(letters[v])))
    return out


@pytest.mark.criterion(3, "exact length of sandwiched powers")
def test_sandwiched_power_length(record_property):
    p = Presentation(Graph(("a", "b")), {"a": IntCyclic(), "b": ModCyclic(5)})
    letters = {"a": [-4, -3, -2, -1, 1, 2, 3, 4], "b": [1, 2, 3, 4]}
    rng = random.Random(SEED)
    bad = 0
    for _ in range(1000):
        g1, u, g2 = (_alternating(rng, letters, 3) for _ in range(3))
        k = rng.choice([2, 3, 5])
        w = multiply(p, g1, power(p, u, k), g2)
        ok = (len(w) == len(g1) + k * len(u) + len(g2)
              and list(w) == g1 + u * k + g2
              and len(w) > len(multiply(p, g1, u, g2)) > len(u)
              and is_ab_cyclically_reduced(p, w, "a", "b"))
        bad += not ok
    record_property("cases", 1000)
    record_property("failures", bad)
    assert bad == 0


@pytest.mark.criterion(4, "exhaustive sandwich trichotomy at the default exponent")
def test_trichotomy_exhaustive(record_property):
    start = time.perf_counter()
    inst = FreeProductInstance()
    spec = SandwichSpec(2, 1, ((1, 2), (3, 4)))
    assert spec.p == 172 and not spec.weakened
    rep = trichotomy_sweep(inst, spec, [v for a in range(1, 7) for v in (a, -a)], 6)
    elapsed = time.perf_counter() - start
    record_property("examined", rep.examined)
    record_property("violations", len(rep.violations))
    record_property("seconds", f"{elapsed:.1f}")
    assert rep.examined == 1 + sum(2 * 12 ** n for n in range(1, 7))
    assert rep.violations == [] and elapsed < 600


@pytest.mark.criterion(5, "descending-length law and omega search controls")
def test_omega_system(record_property):
    inst = FreeProductInstance()
    depth = 3
    sys_ = default_omega(depth)
    assert [s.k_star for s in sys_.levels] == [2, 4, 6] and sys_.violations(inst) == []
    rng = random.Random(SEED)
    elements = [v for a in range(1, 7) for v in (a, -a)]
    failures = 0
    for i in range(1000):
        t = random_ab_word(inst, rng, 8, elements)
        assert is_ab_cyclically_reduced(inst, t, inst.h2, inst.h1)
        level = sys_.levels[i % depth]
        ab, before, after = descending_length_step(inst, level, t, build_sandwich_words(inst, level))
        failures += not (ab and after > before)

    res = omega_prefix_search(inst, sys_, depth, 4)
    planted = []
    for text in ("h2:3 h1:-1", "h2:14 h1:1", "h2:-2 h1:1 h2:5 h1:-1", "h2:2 h1:1 h2:-5 h1:1"):
        target = planted_target(inst, sys_, depth, inst.word(text), materialize=False)
        found = omega_prefix_search(inst, sys_, depth, 4, target=target)
        planted.append(found.found and found.route_disagreements == 0)
    small = default_omega(2, p=3)
    target = planted_target(inst, small, 2, inst.word("h2:4 h1:-1 h2:2 h1:1"))
    planted.append(omega_prefix_search(inst, small, 2, 4, target=target).found)

    record_property("step failures", failures)
    record_property("search", res.status)
    record_property("law violations", res.law_violations)
    record_property("planted found", f"{sum(planted)}/{len(planted)}")
    assert failures == 0
    assert res.status == "none" and res.law_violations == 0 and res.route_disagreements == 0
    assert all(planted)


@pytest.mark.criterion(6, "classifier verdicts on the worked symbolic instances")
def test_classifier_cases(record_property):
    lam = mid("lambda")
    exc = load(str(INSTANCES / "exceptional_center.gp")).instance()
    part = compute_partition(exc)
    assert part.A5 == ("v0",) and part.A9 == ("C",)
    assert part.A0 == part.A6 == part.A7 == part.A8 == ()
    v = classify_restricted(exc, "not-ch")
    assert v.outcome == DOES_NOT_ADMIT and v.cited == ("restricted-sums",)
    assert "Z2=mid lambda" in v.failing[0].detail
    assert classify(exc, "not-ch").restricted.cited == ("restricted-sums",)

    # one block type: lambda copies fail, adding continuum copies repairs it
    for s in (INF, cyc(2)):
        alone = classify_abelian_sum(AbelianDescriptor.of([(s, lam)]), "not-ch")
        both = classify_abelian_sum(AbelianDescriptor.of([(s, lam), (s, CONTINUUM)]), "not-ch")
        assert (alone.outcome, alone.cited) == (DOES_NOT_ADMIT, ("cardinal-gap",))
        assert (both.outcome, both.cited) == (ADMITS, ("pruefer-uncountable", "cardinal-gap", "abelian-sum-shape"))

    # two block types split across two halves
    blocks = load(str(INSTANCES / "block_classes.gp")).instance()
    whole = classify_restricted(blocks, "not-ch", query_b=["X1", "Y1", "X2", "Y2"])
    assert whole.outcome == ADMITS and whole.cited[-1] == "restricted-sums"
    for half in (["X1", "Y1"], ["X2", "Y2"]):
        r = classify_restricted(blocks, "not-ch", query_b=half)
        assert (r.outcome, r.cited) == (DOES_NOT_ADMIT, ("restricted-sums",))
    h1 = AbelianDescriptor.of([(INF, CONTINUUM), (cyc(2), lam)])
    h2 = AbelianDescriptor.of([(INF, lam), (cyc(2), CONTINUUM)])
    for h in (h1, h2):
        assert classify_abelian_sum(h, "not-ch").cited == ("cardinal-gap",)
    joined = AbelianDescriptor.of(list(h1.lambdas) + list(h2.lambdas))
    assert classify_abelian_sum(joined, "not-ch").outcome == ADMITS

    # sums of countable groups
    good = AbelianDescriptor.of([(INF, CONTINUUM), (cyc(2, 2), ALEPH0)], CountablePart("reduced", 4))
    v = classify_abelian_sum(good, "not-ch")
    assert (v.outcome, v.cited) == (ADMITS, ("pruefer-uncountable", "cardinal-gap", "abelian-sum-shape"))
    assert classify_abelian_sum(AbelianDescriptor.of([(cyc(2), lam)]), "not-ch").cited == ("cardinal-gap",)
    v = classify_abelian_sum(AbelianDescriptor.of([(pruefer(5), CONTINUUM)]), "not-ch")
    assert (v.outcome, v.cited) == (DOES_NOT_ADMIT, ("pruefer-uncountable",))
    record_property("cases", "exceptional center, block pairs, abelian sums")


@pytest.mark.criterion(7, "abelian descriptors against element-level brute force")
def test_abelian_brute_force(record_property):
    start = time.perf_counter()
    groups = checks = 0
    for order in range(1, 201):
        for inv in abelian_types(order):
            g = FiniteTable(abelian_table(inv))
            table = g.table
            d = descriptor_of(g)
            groups += 1
            for n in range(1, 13):
                got = _profile(tor_n(d, n))
                assert got == order_profile(table, torsion_elements(table, n)), (inv, n)
                checks += 1
            split = div_part(d)
            assert split.exact
            assert split.divisible.is_trivial == (len(divisible_elements(table)) == 1)
            assert _profile(split.reduced) == order_profile(table, range(len(table)))
            checks += 1
    elapsed = time.perf_counter() - start
    record_property("groups", groups)
    record_property("checks", checks)
    record_property("seconds", f"{elapsed:.1f}")
    assert elapsed < 120


def _profile(d):
    inv = []
    for s, c in d.lambdas:
        assert s.is_cyc and c.is_finite
        inv += [s.order] * c.n
    return profile_of_invariants(inv)


@pytest.mark.criterion(8, "four-vertex finite orders and q-th roots")
def test_four_vertex_lab(record_property):
    p4 = four_vertex_presentation()
    ball4 = element_ball(p4, 4)
    finite = 0
    for w in ball4:
        r = finite_order_csp(p4, w, 12)
        if r.order is not None:
            finite += 1
            assert r.complete, w
    ball6 = element_ball(p4, 6)
    complete_d = [d for d in ball4 if all(p4.graph.adjacent(a, b) for a in csp(p4, d) for b in csp(p4, d) if a != b)]
    syllables = [[("a1", 1)], [("a2", 1), ("a2", 2)], [("b1", 1)], [("b2", 1), ("b2", 2)]]
    ball8 = element_ball(p4, 8)
    genuine = planted = found = 0
    for g1, g2, h1, h2 in product(*syllables):
        for d in complete_d:
            res = no_qth_root(p4, d, 2, 3, g1, g2, h1, h2, 6, ball=ball6)
            assert res.no_root, (d, res.witness)
            genuine += 1
        base = [Syllable(*s) for s in (g1, g2, h1, h2)]
        for q, k, ball in ((2, 2, ball4), (3, 3, ball4), (2, 4, ball8)):
            res = no_qth_root(p4, (), q, k, g1, g2, h1, h2, len(ball[-1]), ball=ball, check_primes=False)
            planted += 1
            found += not res.no_root and power(p4, res.witness, q) == power(p4, base, k)
    record_property("finite-order elements", finite)
    record_property("genuine targets", genuine)
    record_property("planted found", f"{found}/{planted}")
    assert genuine > 0 and found == planted == 12
