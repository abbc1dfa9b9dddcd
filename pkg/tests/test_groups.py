import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from graphprod.groups import (
    DirectSum, FiniteTable, GroupError, IntCyclic, ModCyclic, abelian_table, cyclic_table,
    group_verify, symmetric_group_table,
)


def s3():
    table, names = symmetric_group_table(3)
    return FiniteTable(table, names)


def test_cyclic_table_is_a_group():
    assert group_verify(cyclic_table(6))


@pytest.mark.parametrize("table,reason", [
    ([[0, 1], [1, 1]], None),           # row 1 is not a permutation
    ([[1, 0], [0, 1]], None),           # 0 is not the identity
    ([[0, 1, 2], [1, 0, 2], [2, 2, 0]], None),
])
def test_non_groups_rejected(table, reason):
    res = group_verify(table)
    assert not res
    assert res.reason


def test_non_associative_latin_square():
    # a loop of order 5 that is not a group
    t = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    res = group_verify(t)
    assert not res and res.reason == "associativity fails"


def test_finite_table_rejects_bad_input():
    with pytest.raises(GroupError):
        FiniteTable([[0, 1], [1, 1]])
    with pytest.raises(GroupError):
        FiniteTable(cyclic_table(2), ["e", "e"])


def test_s3_basics():
    g = s3()
    assert g.order == 6 and not g.is_abelian
    assert sorted(g.element_order(x) for x in g.elements()) == [1, 2, 2, 2, 3, 3]
    assert g.center() == [0]


def test_abelian_table_order():
    g = FiniteTable(abelian_table([2, 4]))
    assert g.order == 8 and g.is_abelian
    assert max(g.element_order(x) for x in g.elements()) == 4


def test_int_cyclic():
    z = IntCyclic()
    assert z.order is None
    assert z.mul(3, -5) == -2 and z.inv(4) == -4 and z.power(3, 4) == 12
    assert z.element_order(0) == 1 and z.element_order(2) is None
    assert z.parse_element("-7") == -7 and z.format_element(5) == "5"
    with pytest.raises(GroupError):
        z.parse_element("x")


def test_mod_cyclic():
    g = ModCyclic(4)
    assert g.elements() == [0, 1, 2, 3]
    assert g.mul(3, 3) == 2 and g.inv(1) == 3
    assert g.parse_element("5") == 1
    assert g.element_order(2) == 2


def test_direct_sum_mixed():
    g = DirectSum([ModCyclic(2), IntCyclic()])
    assert g.order is None and g.is_abelian
    x = g.parse_element("1,3")
    assert g.mul(x, x) == (0, 6)
    assert g.element_order(g.parse_element("1,0")) == 2
    assert g.element_order(x) is None
    assert g.format_element(x) == "1,3"


def test_direct_sum_finite_order():
    g = DirectSum([ModCyclic(2), ModCyclic(3)])
    assert g.order == 6 and len(g.elements()) == 6
    assert g.element_order((1, 1)) == 6


def test_nested_sum_rejected():
    with pytest.raises(GroupError):
        DirectSum([DirectSum([ModCyclic(2)])])


def test_describe_forms():
    assert IntCyclic().describe() == "Z"
    assert ModCyclic(5).describe() == "Zmod 5"
    assert DirectSum([IntCyclic(), ModCyclic(2)]).describe() == "sum Z, Zmod 2"
    assert FiniteTable(cyclic_table(2)).describe() == "table | 0 1 | 1 0"


@given(st.lists(st.integers(2, 5), min_size=1, max_size=3))
def test_abelian_tables_verify_and_commute(invariants):
    tab = abelian_table(invariants)
    assert group_verify(tab)
    arr = np.array(tab)
    assert (arr == arr.T).all()
    assert len(tab) == int(np.prod(invariants))


@given(st.integers(2, 30), st.integers(-40, 40), st.integers(-40, 40))
def test_mod_cyclic_matches_integers(n, a, b):
    g = ModCyclic(n)
    assert g.mul(a % n, b % n) == (a + b) % n
    assert g.power(a % n, 5) == (5 * a) % n


def test_s3_table_matches_permutation_composition():
    table, names = symmetric_group_table(3)
    perms = list(itertools.permutations(range(3)))
    assert len(table) == len(perms) == 6
    assert group_verify(table)
