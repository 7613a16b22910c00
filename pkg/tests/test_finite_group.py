from __future__ import annotations

import numpy as np
import pytest

from src.core.errors import ClosureTooLarge, NotInvertible
from src.curves.genus2 import AutGroupId, catalog
from src.groups.finite_group import (
    build_from_generators,
    check_group_axioms,
    cycle_label,
    matrix_mod3,
    parse_cycles,
)


def test_ten_cycle_closes_to_order_10() -> None:
    g = build_from_generators([parse_cycles("(1 2 3 4 5 6 7 8 9 10)", 10)], "C10")
    assert g.order == 10
    assert sorted(g.element_orders) == [1, 2, 5, 5, 5, 5, 10, 10, 10, 10]


def test_gl2_generators_close_to_order_48() -> None:
    g = build_from_generators([[1, 1, 0, 1], [0, 1, 1, 0]], "GL2(F3)")
    assert g.order == 48
    assert g.element_labels[0] == "[[1,0],[0,1]]"
    assert "[[2,0],[0,2]]" in g.element_labels


def test_hexagon_and_reflection_give_order_12() -> None:
    gens = [parse_cycles("(1 2 3 4 5 6)", 6), parse_cycles("(1 6)(2 5)(3 4)", 6)]
    g = build_from_generators(gens, "D6")
    assert g.order == 12
    assert g.element_orders.count(2) == 7


def test_identity_is_element_zero() -> None:
    for _, group in catalog():
        assert group.identity == 0
        assert group.element_orders[0] == 1
        assert np.array_equal(group.cayley[0], np.arange(group.order))


@pytest.mark.parametrize("gid", list(AutGroupId))
def test_catalog_groups_satisfy_axioms(gid) -> None:
    group = dict(catalog())[gid]
    assert check_group_axioms(group) == []
    for x in range(group.order):
        assert group.mul(x, group.inverse[x]) == group.identity


def test_broken_table_is_reported() -> None:
    group = dict(catalog())[AutGroupId.D6_12]
    table = group.cayley.copy()
    table[1, 2], table[1, 3] = table[1, 3], table[1, 2]
    broken = type(group)(group.name, group.order, table, group.inverse, 0, group.element_labels)
    assert "latin-square" in check_group_axioms(broken)


def test_construction_is_deterministic() -> None:
    gens = [[1, 1, 0, 1], [0, 1, 1, 0]]
    a = build_from_generators(gens, "a")
    b = build_from_generators(list(reversed(gens)), "b")
    assert np.array_equal(a.cayley, b.cayley)
    assert a.element_labels == b.element_labels


def test_singular_matrix_is_rejected() -> None:
    with pytest.raises(NotInvertible):
        matrix_mod3([1, 2, 2, 1])
    with pytest.raises(NotInvertible):
        build_from_generators([[1, 1, 1, 1]], "singular")


def test_closure_cap() -> None:
    with pytest.raises(ClosureTooLarge):
        build_from_generators([[1, 1, 0, 1], [0, 1, 1, 0]], "GL2(F3)", cap=20)


def test_cycle_notation() -> None:
    p = parse_cycles("(1 2 3)(4 5)", 6)
    assert p.size == 6
    assert cycle_label(p) == "(1 2 3)(4 5)"
    assert cycle_label(parse_cycles("()", 3)) == "()"
    with pytest.raises(ValueError):
        parse_cycles("1 2 3", 3)
