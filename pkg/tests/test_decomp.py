from __future__ import annotations

import pytest

from src.core.errors import NonUniform, NoSuchSubgroup, NotVeryAmple
from src.curves.decomp import (
    certainty_audit,
    decompose,
    decompose_by_order,
    decompose_table,
    verify_theorem1,
    verify_theorem2,
)
from src.curves.genus2 import AutGroupId, very_ample
from src.curves.picard import Anchor, Certainty, EqualVia, build_ledger, collect_relations

from .conftest import TABLE_GROUPS, by_label

EXPECTED = {
    AutGroupId.D4_8: {
        8: {0: 1, 2: 3, 4: 1},
    },
    AutGroupId.C10: {
        5: {-1: 1, 0: 1, 1: 1},
        10: {0: 1, 3: 1, 6: 1},
    },
    AutGroupId.D6_12: {
        6: {-1: 1, 0: 3, 1: 4, 2: 1},
        12: {0: 1, 4: 3, 6: 3, 7: 1, 8: 1},
    },
    AutGroupId.C3sdD4_24: {
        6: {-1: 7, 0: 5, 1: 8, 2: 1},
        8: {-1: 4, 0: 3, 1: 5, 2: 7, 3: 1, 4: 1},
        12: {-1: 1, 0: 3, 2: 3, 4: 5, 6: 7, 7: 1, 8: 1},
        24: {0: 1, 10: 3, 14: 3, 16: 5, 18: 7, 19: 1, 20: 1},
    },
    AutGroupId.GL2F3_48: {
        6: {-1: 16, 0: 12, 1: 13, 2: 1},
        8: {-1: 9, 0: 7, 1: 12, 2: 9, 3: 4, 4: 1},
        12: {-1: 5, 0: 4, 2: 7, 4: 12, 6: 9, 7: 4, 8: 1},
        16: {-1: 2, 0: 3, 2: 4, 6: 7, 8: 12, 10: 9, 11: 4, 12: 1},
        24: {-1: 1, 0: 1, 6: 3, 10: 4, 14: 7, 16: 12, 18: 9, 19: 4, 20: 1},
        48: {0: 1, 22: 1, 30: 3, 34: 4, 38: 7, 40: 12, 42: 9, 43: 4, 44: 1},
    },
}

ROW_SUMS = {AutGroupId.D4_8: 5, AutGroupId.C10: 3, AutGroupId.D6_12: 9,
            AutGroupId.C3sdD4_24: 21, AutGroupId.GL2F3_48: 42}


@pytest.mark.parametrize("gid, order, histogram", [
    (gid, order, histogram) for gid, rows in EXPECTED.items() for order, histogram in rows.items()
])
def test_histograms(contexts, ledgers, gid, order, histogram) -> None:
    report = decompose_by_order(contexts[gid], ledgers[gid], order)
    assert report.histogram == histogram
    assert report.order == order


@pytest.mark.parametrize("gid", TABLE_GROUPS)
def test_table_rows(contexts, ledgers, gid) -> None:
    table = decompose_table(contexts[gid], ledgers[gid])
    assert table.histograms == EXPECTED[gid]


@pytest.mark.parametrize("gid", TABLE_GROUPS)
def test_every_subgroup_of_an_order_agrees(contexts, ledgers, gid) -> None:
    ctx, ledger = contexts[gid], ledgers[gid]
    for order, histogram in EXPECTED[gid].items():
        hs = ctx.p1_of_order(order)
        assert [decompose(ctx, ledger, h).histogram for h in hs] == [histogram] * len(hs)


def test_gl2_order_six_covers_both_s3_classes(gl2, ledgers) -> None:
    hs = gl2.p1_of_order(6)
    assert len(hs) == 12
    labels = sorted(gl2.lattice.labels[gl2.subgroup_index(h)] for h in hs)
    assert labels == ["C6"] * 4 + ["S3"] * 8


@pytest.mark.parametrize("gid", TABLE_GROUPS)
def test_row_sums_and_degree_rule(contexts, ledgers, gid) -> None:
    ctx, ledger = contexts[gid], ledgers[gid]
    for h in ctx.p1_subgroups:
        if not very_ample(ctx, h):
            continue
        report = decompose(ctx, ledger, h)
        assert sum(report.histogram.values()) == ROW_SUMS[gid]
        assert report.histogram[0] >= 1
        for c in report.components:
            assert c.dimension >= -1
            if h.order - c.order > 2:
                assert c.dimension == h.order - c.order - 2


def test_report_descriptor(gl2, ledgers) -> None:
    h = gl2.p1_of_order(16)[1]
    report = decompose(gl2, ledgers[AutGroupId.GL2F3_48], h)
    assert report.group == AutGroupId.GL2F3_48
    assert (report.h_label, report.h_index) == ("SD16", 1)
    assert len(report.components) == 42
    zero = [c for c in report.components if c.dimension == 0]
    assert [c.label for c in zero] == ["SD16"] * 3
    assert all(c.certainty == Certainty.PROVED for c in report.components)


def test_small_orders_are_not_very_ample(contexts, ledgers) -> None:
    ctx, ledger = contexts[AutGroupId.D4_8], ledgers[AutGroupId.D4_8]
    with pytest.raises(NotVeryAmple):
        decompose_by_order(ctx, ledger, 4)
    with pytest.raises(NotVeryAmple):
        decompose(ctx, ledger, ctx.p1_of_order(4)[0])
    with pytest.raises(NoSuchSubgroup):
        decompose_by_order(ctx, ledger, 7)


@pytest.mark.parametrize("gid", [AutGroupId.C2, AutGroupId.C2xC2])
def test_empty_decompositions(contexts, ledgers, gid) -> None:
    table = decompose_table(contexts[gid], ledgers[gid])
    assert table.empty
    assert table.rows == ()


@pytest.mark.parametrize("gid", [AutGroupId.D4_8, AutGroupId.D6_12, AutGroupId.C3sdD4_24, AutGroupId.GL2F3_48])
def test_theorem_part_one(contexts, ledgers, gid) -> None:
    audit = verify_theorem1(contexts[gid], ledgers[gid])
    assert not audit.skipped
    assert audit.passed, audit.failures
    assert audit.checked > 0


def test_theorem_part_one_skips_c10(contexts, ledgers) -> None:
    audit = verify_theorem1(contexts[AutGroupId.C10], ledgers[AutGroupId.C10])
    assert audit.skipped
    assert "C10" in audit.note
    assert audit.checked == 0


def test_theorem_part_one_multiple_example(gl2, ledgers) -> None:
    from src.curves.picard import KnownMultiple, difference

    sd16 = gl2.p1_of_order(16)[0]
    c6 = gl2.p1_of_order(6)[0]
    assert difference(ledgers[AutGroupId.GL2F3_48], sd16, c6) == KnownMultiple(5)


@pytest.mark.parametrize("gid", list(AutGroupId))
def test_theorem_part_two(contexts, ledgers, gid) -> None:
    ctx, ledger = contexts[gid], ledgers[gid]
    for h in ctx.p1_subgroups:
        if very_ample(ctx, h):
            audit = verify_theorem2(ctx, ledger, h)
            assert audit.passed, audit.failures


@pytest.mark.parametrize("gid, order, d0", [
    (AutGroupId.GL2F3_48, 6, 12),
    (AutGroupId.C3sdD4_24, 8, 3),
    (AutGroupId.D4_8, 8, 1),
])
def test_zero_dimensional_components(contexts, ledgers, gid, order, d0) -> None:
    report = decompose_by_order(contexts[gid], ledgers[gid], order)
    assert report.histogram[0] == d0


@pytest.mark.parametrize("gid", list(AutGroupId))
def test_all_dimensions_proved(contexts, ledgers, gid) -> None:
    assert certainty_audit(contexts[gid], ledgers[gid]) == []


def test_partial_ledger_is_non_uniform(d6) -> None:
    sigma = d6.p1_index(d6.sigma_subgroup)
    c6 = d6.p1_index(by_label(d6, "C6")[0])
    link = next(r for r in collect_relations(d6) if isinstance(r, EqualVia) and c6 in (r.h, r.n))
    ledger = build_ledger(d6, [Anchor(sigma), link])
    with pytest.raises(NonUniform):
        decompose_by_order(d6, ledger, 6)
