from __future__ import annotations

import pytest

from src.core.errors import InconsistentLedger, NoPath
from src.curves.genus2 import AutGroupId
from src.curves.picard import (
    ANCHOR,
    Anchor,
    Certainty,
    DiffIsClass,
    EqualVia,
    KnownMultiple,
    PicardLedger,
    Unknown,
    anchor_component,
    build_ledger,
    collect_relations,
    difference,
    ell,
    relation_counts,
    unresolved_same_order_pairs,
    zigzag_certificate,
)
from src.groups.subgroups import center

from .conftest import TABLE_GROUPS, by_label


def _node(ctx, subgroup) -> int:
    return ctx.p1_index(subgroup)


def _labels_on_path(ctx, steps) -> tuple[list[str], list[str]]:
    """(mediating subgroup labels, intermediate node labels)"""
    labels = ctx.lattice.labels
    label = lambda node: labels[ctx.subgroup_index(ctx.p1_subgroups[node])]
    mediators = [label(s.relation.l) for s in steps]
    inner = [label(s.target) for s in steps[:-1]]
    return mediators, inner


def test_relation_examples_in_d6(d6) -> None:
    relations = set(collect_relations(d6))
    s3_right = by_label(d6, "S3")[1]
    c6 = by_label(d6, "C6")[0]
    c3 = by_label(d6, "C3")[0]
    pair = sorted([_node(d6, s3_right), _node(d6, c6)])
    assert EqualVia(pair[0], pair[1], _node(d6, c3)) in relations

    sigma = _node(d6, d6.sigma_subgroup)
    for klein in by_label(d6, "C2^2"):
        assert DiffIsClass(_node(d6, c6), _node(d6, klein), sigma) in relations


@pytest.mark.parametrize("gid", list(AutGroupId))
def test_relation_invariants(contexts, gid) -> None:
    ctx = contexts[gid]
    p1 = ctx.p1_subgroups
    relations = collect_relations(ctx)
    assert relations[0] == Anchor(_node(ctx, ctx.sigma_subgroup))
    assert len(set(relations)) == len(relations)
    assert relations == collect_relations(ctx)
    for rel in relations[1:]:
        h, n, l = p1[rel.h], p1[rel.n], p1[rel.l]
        assert l.is_subgroup_of(h) and l.is_subgroup_of(n)
        assert rel.h != rel.n
        if isinstance(rel, EqualVia):
            assert h.order == n.order
        else:
            assert h.order - n.order == l.order


def test_gl2_c8_and_c6_differ_by_k(gl2, ledgers) -> None:
    ledger = ledgers[AutGroupId.GL2F3_48]
    for c8 in by_label(gl2, "C8"):
        for c6 in by_label(gl2, "C6"):
            assert difference(ledger, c8, c6) == KnownMultiple(1)
            assert ledger.connected(_node(gl2, c8), ANCHOR)


def test_c10_c5_outside_anchor_component(contexts, ledgers) -> None:
    ctx = contexts[AutGroupId.C10]
    ledger = ledgers[AutGroupId.C10]
    c5 = ctx.p1_of_order(5)[0]
    c10 = ctx.p1_of_order(10)[0]
    assert not ledger.connected(_node(ctx, c5), ANCHOR)
    assert not ledger.connected(_node(ctx, c10), ANCHOR)
    assert difference(ledger, c10, c5) == Unknown()
    assert ledger.pending


def test_d6_order_six_classes_are_equal(d6, ledgers) -> None:
    ledger = ledgers[AutGroupId.D6_12]
    six = d6.p1_of_order(6)
    assert len(six) == 3
    for h in six:
        for n in six:
            assert difference(ledger, h, n) == KnownMultiple(0)


def test_difference_basics(gl2, ledgers) -> None:
    ledger = ledgers[AutGroupId.GL2F3_48]
    for h in gl2.p1_subgroups:
        assert difference(ledger, h, h) == KnownMultiple(0)
    c8, s3 = by_label(gl2, "C8")[0], by_label(gl2, "S3")[0]
    assert difference(ledger, c8, s3) == KnownMultiple(1)
    assert difference(ledger, s3, c8) == KnownMultiple(-1)


def test_ell_worked_examples(d6, gl2, ledgers) -> None:
    gl2_ledger = ledgers[AutGroupId.GL2F3_48]
    result = ell(gl2_ledger, by_label(gl2, "C8")[0], by_label(gl2, "S3")[0])
    assert (result.value, result.certainty) == (2, Certainty.PROVED)

    d6_ledger = ledgers[AutGroupId.D6_12]
    c6 = by_label(d6, "C6")[0]
    assert ell(d6_ledger, c6, d6.sigma_subgroup).value == 3
    s3_left = by_label(d6, "S3")[0]
    for klein in by_label(d6, "C2^2"):
        assert ell(d6_ledger, s3_left, klein).value == 2

    for h in d6.p1_subgroups:
        assert ell(d6_ledger, h, h).value == 1
        assert ell(d6_ledger, h, h).certificate == ()


def test_ell_degree_cases(gl2, ledgers) -> None:
    ledger = ledgers[AutGroupId.GL2F3_48]
    whole = gl2.p1_of_order(48)[0]
    six = gl2.p1_of_order(6)[0]
    assert ell(ledger, six, whole).value == 0
    assert ell(ledger, six, whole).certainty == Certainty.PROVED
    far = ell(ledger, whole, six)
    assert (far.value, far.certainty, far.certificate) == (41, Certainty.PROVED, ())


def test_unrelated_equal_degree_is_assumed_distinct(gl2, ledgers) -> None:
    ledger = ledgers[AutGroupId.GL2F3_48]
    pairs = unresolved_same_order_pairs(ledger, 3)
    assert pairs
    i, j = pairs[0]
    assert gl2.p1_subgroups[i].order == 3
    result = ell(ledger, i, j)
    assert (result.value, result.certainty) == (0, Certainty.ASSUMED_DISTINCT)
    with pytest.raises(NoPath):
        zigzag_certificate(ledger, i, j)


def test_right_s3_equals_c6_in_one_step(d6, ledgers) -> None:
    ledger = ledgers[AutGroupId.D6_12]
    c6 = by_label(d6, "C6")[0]
    for s3 in by_label(d6, "S3"):
        steps = zigzag_certificate(ledger, s3, c6)
        assert len(steps) == 1
        assert isinstance(steps[0].relation, EqualVia)
        assert d6.lattice.labels[d6.subgroup_index(d6.p1_subgroups[steps[0].relation.l])] == "C3"
        assert steps[0].multiple == 0


def test_left_s3_to_klein_certificate(d6, ledgers) -> None:
    ledger = ledgers[AutGroupId.D6_12]
    s3 = by_label(d6, "S3")[0]
    klein = by_label(d6, "C2^2")[0]
    result = ell(ledger, s3, klein)
    assert (result.value, result.certainty) == (2, Certainty.PROVED)
    steps = result.certificate
    assert [type(s.relation) for s in steps] == [EqualVia, DiffIsClass]
    mediators, inner = _labels_on_path(d6, steps)
    assert mediators == ["C3", "C2"]
    assert inner == ["C6"]
    assert steps[1].relation.l == _node(d6, d6.sigma_subgroup)
    assert sum(s.multiple for s in steps) == 1


def test_gl2_c8_to_s3_certificate(gl2, ledgers) -> None:
    ledger = ledgers[AutGroupId.GL2F3_48]
    c8 = by_label(gl2, "C8")[0]
    s3 = by_label(gl2, "S3")[0]
    steps = ell(ledger, c8, s3).certificate
    assert [type(s.relation) for s in steps] == [DiffIsClass, EqualVia]
    mediators, inner = _labels_on_path(gl2, steps)
    assert mediators == ["C2", "C3"]
    assert inner == ["C6"]
    z = center(gl2.group)
    assert gl2.p1_subgroups[steps[0].relation.l] == z
    assert [s.multiple for s in steps] == [1, 0]


def test_certificate_of_identical_classes_is_empty(gl2, ledgers) -> None:
    ledger = ledgers[AutGroupId.GL2F3_48]
    assert zigzag_certificate(ledger, gl2.p1_subgroups[5], gl2.p1_subgroups[5]) == ()


@pytest.mark.parametrize("gid", list(AutGroupId))
def test_degree_consistency(contexts, ledgers, gid) -> None:
    ledger = ledgers[gid]
    ledger.check_degree_consistency()
    for x in ledger.nodes:
        for y in ledger.nodes:
            if ledger.connected(x, y):
                assert ledger.degree(x) - ledger.degree(y) == 2 * (ledger.potential(x) - ledger.potential(y))


@pytest.mark.parametrize("gid", list(AutGroupId))
def test_anchor_holds_sigma_at_k(contexts, ledgers, gid) -> None:
    ctx, ledger = contexts[gid], ledgers[gid]
    sigma = _node(ctx, ctx.sigma_subgroup)
    assert ledger.absolute(ANCHOR) == 1
    assert ledger.absolute(sigma) == 1


@pytest.mark.parametrize("gid", [g for g in TABLE_GROUPS if g != AutGroupId.C10])
def test_very_ample_classes_reach_anchor(contexts, ledgers, gid) -> None:
    ctx, ledger = contexts[gid], ledgers[gid]
    component = set(anchor_component(ledger))
    for i, s in enumerate(ctx.p1_subgroups):
        if s.order >= 5:
            assert i in component
            assert ledger.absolute(i) * 2 == s.order


@pytest.mark.parametrize("gid", list(AutGroupId))
def test_same_order_classes_are_equal(ledgers, gid) -> None:
    assert unresolved_same_order_pairs(ledgers[gid], 4) == []


def test_relation_kinds_are_counted(ledgers) -> None:
    counts = relation_counts(ledgers[AutGroupId.GL2F3_48])
    assert counts["Anchor"] == {"fired": 1, "merged": 1}
    assert counts["EqualVia"]["merged"] > 0
    assert counts["DiffIsClass[L=<sigma>]"]["merged"] > 0
    assert all(c["fired"] >= c["merged"] for c in counts.values())


def test_ledger_is_frozen(ledgers) -> None:
    ledger = ledgers[AutGroupId.D6_12]
    assert ledger.frozen
    with pytest.raises(RuntimeError):
        ledger.union(0, 1, 0, Anchor(0), "Anchor")


def test_degree_mismatch_is_inconsistent(d6) -> None:
    ledger = PicardLedger(d6)
    six, twelve = d6.p1_of_order(6)[0], d6.p1_of_order(12)[0]
    with pytest.raises(InconsistentLedger):
        ledger.union(_node(d6, twelve), _node(d6, six), 1, Anchor(0), "test")


def test_redundant_relation_is_not_a_merge(d6) -> None:
    ledger = PicardLedger(d6)
    sigma = _node(d6, d6.sigma_subgroup)
    four = _node(d6, d6.p1_of_order(4)[0])
    assert ledger.union(sigma, ANCHOR, 0, Anchor(sigma), "Anchor")
    assert ledger.union(four, sigma, 1, Anchor(sigma), "test")
    assert not ledger.union(four, ANCHOR, 1, Anchor(sigma), "test")
    assert ledger.absolute(four) == 2
    assert ledger.fired["test"] == 2
    assert ledger.merged["test"] == 1
    assert [(m.x, m.y, m.multiple) for m in ledger.merges] == [(sigma, ANCHOR, 0), (four, sigma, 1)]


def test_odd_degree_gap_is_undecided(contexts, ledgers) -> None:
    ctx = contexts[AutGroupId.C3sdD4_24]
    four, three = ctx.p1_of_order(4)[0], ctx.p1_of_order(3)[0]
    result = ell(ledgers[AutGroupId.C3sdD4_24], four, three)
    assert (result.value, result.certainty, result.certificate) == (0, Certainty.UNDECIDED, ())


def test_gap_two_without_relation_is_assumed_distinct(d6) -> None:
    sigma = _node(d6, d6.sigma_subgroup)
    ledger = build_ledger(d6, [Anchor(sigma)])
    four = d6.p1_of_order(4)[0]
    assert difference(ledger, four, d6.sigma_subgroup) == Unknown()
    result = ell(ledger, four, d6.sigma_subgroup)
    assert (result.value, result.certainty, result.certificate) == (1, Certainty.ASSUMED_DISTINCT, ())
