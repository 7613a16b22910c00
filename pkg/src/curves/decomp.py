"""
Decomposition of the Galois-subspace locus for D_H into projective spaces.

Each P1 subgroup N contributes a component of dimension l(D_H - D_N) - 1
(-1 meaning the component is empty). Reports keep the per-N detail so the
correspondence between 0-dimensional components and subgroups of order |H|
is exhibited, not only counted.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from ..core.errors import NonUniform, NoSuchSubgroup, NotVeryAmple
from ..groups.subgroups import Subgroup
from .genus2 import AutGroupId, CurveContext, VERY_AMPLE_DEGREE, very_ample
from .picard import CertificateStep, Certainty, KnownMultiple, PicardLedger, difference, ell

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ComponentRecord:
    n: Subgroup
    n_index: int
    label: str
    dimension: int
    certainty: Certainty
    certificate: Tuple[CertificateStep, ...] = ()

    @property
    def order(self) -> int:
        return self.n.order


@dataclass(frozen=True)
class DecompositionReport:
    group: AutGroupId
    h: Subgroup
    h_index: int
    h_label: str
    components: Tuple[ComponentRecord, ...]
    histogram: Dict[int, int]

    @property
    def order(self) -> int:
        return self.h.order

    @property
    def empty(self) -> bool:
        return not self.components


@dataclass(frozen=True)
class DecompositionTable:
    """One representative report per very ample order of a group"""

    group: AutGroupId
    rows: Tuple[DecompositionReport, ...] = ()

    @property
    def empty(self) -> bool:
        return not self.rows

    def row(self, order: int) -> Optional[DecompositionReport]:
        return next((r for r in self.rows if r.order == order), None)

    @property
    def histograms(self) -> Dict[int, Dict[int, int]]:
        return {r.order: r.histogram for r in self.rows}


def histogram_of(components: Tuple[ComponentRecord, ...]) -> Dict[int, int]:
    counts = Counter(c.dimension for c in components)
    return dict(sorted(counts.items()))


def decompose(ctx: CurveContext, ledger: PicardLedger, h: Subgroup) -> DecompositionReport:
    """
    Components of the locus for D_H, one per P1 subgroup N.

    Raises:
        NotVeryAmple: if |H| < 5
        NoSuchSubgroup: if X/H is not P1
    """
    if not very_ample(ctx, h):
        raise NotVeryAmple(f"D_H has degree {h.order} < {VERY_AMPLE_DEGREE}")
    try:
        ctx.p1_index(h)
    except KeyError:
        raise NoSuchSubgroup(f"{h!r} does not have P1 quotient") from None

    labels = ctx.lattice.labels
    components = []
    for i, n in enumerate(ctx.p1_subgroups):
        space = ell(ledger, h, n)
        components.append(ComponentRecord(
            n=n,
            n_index=ctx.subgroup_index(n),
            label=labels[ctx.subgroup_index(n)],
            dimension=space.value - 1,
            certainty=space.certainty,
            certificate=space.certificate,
        ))
    components = tuple(components)

    same_order = ctx.p1_of_order(h.order)
    return DecompositionReport(
        group=ctx.id,
        h=h,
        h_index=same_order.index(h),
        h_label=labels[ctx.subgroup_index(h)],
        components=components,
        histogram=histogram_of(components),
    )


def decompose_by_order(ctx: CurveContext, ledger: PicardLedger, order: int) -> DecompositionReport:
    """
    Decompose for every H of the given order and check the histograms agree.

    Returns:
        The report of the first H of that order.

    Raises:
        NotVeryAmple: if order < 5
        NoSuchSubgroup: if no P1 subgroup has that order
        NonUniform: if two subgroups of that order give different histograms
    """
    if order < VERY_AMPLE_DEGREE:
        raise NotVeryAmple(f"D_H has degree {order} < {VERY_AMPLE_DEGREE}")
    hs = ctx.p1_of_order(order)
    if not hs:
        raise NoSuchSubgroup(f"{ctx.id.value} has no subgroup of order {order} with P1 quotient")

    reports = [decompose(ctx, ledger, h) for h in hs]
    first = reports[0]
    for other in reports[1:]:
        if other.histogram != first.histogram:
            raise NonUniform(
                f"{ctx.id.value}, |H|={order}: {first.histogram} (#{first.h_index}) "
                f"vs {other.histogram} (#{other.h_index})")
    logger.debug("%s |H|=%d: %d subgroups agree on %s", ctx.id.value, order, len(hs), first.histogram)
    return first


def decompose_table(ctx: CurveContext, ledger: PicardLedger) -> DecompositionTable:
    rows = tuple(decompose_by_order(ctx, ledger, order) for order in ctx.very_ample_orders())
    return DecompositionTable(group=ctx.id, rows=rows)


@dataclass
class TheoremAudit:
    name: str
    group: AutGroupId
    checked: int = 0
    failures: List[str] = field(default_factory=list)
    skipped: bool = False
    note: str = ""

    @property
    def passed(self) -> bool:
        return not self.failures


def verify_theorem1(ctx: CurveContext, ledger: PicardLedger) -> TheoremAudit:
    """
    Very ample D_H, D_N differ by (|H| - |N|)/2 times K, for every pair of
    P1 subgroups of order >= 5. Not claimed for C10.
    """
    audit = TheoremAudit("theorem1", ctx.id)
    if ctx.id == AutGroupId.C10:
        audit.skipped = True
        audit.note = "hypothesis excludes C10: D_C5 has odd degree and is not a multiple of K"
        return audit

    ample = [s for s in ctx.p1_subgroups if very_ample(ctx, s)]
    for h in ample:
        for n in ample:
            audit.checked += 1
            expected = KnownMultiple((h.order - n.order) // 2)
            got = difference(ledger, h, n)
            if (h.order - n.order) % 2 or got != expected:
                audit.failures.append(
                    f"D_H - D_N for |H|={h.order} #{ctx.subgroup_index(h)}, |N|={n.order} "
                    f"#{ctx.subgroup_index(n)}: expected {expected}, got {got}")
    return audit


def verify_theorem2(ctx: CurveContext, ledger: PicardLedger, h: Subgroup) -> TheoremAudit:
    """
    0-dimensional components of the locus for D_H correspond one-to-one to
    the P1 subgroups of order |H|, each proved equivalent to H.
    """
    audit = TheoremAudit("theorem2", ctx.id)
    report = decompose(ctx, ledger, h)
    same_order = ctx.p1_of_order(h.order)

    audit.checked = len(report.components)
    d0 = report.histogram.get(0, 0)
    if d0 != len(same_order):
        audit.failures.append(f"|H|={h.order}: D_0 = {d0}, but {len(same_order)} subgroups have order {h.order}")

    for c in report.components:
        if c.order == h.order and (c.dimension != 0 or c.certainty != Certainty.PROVED):
            audit.failures.append(
                f"|H|={h.order}: N #{c.n_index} has dimension {c.dimension} ({c.certainty.value})")
        if c.dimension == 0 and c.order != h.order:
            audit.failures.append(f"|H|={h.order}: 0-dimensional component from N #{c.n_index} of order {c.order}")

    if d0 < 1:
        audit.failures.append(f"|H|={h.order}: no 0-dimensional component")
    return audit


def certainty_audit(ctx: CurveContext, ledger: PicardLedger) -> List[Tuple[Subgroup, ComponentRecord]]:
    """(H, component) pairs, over every very ample H, whose dimension is not proved"""
    unproved = []
    for h in ctx.p1_subgroups:
        if not very_ample(ctx, h):
            continue
        unproved.extend((h, c) for c in decompose(ctx, ledger, h).components if c.certainty != Certainty.PROVED)
    return unproved
