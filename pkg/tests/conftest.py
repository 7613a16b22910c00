from __future__ import annotations

import pytest

from src.curves.genus2 import AutGroupId, CurveContext, get_context
from src.curves.picard import PicardLedger, get_ledger
from src.groups.lattice import SubgroupLattice

TABLE_GROUPS = [AutGroupId.D4_8, AutGroupId.C10, AutGroupId.D6_12, AutGroupId.C3sdD4_24, AutGroupId.GL2F3_48]


@pytest.fixture(scope="session")
def contexts() -> dict[AutGroupId, CurveContext]:
    return {gid: get_context(gid) for gid in AutGroupId}


@pytest.fixture(scope="session")
def ledgers(contexts) -> dict[AutGroupId, PicardLedger]:
    return {gid: get_ledger(gid) for gid in contexts}


@pytest.fixture(scope="session")
def d6(contexts) -> CurveContext:
    return contexts[AutGroupId.D6_12]


@pytest.fixture(scope="session")
def gl2(contexts) -> CurveContext:
    return contexts[AutGroupId.GL2F3_48]


def by_label(ctx: CurveContext, label: str) -> list:
    """Subgroups of ctx with the given isomorphism label, in enumeration order"""
    lattice: SubgroupLattice = ctx.lattice
    return [s for i, s in enumerate(ctx.all_subgroups) if lattice.labels[i] == label]
