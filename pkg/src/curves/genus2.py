"""
Genus-2 curve contexts.

The seven possible automorphism groups are loaded from the catalog data file,
validated, and wrapped with their hyperelliptic involution and the subgroups
whose quotient is the projective line.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property, lru_cache
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import yaml

from ..core.config import get_settings
from ..core.errors import AmbiguousSigma, CatalogCorrupt, ClosureTooLarge, NotInvertible, UnknownGroup
from ..groups.finite_group import (
    FiniteGroup,
    build_from_generators,
    cycle_label,
    parse_cycles,
    permutation_degree,
)
from ..groups.fingerprint import iso_label
from ..groups.lattice import SubgroupLattice
from ..groups.subgroups import Subgroup, center, enumerate_subgroups, generated_subgroup, whole_group

logger = logging.getLogger(__name__)

GENUS = 2
CANONICAL_DEGREE = 2 * GENUS - 2
VERY_AMPLE_DEGREE = 2 * GENUS + 1


class AutGroupId(str, Enum):
    """Automorphism groups of genus-2 curves; the suffix is the group order"""

    C2 = "C2"
    C2xC2 = "C2xC2"
    D4_8 = "D4_8"
    C10 = "C10"
    D6_12 = "D6_12"
    C3sdD4_24 = "C3sdD4_24"
    GL2F3_48 = "GL2F3_48"

    @property
    def order(self) -> int:
        return {"C2": 2, "C2xC2": 4, "D4_8": 8, "C10": 10,
                "D6_12": 12, "C3sdD4_24": 24, "GL2F3_48": 48}[self.value]


@dataclass(frozen=True)
class CatalogEntry:
    id: AutGroupId
    aliases: Tuple[str, ...]
    kind: str
    generators: Tuple
    group: FiniteGroup
    label: str
    sigma: Optional[str] = None
    census: Dict[int, int] = field(default_factory=dict)
    fixture: Optional[str] = None


def _build_group(record: Dict, gid: AutGroupId) -> FiniteGroup:
    kind = record.get("kind")
    gens = record.get("generators") or []
    if kind == "permutation":
        degree = permutation_degree(gens)
        seeds = [parse_cycles(text, degree) for text in gens]
    elif kind == "matrix-mod-3":
        seeds = [list(entries) for entries in gens]
    else:
        raise CatalogCorrupt(f"{gid.value}: unknown representation kind {kind!r}")
    try:
        return build_from_generators(seeds, gid.value)
    except (ClosureTooLarge, NotInvertible, ValueError) as e:
        raise CatalogCorrupt(f"{gid.value}: {e}") from e


def _parse_entry(record: Dict) -> CatalogEntry:
    try:
        gid = AutGroupId(record["id"])
    except (KeyError, ValueError):
        raise CatalogCorrupt(f"Catalog record with unknown id: {record.get('id')!r}") from None

    group = _build_group(record, gid)
    if group.order != gid.order:
        raise CatalogCorrupt(f"{gid.value}: closure has order {group.order}, expected {gid.order}")

    label = str(record.get("label", ""))
    computed = iso_label(whole_group(group))
    if computed != label:
        raise CatalogCorrupt(f"{gid.value}: fingerprint says {computed}, catalog says {label}")

    return CatalogEntry(
        id=gid,
        aliases=tuple(str(a) for a in record.get("aliases", [])),
        kind=record["kind"],
        generators=tuple(tuple(g) if isinstance(g, list) else g for g in record["generators"]),
        group=group,
        label=label,
        sigma=record.get("sigma"),
        census={int(k): int(v) for k, v in (record.get("census") or {}).items()},
        fixture=record.get("fixture"),
    )


@lru_cache(maxsize=4)
def load_catalog(path: Path = None) -> Tuple[CatalogEntry, ...]:
    """
    Load and validate the group catalog.

    Args:
        path: catalog YAML file (default: settings.catalog_path)

    Returns:
        One validated entry per AutGroupId, in catalog order.
    """
    path = Path(path) if path else get_settings().catalog_path
    try:
        with open(path) as f:
            data = yaml.safe_load(f) or {}
    except (OSError, yaml.YAMLError) as e:
        raise CatalogCorrupt(f"Cannot read catalog {path}: {e}") from e

    entries = tuple(_parse_entry(record) for record in data.get("groups", []))
    ids = [e.id for e in entries]
    if sorted(ids) != sorted(AutGroupId) or len(set(ids)) != len(ids):
        raise CatalogCorrupt(f"Catalog must list each group exactly once, got {[i.value for i in ids]}")

    logger.info("Loaded %d catalog groups from %s", len(entries), path)
    return entries


def catalog() -> List[Tuple[AutGroupId, FiniteGroup]]:
    return [(e.id, e.group) for e in load_catalog()]


def catalog_entry(gid: AutGroupId) -> CatalogEntry:
    return next(e for e in load_catalog() if e.id == gid)


def resolve_group_id(name: str) -> AutGroupId:
    """Match an AutGroupId spelling or alias, case-insensitively"""
    wanted = name.strip().lower()
    for entry in load_catalog():
        if wanted == entry.id.value.lower() or wanted in (a.lower() for a in entry.aliases):
            return entry.id
    known = ", ".join(e.id.value for e in load_catalog())
    raise UnknownGroup(f"Unknown group {name!r} (known: {known})")


def hyperelliptic_involution(group: FiniteGroup) -> int:
    """
    The unique central involution of `group`.

    Raises:
        AmbiguousSigma: if the center holds zero or several involutions
    """
    involutions = [z for z in center(group).elements if group.element_orders[z] == 2]
    if len(involutions) != 1:
        raise AmbiguousSigma(f"{group.name}: center holds {len(involutions)} involutions")
    return involutions[0]


def _designated_sigma(entry: CatalogEntry) -> int:
    group = entry.group
    degree = permutation_degree(entry.generators)
    sigma = group.index_of_label(cycle_label(parse_cycles(entry.sigma, degree)))
    if group.element_orders[sigma] != 2 or sigma not in center(group):
        raise CatalogCorrupt(f"{entry.id.value}: designated sigma {entry.sigma} is not a central involution")
    return sigma


@dataclass(frozen=True, eq=False)
class CurveContext:
    """
    A catalog group together with its hyperelliptic involution and the
    subgroups H with X/H isomorphic to the projective line.
    """

    id: AutGroupId
    group: FiniteGroup
    sigma: int
    all_subgroups: Tuple[Subgroup, ...]
    p1_subgroups: Tuple[Subgroup, ...]

    @classmethod
    def build(cls, entry: CatalogEntry) -> "CurveContext":
        group = entry.group
        try:
            sigma = hyperelliptic_involution(group)
            if entry.sigma is not None and sigma != _designated_sigma(entry):
                raise CatalogCorrupt(f"{entry.id.value}: designated sigma is not the central involution")
        except AmbiguousSigma:
            if entry.sigma is None:
                raise
            sigma = _designated_sigma(entry)

        subgroups = tuple(enumerate_subgroups(group))
        sigma_members = 1 << group.identity | 1 << sigma
        p1 = tuple(s for s in subgroups if s.order >= 3 or s.members == sigma_members)

        ctx = cls(id=entry.id, group=group, sigma=sigma, all_subgroups=subgroups, p1_subgroups=p1)
        census = dict(Counter(s.order for s in p1))
        if entry.census and census != entry.census:
            raise CatalogCorrupt(f"{entry.id.value}: P1 census {census} differs from catalog {entry.census}")

        logger.info("%s: sigma=%s, %d subgroups, %d with P1 quotient",
                    entry.id.value, group.label(sigma), len(subgroups), len(p1))
        return ctx

    @cached_property
    def sigma_subgroup(self) -> Subgroup:
        return generated_subgroup(self.group, (self.sigma,))

    @cached_property
    def lattice(self) -> SubgroupLattice:
        return SubgroupLattice(self.group, self.all_subgroups)

    @cached_property
    def _p1_index(self) -> Dict[Subgroup, int]:
        return {s: i for i, s in enumerate(self.p1_subgroups)}

    def p1_index(self, h: Subgroup) -> int:
        """Position of `h` in p1_subgroups; KeyError if X/h is not P1"""
        return self._p1_index[h]

    def subgroup_index(self, h: Subgroup) -> int:
        return self.lattice.index(h)

    def degree(self, h: Subgroup) -> int:
        """deg D_H = |H|"""
        return h.order

    def p1_of_order(self, order: int) -> List[Subgroup]:
        return [s for s in self.p1_subgroups if s.order == order]

    def very_ample_orders(self) -> List[int]:
        return sorted({s.order for s in self.p1_subgroups if very_ample(self, s)})

    def __repr__(self) -> str:
        return f"CurveContext({self.id.value}, p1={len(self.p1_subgroups)})"


def quotient_is_p1(ctx: CurveContext, h: Subgroup) -> bool:
    """X/H is P1 iff |H| >= 3 or H is generated by the hyperelliptic involution"""
    return h.order >= 3 or h.members == ctx.sigma_subgroup.members


def very_ample(ctx: CurveContext, h: Subgroup) -> bool:
    """D_H is very ample iff deg D_H >= 2g + 1"""
    return ctx.degree(h) >= VERY_AMPLE_DEGREE


@lru_cache(maxsize=None)
def get_context(gid: AutGroupId) -> CurveContext:
    return CurveContext.build(catalog_entry(gid))
