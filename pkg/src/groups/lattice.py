"""
Subgroup lattice: covering relations, conjugacy classes and normality.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Sequence, Tuple

import networkx as nx

from .finite_group import FiniteGroup
from .fingerprint import iso_label
from .subgroups import Subgroup, conjugate_mask, enumerate_subgroups

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ConjugacyClass:
    """Subgroups conjugate to the representative (the one with the smallest index)"""

    representative: int
    members: Tuple[int, ...]
    label: str
    order: int

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def is_normal(self) -> bool:
        return len(self.members) == 1


class SubgroupLattice:
    """
    Inclusion lattice over an enumerated subgroup list.

    Subgroups are addressed by their index in the enumeration, which is
    deterministic, so edges and class ids are reproducible across runs.
    """

    def __init__(self, group: FiniteGroup, subgroups: Sequence[Subgroup] = None):
        self.group = group
        self.subgroups: List[Subgroup] = list(subgroups) if subgroups is not None else enumerate_subgroups(group)
        self._index: Dict[int, int] = {s.members: i for i, s in enumerate(self.subgroups)}

    def index(self, h: Subgroup) -> int:
        if h.parent is not self.group:
            raise KeyError(f"{h!r} is not a subgroup of {self.group.name}")
        return self._index[h.members]

    @cached_property
    def inclusion_graph(self) -> nx.DiGraph:
        """Edge a -> b for every proper inclusion of subgroup a in subgroup b"""
        graph = nx.DiGraph()
        graph.add_nodes_from(range(len(self.subgroups)))
        for i, a in enumerate(self.subgroups):
            for j, b in enumerate(self.subgroups):
                if a.order < b.order and a.is_subgroup_of(b):
                    graph.add_edge(i, j)
        return graph

    @cached_property
    def cover_graph(self) -> nx.DiGraph:
        return nx.transitive_reduction(self.inclusion_graph)

    @property
    def covering_edges(self) -> List[Tuple[int, int]]:
        return sorted(self.cover_graph.edges())

    @cached_property
    def orbit_ids(self) -> Tuple[int, ...]:
        """For each subgroup, the smallest index among its conjugates"""
        ids = []
        for s in self.subgroups:
            conjugates = {conjugate_mask(s, g) for g in range(self.group.order)}
            ids.append(min(self._index[mask] for mask in conjugates))
        return tuple(ids)

    def is_normal(self, i: int) -> bool:
        return all(self.orbit_ids[j] != self.orbit_ids[i] for j in range(len(self.subgroups)) if j != i)

    @cached_property
    def labels(self) -> Tuple[str, ...]:
        return tuple(iso_label(s) for s in self.subgroups)

    @cached_property
    def classes(self) -> List[ConjugacyClass]:
        members: Dict[int, List[int]] = {}
        for i, orbit in enumerate(self.orbit_ids):
            members.setdefault(orbit, []).append(i)
        result = [
            ConjugacyClass(
                representative=rep,
                members=tuple(idx),
                label=self.labels[rep],
                order=self.subgroups[rep].order,
            )
            for rep, idx in sorted(members.items())
        ]
        logger.debug("%s: %d conjugacy classes of subgroups", self.group.name, len(result))
        return result

    def class_of(self, i: int) -> ConjugacyClass:
        rep = self.orbit_ids[i]
        return next(c for c in self.classes if c.representative == rep)

    @cached_property
    def class_edges(self) -> List[Tuple[int, int]]:
        """Covering edges collapsed onto conjugacy-class representatives"""
        edges = {(self.orbit_ids[a], self.orbit_ids[b]) for a, b in self.cover_graph.edges()}
        return sorted(edges)


def subgroup_lattice(group: FiniteGroup, subgroups: Sequence[Subgroup] = None) -> SubgroupLattice:
    return SubgroupLattice(group, subgroups)
