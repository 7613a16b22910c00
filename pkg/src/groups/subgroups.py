"""
Subgroups as membership bitsets, and their enumeration by closure.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np

from ..core.errors import ParentMismatch
from .finite_group import FiniteGroup

logger = logging.getLogger(__name__)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def mask_of(elements: Iterable[int]) -> int:
    mask = 0
    for x in elements:
        mask |= 1 << x
    return mask


def elements_of(mask: int) -> Tuple[int, ...]:
    result = []
    i = 0
    while mask:
        if mask & 1:
            result.append(i)
        mask >>= 1
        i += 1
    return tuple(result)


@dataclass(frozen=True, eq=False)
class Subgroup:
    """
    A subgroup of `parent`, stored as a bitset over element indices.

    Two subgroups are equal when they share the parent object and the
    membership bitset.
    """

    parent: FiniteGroup = field(repr=False)
    members: int
    generators: Tuple[int, ...]
    order: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "order", popcount(self.members))

    @cached_property
    def elements(self) -> Tuple[int, ...]:
        return elements_of(self.members)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent is other.parent and self.members == other.members

    def __hash__(self) -> int:
        return hash((id(self.parent), self.members))

    def __contains__(self, x: int) -> bool:
        return bool(self.members >> x & 1)

    def is_subgroup_of(self, other: "Subgroup") -> bool:
        return self.members & other.members == self.members

    @property
    def is_trivial(self) -> bool:
        return self.order == 1

    @property
    def key(self) -> Tuple[int, Tuple[int, ...]]:
        """Deterministic sort key: (order, sorted member indices)"""
        return (self.order, self.elements)

    def __repr__(self) -> str:
        gens = ", ".join(self.parent.label(g) for g in self.generators)
        return f"Subgroup(order={self.order}, <{gens}> in {self.parent.name})"


def closure(group: FiniteGroup, gens: Sequence[int]) -> int:
    """Bitset of the subgroup generated by `gens`"""
    rows = group.rows
    mask = 1 << group.identity
    frontier = [group.identity]
    for x in frontier:
        row = rows[x]
        for g in gens:
            y = row[g]
            if not mask >> y & 1:
                mask |= 1 << y
                frontier.append(y)
    return mask


def witness_generators(group: FiniteGroup, members: int) -> Tuple[int, ...]:
    """
    Small generating set of a subgroup: greedily take the element of largest
    order not yet generated.
    """
    candidates = sorted(elements_of(members), key=lambda x: (-group.element_orders[x], x))
    gens: List[int] = []
    span = 1 << group.identity
    for x in candidates:
        if span == members:
            break
        if not span >> x & 1:
            gens.append(x)
            span = closure(group, gens)
    return tuple(sorted(gens))


def generated_subgroup(group: FiniteGroup, gens: Sequence[int]) -> Subgroup:
    members = closure(group, gens)
    return Subgroup(group, members, witness_generators(group, members))


def subgroup_from_members(group: FiniteGroup, members: int) -> Subgroup:
    return Subgroup(group, members, witness_generators(group, members))


def trivial_subgroup(group: FiniteGroup) -> Subgroup:
    return Subgroup(group, 1 << group.identity, ())


def whole_group(group: FiniteGroup) -> Subgroup:
    return subgroup_from_members(group, (1 << group.order) - 1)


def enumerate_subgroups(group: FiniteGroup) -> List[Subgroup]:
    """
    Every subgroup exactly once, sorted by (order, member indices).

    Seeds with the cyclic subgroups, then extends each found subgroup by one
    outside element and closes, until nothing new appears.
    """
    found: Dict[int, Tuple[int, ...]] = {}
    queue = deque()

    def record(mask: int, gens: Tuple[int, ...]):
        if mask not in found:
            found[mask] = gens
            queue.append(mask)

    for x in range(group.order):
        record(closure(group, (x,)), (x,))

    while queue:
        mask = queue.popleft()
        gens = found[mask]
        for x in range(group.order):
            if mask >> x & 1:
                continue
            record(closure(group, gens + (x,)), gens + (x,))

    subgroups = [subgroup_from_members(group, mask) for mask in found]
    subgroups.sort(key=lambda s: s.key)
    logger.info("%s: %d subgroups", group.name, len(subgroups))
    return subgroups


def center(group: FiniteGroup) -> Subgroup:
    table = group.cayley
    central = np.all(table == table.T, axis=1)
    return subgroup_from_members(group, mask_of(np.flatnonzero(central).tolist()))


def intersect(h: Subgroup, n: Subgroup) -> Subgroup:
    if h.parent is not n.parent:
        raise ParentMismatch(f"{h!r} and {n!r} live in different groups")
    return subgroup_from_members(h.parent, h.members & n.members)


def conjugate_mask(h: Subgroup, g: int) -> int:
    """Bitset of g H g^-1"""
    group = h.parent
    return mask_of(group.conjugate(x, g) for x in h.elements)


def is_normal(h: Subgroup) -> bool:
    return all(conjugate_mask(h, g) == h.members for g in range(h.parent.order))
