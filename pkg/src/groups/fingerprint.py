"""
Isomorphism-type fingerprints and labels for small groups.

A fingerprint is a tuple of cheap invariants. Within the groups this project
works with (order <= 48) the invariants below separate every occurring type;
collision_audit() checks that claim by brute-force isomorphism search.
"""

import itertools
from collections import defaultdict
from dataclasses import astuple, dataclass
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from .subgroups import Subgroup, closure, mask_of, popcount


@dataclass(frozen=True)
class IsoFingerprint:
    order: int
    is_abelian: bool
    is_cyclic: bool
    exponent: int
    involution_count: int
    center_order: int
    conjugacy_class_count: int
    derived_subgroup_order: int


# (order, abelian, cyclic, exponent, involutions, |Z|, classes, |G'|)
KNOWN_TYPES: Dict[str, Tuple] = {
    "C1": (1, True, True, 1, 0, 1, 1, 1),
    "C2": (2, True, True, 2, 1, 2, 2, 1),
    "C3": (3, True, True, 3, 0, 3, 3, 1),
    "C4": (4, True, True, 4, 1, 4, 4, 1),
    "C2^2": (4, True, False, 2, 3, 4, 4, 1),
    "C5": (5, True, True, 5, 0, 5, 5, 1),
    "C6": (6, True, True, 6, 1, 6, 6, 1),
    "S3": (6, False, False, 6, 3, 1, 3, 3),
    "C8": (8, True, True, 8, 1, 8, 8, 1),
    "C4xC2": (8, True, False, 4, 3, 8, 8, 1),
    "C2^3": (8, True, False, 2, 7, 8, 8, 1),
    "D4": (8, False, False, 4, 5, 2, 5, 2),
    "Q8": (8, False, False, 4, 1, 2, 5, 2),
    "C10": (10, True, True, 10, 1, 10, 10, 1),
    "D5": (10, False, False, 10, 5, 1, 4, 5),
    "C12": (12, True, True, 12, 1, 12, 12, 1),
    "C2xC6": (12, True, False, 6, 3, 12, 12, 1),
    "A4": (12, False, False, 6, 3, 1, 4, 4),
    "D6": (12, False, False, 6, 7, 2, 6, 3),
    "Dic3": (12, False, False, 12, 1, 2, 6, 3),
    "SD16": (16, False, False, 8, 5, 2, 7, 4),
    "D8": (16, False, False, 8, 9, 2, 7, 4),
    "Q16": (16, False, False, 8, 1, 2, 7, 4),
    "SL2(F3)": (24, False, False, 12, 1, 2, 7, 8),
    "C3:D4": (24, False, False, 12, 9, 2, 9, 6),
    "D12": (24, False, False, 12, 13, 2, 9, 6),
    "GL2(F3)": (48, False, False, 24, 13, 2, 8, 24),
}

_LABELS = {IsoFingerprint(*values): label for label, values in KNOWN_TYPES.items()}


def fingerprint(h: Subgroup) -> IsoFingerprint:
    """Compute the invariants of `h` inside its parent's Cayley table"""
    group = h.parent
    rows = group.rows
    elements = h.elements
    orders = [group.element_orders[x] for x in elements]

    center = [z for z in elements if all(rows[z][y] == rows[y][z] for y in elements)]

    exponent = 1
    for k in orders:
        exponent = exponent * k // gcd(exponent, k)

    classes = 0
    seen = 0
    for x in elements:
        if seen >> x & 1:
            continue
        classes += 1
        seen |= mask_of(group.conjugate(x, g) for g in elements)

    inverse = group.inverse
    commutators = {rows[rows[a][b]][rows[inverse[a]][inverse[b]]] for a in elements for b in elements}

    return IsoFingerprint(
        order=h.order,
        is_abelian=len(center) == h.order,
        is_cyclic=h.order in orders,
        exponent=exponent,
        involution_count=orders.count(2),
        center_order=len(center),
        conjugacy_class_count=classes,
        derived_subgroup_order=popcount(closure(group, sorted(commutators))),
    )


def iso_label(h: Subgroup) -> str:
    fp = fingerprint(h)
    return _LABELS.get(fp, f"Unknown({fp.order})")


def label_fingerprint(label: str) -> Optional[IsoFingerprint]:
    values = KNOWN_TYPES.get(label)
    return IsoFingerprint(*values) if values else None


def _extend_to_isomorphism(h: Subgroup, k: Subgroup, images: Sequence[int]) -> Optional[Dict[int, int]]:
    source, target = h.parent, k.parent
    phi = {source.identity: target.identity}
    frontier = [source.identity]
    for x in frontier:
        for g, image in zip(h.generators, images):
            y = source.mul(x, g)
            fy = target.mul(phi[x], image)
            known = phi.get(y)
            if known is None:
                phi[y] = fy
                frontier.append(y)
            elif known != fy:
                return None
    if len(phi) != h.order or len(set(phi.values())) != k.order:
        return None
    return phi


def find_isomorphism(h: Subgroup, k: Subgroup) -> Optional[Dict[int, int]]:
    """
    Brute-force an isomorphism h -> k by mapping h's generators onto
    elements of k with matching orders.

    Returns the element map, or None when the groups are not isomorphic.
    """
    if h.order != k.order:
        return None
    if not h.generators:
        return {h.parent.identity: k.parent.identity}

    candidates = [
        [y for y in k.elements if k.parent.element_orders[y] == h.parent.element_orders[g]]
        for g in h.generators
    ]
    for images in itertools.product(*candidates):
        phi = _extend_to_isomorphism(h, k, images)
        if phi is not None:
            return phi
    return None


def collision_audit(subgroups: Sequence[Subgroup]) -> List[Tuple[int, int]]:
    """
    Check that equal fingerprints mean isomorphic subgroups.

    Returns the index pairs (representative, other) for which no
    isomorphism was found; empty when fingerprints are faithful.
    """
    by_fingerprint: Dict[Tuple, List[int]] = defaultdict(list)
    for i, s in enumerate(subgroups):
        by_fingerprint[astuple(fingerprint(s))].append(i)

    failures = []
    for indices in by_fingerprint.values():
        first = subgroups[indices[0]]
        for i in indices[1:]:
            if find_isomorphism(first, subgroups[i]) is None:
                failures.append((indices[0], i))
    return failures
