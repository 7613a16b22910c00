"""
Independent brute-force cross-checks for the test suite.

Nothing here reuses the enumeration, closure or fixpoint code of the main
pipeline; only the frozen data types and the public query functions are
shared. Not used on any CLI path.
"""

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

import numpy as np
from sympy.combinatorics import Permutation, PermutationGroup

from ..core.config import get_settings
from ..curves.decomp import decompose
from ..curves.genus2 import CatalogEntry, CurveContext, very_ample
from ..curves.picard import PicardLedger, Relation, build_ledger, collect_relations, ell_table
from ..curves.picard import KnownMultiple, difference
from ..groups.finite_group import FiniteGroup, parse_cycles, permutation_degree
from ..groups.subgroups import Subgroup

FULL_SEARCH_LIMIT = 16


def _closed(table: np.ndarray, elements: Sequence[int]) -> bool:
    idx = np.asarray(elements)
    return bool(np.isin(table[np.ix_(idx, idx)], idx).all())


def _span(table: np.ndarray, seeds: Set[int]) -> FrozenSet[int]:
    current = {0} | set(seeds)
    while True:
        idx = np.asarray(sorted(current))
        products = set(np.unique(table[np.ix_(idx, idx)]).tolist())
        if products <= current:
            return frozenset(current)
        current |= products


def _as_subgroup(group: FiniteGroup, elements: FrozenSet[int]) -> Subgroup:
    members = sum(1 << x for x in elements)
    return Subgroup(group, members, ())


def exhaustive_subgroups(group: FiniteGroup) -> List[Subgroup]:
    """
    All subgroups by brute force.

    Up to order 16 every subset of each divisor size is tested for closure.
    Beyond that, spans of all element pairs are joined pairwise until no new
    subgroup appears.
    """
    table = group.cayley
    n = group.order
    found: Set[FrozenSet[int]] = set()

    if n <= FULL_SEARCH_LIMIT:
        others = range(1, n)
        for d in (d for d in range(1, n + 1) if n % d == 0):
            for subset in itertools.combinations(others, d - 1):
                elements = (0,) + subset
                if _closed(table, elements):
                    found.add(frozenset(elements))
    else:
        for a in range(n):
            for b in range(a, n):
                found.add(_span(table, {a, b}))
        grown = True
        while grown:
            grown = False
            for x, y in itertools.combinations(sorted(found, key=sorted), 2):
                joined = _span(table, x | y)
                if joined not in found:
                    found.add(joined)
                    grown = True

    subgroups = [_as_subgroup(group, s) for s in found]
    return sorted(subgroups, key=lambda s: (s.order, s.elements))


def sympy_order(entry: CatalogEntry) -> Optional[int]:
    """Group order from sympy's Schreier-Sims, for permutation catalog entries"""
    if entry.kind != "permutation":
        return None
    degree = permutation_degree(entry.generators)
    perms: List[Permutation] = [parse_cycles(text, degree) for text in entry.generators]
    return int(PermutationGroup(perms).order())


def _structure(ledger: PicardLedger) -> Set[Tuple[Tuple[int, int], ...]]:
    """Components with potentials normalised to their smallest node"""
    result = set()
    for component in ledger.components():
        base = ledger.potential(component[0])
        result.add(tuple((x, ledger.potential(x) - base) for x in component))
    return result


def shuffled_ledger_equivalence(ctx: CurveContext, trials: int = None, seed: int = 0,
                                relations: Sequence[Relation] = None) -> bool:
    """
    Rebuild the ledger from shuffled relation lists and compare.

    Returns:
        True iff every shuffle yields the same components, the same relative
        potentials and the same ell value and certainty for every pair.
    """
    trials = trials if trials is not None else get_settings().shuffle_trials
    relations = list(relations) if relations is not None else collect_relations(ctx)
    baseline = build_ledger(ctx, relations)
    expected_structure = _structure(baseline)
    expected_ell = ell_table(baseline)

    rng = random.Random(seed)
    for _ in range(trials):
        order = list(relations)
        rng.shuffle(order)
        ledger = build_ledger(ctx, order)
        if _structure(ledger) != expected_structure or ell_table(ledger) != expected_ell:
            return False
    return True


def _recomputed_dimension(ledger: PicardLedger, h: Subgroup, n: Subgroup) -> int:
    d = h.order - n.order
    if d < 0:
        return -1
    if d > 2:
        return d - 2
    if d == 0:
        return 0 if difference(ledger, h, n) == KnownMultiple(0) else -1
    if d == 2:
        return 1 if difference(ledger, h, n) == KnownMultiple(1) else 0
    return -1


@dataclass
class HistogramAudit:
    checked: int = 0
    mismatches: List[str] = field(default_factory=list)

    @property
    def agree(self) -> bool:
        return not self.mismatches


def histogram_consistency(ctx: CurveContext, ledger: PicardLedger,
                          tamper: Callable[[Dict[int, int]], Dict[int, int]] = None) -> HistogramAudit:
    """
    Recompute every histogram from the degree rules and raw ledger
    differences, and compare with decompose().

    Args:
        tamper: optional edit applied to a copy of each pipeline histogram
                before comparison (negative control)
    """
    audit = HistogramAudit()
    for h in ctx.p1_subgroups:
        if not very_ample(ctx, h):
            continue
        audit.checked += 1
        pipeline = dict(decompose(ctx, ledger, h).histogram)
        if tamper is not None:
            pipeline = tamper(dict(pipeline))

        recomputed: Dict[int, int] = {}
        for n in ctx.p1_subgroups:
            dim = _recomputed_dimension(ledger, h, n)
            recomputed[dim] = recomputed.get(dim, 0) + 1

        if {k: v for k, v in pipeline.items() if v} != recomputed:
            audit.mismatches.append(f"|H|={h.order}: pipeline {pipeline} vs recomputed {recomputed}")
    return audit
