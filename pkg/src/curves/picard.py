"""
Divisor-class ledger for the classes D_H, H a subgroup with P1 quotient.

Linear equivalences come from three sources:
  - EqualVia(H, N, L):    |H| = |N| and L <= H ∩ N with X/L = P1, so D_H ~ D_N
  - DiffIsClass(H, N, L): |H| - |N| = |L| and L <= H ∩ N with X/L = P1,
                          so D_H - D_N ~ D_L
  - Anchor:               D_<sigma> ~ K

Classes are tracked as integer multiples of K in a weighted union-find. A
DiffIsClass relation becomes usable once L's class is known absolutely, i.e.
once L sits in the anchor's component.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import networkx as nx

from ..core.errors import InconsistentLedger, NoPath
from ..groups.subgroups import Subgroup
from .genus2 import CANONICAL_DEGREE, AutGroupId, CurveContext, get_context

logger = logging.getLogger(__name__)

# Node id of the canonical class K
ANCHOR = -1


@dataclass(frozen=True)
class EqualVia:
    h: int
    n: int
    l: int


@dataclass(frozen=True)
class DiffIsClass:
    h: int
    n: int
    l: int


@dataclass(frozen=True)
class Anchor:
    sigma: int


Relation = Union[EqualVia, DiffIsClass, Anchor]


def relation_kind(ctx: CurveContext, rel: Relation) -> str:
    """Audit bucket of a relation"""
    if isinstance(rel, DiffIsClass):
        sigma_node = ctx.p1_index(ctx.sigma_subgroup)
        return "DiffIsClass[L=<sigma>]" if rel.l == sigma_node else "DiffIsClass[|L|>2]"
    return type(rel).__name__


def node_label(ctx: CurveContext, node: int) -> str:
    if node == ANCHOR:
        return "K"
    s = ctx.p1_subgroups[node]
    return f"{ctx.lattice.labels[ctx.subgroup_index(s)]}#{ctx.subgroup_index(s)}"


def describe(ctx: CurveContext, rel: Relation) -> str:
    if isinstance(rel, Anchor):
        return f"D_{node_label(ctx, rel.sigma)} ~ K"
    h, n, l = (node_label(ctx, x) for x in (rel.h, rel.n, rel.l))
    if isinstance(rel, EqualVia):
        return f"D_{h} ~ D_{n} via {l}"
    return f"D_{h} - D_{n} ~ D_{l}"


def collect_relations(ctx: CurveContext) -> List[Relation]:
    """
    Scan every pair of P1 subgroups for EqualVia and DiffIsClass instances.

    Returns:
        The Anchor first, then relations ordered by (H, N, L) index.
        EqualVia is symmetric and listed once per unordered pair.
    """
    p1 = ctx.p1_subgroups
    relations: List[Relation] = [Anchor(ctx.p1_index(ctx.sigma_subgroup))]

    for i, h in enumerate(p1):
        for j, n in enumerate(p1):
            if i == j:
                continue
            equal = h.order == n.order and i < j
            gap = h.order - n.order
            if not equal and gap <= 0:
                continue
            common = h.members & n.members
            for k, l in enumerate(p1):
                if l.members & common != l.members:
                    continue
                if equal:
                    relations.append(EqualVia(i, j, k))
                elif gap == l.order:
                    relations.append(DiffIsClass(i, j, k))

    logger.debug("%s: collected %d relations", ctx.id.value, len(relations))
    return relations


@dataclass(frozen=True)
class KnownMultiple:
    """D_H - D_N ~ m K"""

    m: int


@dataclass(frozen=True)
class Unknown:
    pass


Difference = Union[KnownMultiple, Unknown]


class Certainty(str, Enum):
    PROVED = "Proved"
    ASSUMED_DISTINCT = "AssumedDistinct"
    UNDECIDED = "Undecided"


@dataclass(frozen=True)
class CertificateStep:
    """One edge of a derivation: D_source - D_target ~ multiple * K by `relation`"""

    source: int
    target: int
    relation: Relation
    multiple: int


@dataclass(frozen=True)
class LSpace:
    value: int
    certainty: Certainty
    certificate: Tuple[CertificateStep, ...] = ()


@dataclass
class MergeRecord:
    x: int
    y: int
    multiple: int
    kind: str


class PicardLedger:
    """
    Weighted union-find over P1-subgroup nodes plus the K anchor.

    offset[x] is D_x - D_parent(x) in units of K. After freeze() the
    structure is a read-only snapshot and safe to query concurrently.
    """

    def __init__(self, ctx: CurveContext):
        self.ctx = ctx
        nodes = [ANCHOR] + list(range(len(ctx.p1_subgroups)))
        self.parent: Dict[int, int] = {x: x for x in nodes}
        self.offset: Dict[int, int] = {x: 0 for x in nodes}
        self.size: Dict[int, int] = {x: 1 for x in nodes}
        self.proof = nx.MultiGraph()
        self.proof.add_nodes_from(nodes)
        self.fired: Counter = Counter()
        self.merged: Counter = Counter()
        self.merges: List[MergeRecord] = []
        self.pending: List[Relation] = []
        self._frozen: Optional[Dict[int, Tuple[int, int]]] = None

    @property
    def nodes(self) -> List[int]:
        return list(self.parent)

    def degree(self, x: int) -> int:
        return CANONICAL_DEGREE if x == ANCHOR else self.ctx.p1_subgroups[x].order

    def find(self, x: int) -> int:
        if self._frozen is not None:
            return self._frozen[x][0]
        path = []
        root = x
        while self.parent[root] != root:
            path.append(root)
            root = self.parent[root]
        for node in reversed(path):
            p = self.parent[node]
            if p != root:
                self.offset[node] += self.offset[p]
            self.parent[node] = root
        return root

    def potential(self, x: int) -> int:
        """D_x - D_root(x) in units of K"""
        if self._frozen is not None:
            return self._frozen[x][1]
        root = self.find(x)
        return 0 if x == root else self.offset[x]

    def connected(self, x: int, y: int) -> bool:
        return self.find(x) == self.find(y)

    def absolute(self, x: int) -> Optional[int]:
        """m with D_x ~ m K, when x is in the anchor's component"""
        if not self.connected(x, ANCHOR):
            return None
        return self.potential(x) - self.potential(ANCHOR) + 1

    def union(self, x: int, y: int, m: int, relation: Relation, kind: str) -> bool:
        """
        Record D_x - D_y ~ m K.

        Returns True when two components were joined, False when the
        relation was already implied.

        Raises:
            InconsistentLedger: degree mismatch, or a contradiction with an
                                already derived multiple
        """
        if self._frozen is not None:
            raise RuntimeError("Ledger is frozen")
        if self.degree(x) - self.degree(y) != CANONICAL_DEGREE * m:
            raise InconsistentLedger(
                f"{describe(self.ctx, relation)}: degrees {self.degree(x)} - {self.degree(y)} != {CANONICAL_DEGREE}*{m}")

        self.proof.add_edge(x, y, relation=relation, source=x, multiple=m)
        self.fired[kind] += 1

        rx, ry = self.find(x), self.find(y)
        px, py = self.potential(x), self.potential(y)
        if rx == ry:
            if px - py != m:
                raise InconsistentLedger(
                    f"{describe(self.ctx, relation)}: ledger already has multiple {px - py}, relation says {m}")
            return False

        self.merges.append(MergeRecord(x, y, m, kind))
        if self.size[rx] < self.size[ry]:
            rx, ry, px, py, m = ry, rx, py, px, -m
        # D_ry - D_rx = px - py - m
        self.parent[ry] = rx
        self.offset[ry] = px - py - m
        self.size[rx] += self.size[ry]

        self.merged[kind] += 1
        self.check_degree_consistency()
        return True

    def check_degree_consistency(self) -> None:
        """deg(x) - deg(root) = deg K * potential(x) for every node"""
        for x in self.parent:
            root = self.find(x)
            if self.degree(x) - self.degree(root) != CANONICAL_DEGREE * self.potential(x):
                raise InconsistentLedger(f"Node {node_label(self.ctx, x)} breaks degree consistency")

    def freeze(self) -> "PicardLedger":
        snapshot = {x: (self.find(x), self.potential(x)) for x in self.parent}
        self._frozen = snapshot
        return self

    @property
    def frozen(self) -> bool:
        return self._frozen is not None

    def components(self) -> List[List[int]]:
        groups: Dict[int, List[int]] = {}
        for x in self.parent:
            groups.setdefault(self.find(x), []).append(x)
        return sorted((sorted(g) for g in groups.values()), key=lambda g: g[0])


def _node(ctx: CurveContext, h: Union[Subgroup, int]) -> int:
    return h if isinstance(h, int) else ctx.p1_index(h)


def build_ledger(ctx: CurveContext, relations: Sequence[Relation] = None) -> PicardLedger:
    """
    Run the zig-zag closure to a fixpoint and freeze the ledger.

    Args:
        ctx: curve context
        relations: relation list in processing order (default: collect_relations)

    Returns:
        Frozen PicardLedger; ledger.pending holds the DiffIsClass relations
        that never fired because L stayed outside the anchor's component.
    """
    relations = list(relations) if relations is not None else collect_relations(ctx)
    ledger = PicardLedger(ctx)
    waiting = list(relations)

    rounds = 0
    progress = True
    while progress and waiting:
        rounds += 1
        progress = False
        still_waiting = []
        for rel in waiting:
            kind = relation_kind(ctx, rel)
            if isinstance(rel, Anchor):
                ledger.union(rel.sigma, ANCHOR, 0, rel, kind)
            elif isinstance(rel, EqualVia):
                ledger.union(rel.h, rel.n, 0, rel, kind)
            else:
                m = ledger.absolute(rel.l)
                if m is None:
                    still_waiting.append(rel)
                    continue
                ledger.union(rel.h, rel.n, m, rel, kind)
            progress = True
        waiting = still_waiting

    ledger.pending = waiting
    logger.info("%s: ledger fixpoint after %d rounds, %d components, %d pending, fired %s",
                ctx.id.value, rounds, len(ledger.components()), len(waiting), dict(ledger.fired))
    return ledger.freeze()


def difference(ledger: PicardLedger, h: Union[Subgroup, int], n: Union[Subgroup, int]) -> Difference:
    x, y = _node(ledger.ctx, h), _node(ledger.ctx, n)
    if not ledger.connected(x, y):
        return Unknown()
    return KnownMultiple(ledger.potential(x) - ledger.potential(y))


def zigzag_certificate(ledger: PicardLedger, h: Union[Subgroup, int],
                       n: Union[Subgroup, int]) -> Tuple[CertificateStep, ...]:
    """
    Shortest relation chain from D_H to D_N.

    Each step carries the relation used and its K-multiple oriented along the
    path; the multiples sum to the difference of the endpoints.

    Raises:
        NoPath: if the classes are not related
    """
    x, y = _node(ledger.ctx, h), _node(ledger.ctx, n)
    if not ledger.connected(x, y):
        raise NoPath(f"No relation chain between {node_label(ledger.ctx, x)} and {node_label(ledger.ctx, y)}")
    if x == y:
        return ()

    path = nx.shortest_path(ledger.proof, x, y)
    steps = []
    for a, b in zip(path, path[1:]):
        data = ledger.proof.get_edge_data(a, b)
        edge = data[min(data)]
        multiple = edge["multiple"] if edge["source"] == a else -edge["multiple"]
        steps.append(CertificateStep(a, b, edge["relation"], multiple))
    return tuple(steps)


def ell(ledger: PicardLedger, h: Union[Subgroup, int], n: Union[Subgroup, int],
        with_certificate: bool = True) -> LSpace:
    """
    l(D_H - D_N) on a genus-2 curve.

    d = |H| - |N|:
      d < 0  -> 0
      d = 0  -> 1 if D_H ~ D_N, else 0 (unproved distinctness)
      d = 1  -> undecided, reported as 0
      d = 2  -> 2 if D_H - D_N ~ K, else 1 (unproved)
      d > 2  -> d - 1
    """
    ctx = ledger.ctx
    x, y = _node(ctx, h), _node(ctx, n)
    d = ledger.degree(x) - ledger.degree(y)

    if d < 0:
        return LSpace(0, Certainty.PROVED)
    if d > CANONICAL_DEGREE:
        return LSpace(d - 1, Certainty.PROVED)
    if d == 1:
        return LSpace(0, Certainty.UNDECIDED)

    target = d // CANONICAL_DEGREE
    if difference(ledger, x, y) == KnownMultiple(target):
        certificate = zigzag_certificate(ledger, x, y) if with_certificate else ()
        return LSpace(d + 1 - target, Certainty.PROVED, certificate)
    return LSpace(d - target, Certainty.ASSUMED_DISTINCT)


def unresolved_same_order_pairs(ledger: PicardLedger, min_order: int = 3) -> List[Tuple[int, int]]:
    """Pairs of distinct P1 nodes of equal order >= min_order whose classes are not related"""
    p1 = ledger.ctx.p1_subgroups
    return [
        (i, j)
        for i in range(len(p1))
        for j in range(i + 1, len(p1))
        if p1[i].order == p1[j].order >= min_order and not ledger.connected(i, j)
    ]


def anchor_component(ledger: PicardLedger) -> List[int]:
    return [x for x in ledger.nodes if x != ANCHOR and ledger.connected(x, ANCHOR)]


def relation_counts(ledger: PicardLedger) -> Dict[str, Dict[str, int]]:
    kinds = sorted(set(ledger.fired) | set(ledger.merged))
    return {k: {"fired": ledger.fired[k], "merged": ledger.merged[k]} for k in kinds}


def ell_table(ledger: PicardLedger, nodes: Iterable[int] = None) -> Dict[Tuple[int, int], Tuple[int, Certainty]]:
    """(value, certainty) of ell for every ordered pair of nodes"""
    nodes = list(nodes) if nodes is not None else range(len(ledger.ctx.p1_subgroups))
    table = {}
    for x in nodes:
        for y in nodes:
            result = ell(ledger, x, y, with_certificate=False)
            table[(x, y)] = (result.value, result.certainty)
    return table


@lru_cache(maxsize=None)
def get_ledger(gid: AutGroupId) -> PicardLedger:
    """Frozen ledger of a catalog group, built once per process"""
    return build_ledger(get_context(gid))
