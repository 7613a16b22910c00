"""
Finite groups as Cayley tables.

A group is built once from permutation or 2x2 matrix seeds; afterwards every
element is an index into the table and the seeds are dropped.
"""

import logging
import re
from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Any, Callable, Dict, Hashable, List, Sequence, Tuple

import numpy as np
from sympy.combinatorics import Permutation

from ..core.config import get_settings
from ..core.errors import ClosureTooLarge, NotInvertible

logger = logging.getLogger(__name__)

FIELD_SIZE = 3

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """
    Cayley-table group with labeled elements.

    Element 0 is the identity. Values are never mutated after construction,
    so a FiniteGroup can be shared freely across threads.
    """

    name: str
    order: int
    cayley: np.ndarray
    inverse: Tuple[int, ...]
    identity: int
    element_labels: Tuple[str, ...]

    @cached_property
    def rows(self) -> Tuple[Tuple[int, ...], ...]:
        """The Cayley table as plain tuples, for tight Python loops"""
        return tuple(tuple(row) for row in self.cayley.tolist())

    @cached_property
    def element_orders(self) -> Tuple[int, ...]:
        orders = []
        for x in range(self.order):
            k, y = 1, x
            while y != self.identity:
                y = self.rows[y][x]
                k += 1
            orders.append(k)
        return tuple(orders)

    def mul(self, a: int, b: int) -> int:
        return self.rows[a][b]

    def conjugate(self, x: int, g: int) -> int:
        """g x g^-1"""
        return self.rows[self.rows[g][x]][self.inverse[g]]

    def label(self, x: int) -> str:
        return self.element_labels[x]

    def index_of_label(self, label: str) -> int:
        try:
            return self.element_labels.index(label)
        except ValueError:
            raise KeyError(f"{self.name} has no element labeled {label!r}") from None

    @property
    def exponent(self) -> int:
        result = 1
        for k in self.element_orders:
            result = result * k // gcd(result, k)
        return result

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name!r}, order={self.order})"


def parse_cycles(text: str, degree: int) -> Permutation:
    """
    Parse 1-based cycle notation such as "(1 2 3)(4 5)" into a permutation
    of {0..degree-1}. "()" is the identity.
    """
    cycles = []
    for body in _CYCLE_RE.findall(text):
        points = [int(p) - 1 for p in body.replace(",", " ").split()]
        if len(points) > 1:
            cycles.append(points)
    if not cycles and "(" not in text:
        raise ValueError(f"Not a permutation in cycle notation: {text!r}")
    return Permutation(cycles, size=degree)


def cycle_label(perm: Permutation) -> str:
    cycles = perm.cyclic_form
    if not cycles:
        return "()"
    return "".join("(" + " ".join(str(p + 1) for p in cycle) + ")" for cycle in cycles)


def permutation_degree(texts: Sequence[str]) -> int:
    points = [int(p) for body in _CYCLE_RE.findall(" ".join(texts))
              for p in body.replace(",", " ").split()]
    return max(points, default=1)


def matrix_mod3(entries: Sequence[int]) -> np.ndarray:
    """Row-major 4 entries -> 2x2 matrix over the 3-element field"""
    matrix = np.asarray(entries, dtype=np.int64).reshape(2, 2) % FIELD_SIZE
    det = int(matrix[0, 0] * matrix[1, 1] - matrix[0, 1] * matrix[1, 0]) % FIELD_SIZE
    if det == 0:
        raise NotInvertible(f"Matrix {matrix.tolist()} is singular mod {FIELD_SIZE}")
    return matrix


def _matrix_label(matrix: np.ndarray) -> str:
    (a, b), (c, d) = matrix.tolist()
    return f"[[{a},{b}],[{c},{d}]]"


class _Seeds:
    """Multiplication, identity, hashing and labels for one seed representation"""

    def __init__(self, identity: Any, mul: Callable, key: Callable, label: Callable):
        self.identity = identity
        self.mul = mul
        self.key = key
        self.label = label


def _seeds_for(gens: Sequence[Any]) -> _Seeds:
    if all(isinstance(g, Permutation) for g in gens):
        degree = max(g.size for g in gens)
        return _Seeds(
            identity=Permutation([], size=degree),
            # sympy composes left to right: (p*q)(i) = q(p(i))
            mul=lambda p, q: p * q,
            key=lambda p: tuple(p.array_form),
            label=cycle_label,
        )
    return _Seeds(
        identity=np.eye(2, dtype=np.int64),
        mul=lambda a, b: (a @ b) % FIELD_SIZE,
        key=lambda m: tuple(int(v) for v in m.flatten()),
        label=_matrix_label,
    )


def build_from_generators(gens: Sequence[Any], name: str, cap: int = None) -> FiniteGroup:
    """
    Close a generator set and tabulate the resulting group.

    Args:
        gens: sympy Permutations, or 2x2 matrices over the 3-element field
              (arrays or row-major 4-entry sequences)
        name: display name of the group
        cap: safety cap on the closure order (default from settings)

    Returns:
        FiniteGroup with element 0 the identity and elements numbered
        breadth-first from the identity over the sorted generators.
    """
    if not gens:
        raise ValueError("At least one generator is required")
    cap = cap if cap is not None else get_settings().closure_cap

    if not all(isinstance(g, Permutation) for g in gens):
        gens = [matrix_mod3(np.asarray(g).flatten()) for g in gens]
    seeds = _seeds_for(gens)
    gens = sorted(gens, key=seeds.key)

    elements: List[Any] = [seeds.identity]
    index: Dict[Hashable, int] = {seeds.key(seeds.identity): 0}
    position = 0
    while position < len(elements):
        x = elements[position]
        position += 1
        for g in gens:
            y = seeds.mul(x, g)
            k = seeds.key(y)
            if k in index:
                continue
            index[k] = len(elements)
            elements.append(y)
            if len(elements) > cap:
                raise ClosureTooLarge(f"Closure of {name} exceeds {cap} elements")

    order = len(elements)
    cayley = np.empty((order, order), dtype=np.int64)
    for i, x in enumerate(elements):
        for j, y in enumerate(elements):
            cayley[i, j] = index[seeds.key(seeds.mul(x, y))]

    inverse = tuple(int(np.flatnonzero(cayley[i] == 0)[0]) for i in range(order))
    logger.debug("Built %s: %d elements from %d generators", name, order, len(gens))

    return FiniteGroup(
        name=name,
        order=order,
        cayley=cayley,
        inverse=inverse,
        identity=0,
        element_labels=tuple(seeds.label(x) for x in elements),
    )


def check_group_axioms(group: FiniteGroup) -> List[str]:
    """
    Exhaustively check the group axioms on the Cayley table.

    Returns a list of violated axioms (empty when the table is a group).
    """
    table = group.cayley
    n = group.order
    full = np.arange(n)
    problems = []

    if not (np.array_equal(table[group.identity], full)
            and np.array_equal(table[:, group.identity], full)):
        problems.append("identity")
    if not all(table[x, group.inverse[x]] == group.identity for x in range(n)):
        problems.append("inverse")
    if not (np.all(np.sort(table, axis=1) == full)
            and np.all(np.sort(table, axis=0) == full[:, None])):
        problems.append("latin-square")

    # (ab)c == a(bc) over all triples
    left = table[table]
    right = table[full[:, None, None], table[None, :, :]]
    if not np.array_equal(left, right):
        problems.append("associativity")

    return problems
