"""
Finite-group engine: Cayley-table groups, subgroup enumeration, isomorphism
labels and the subgroup lattice.
"""

from .finite_group import FiniteGroup, build_from_generators, check_group_axioms, parse_cycles
from .fingerprint import IsoFingerprint, collision_audit, find_isomorphism, fingerprint, iso_label
from .lattice import ConjugacyClass, SubgroupLattice, subgroup_lattice
from .subgroups import Subgroup, center, enumerate_subgroups, generated_subgroup, intersect

__all__ = [
    "FiniteGroup",
    "build_from_generators",
    "check_group_axioms",
    "parse_cycles",
    "IsoFingerprint",
    "collision_audit",
    "find_isomorphism",
    "fingerprint",
    "iso_label",
    "ConjugacyClass",
    "SubgroupLattice",
    "subgroup_lattice",
    "Subgroup",
    "center",
    "enumerate_subgroups",
    "generated_subgroup",
    "intersect",
]
