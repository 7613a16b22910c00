"""
Genus-2 curves: catalog contexts, the divisor-class ledger and the
decomposition of Galois-subspace loci.
"""

from .decomp import (
    ComponentRecord,
    DecompositionReport,
    DecompositionTable,
    decompose,
    decompose_by_order,
    decompose_table,
    verify_theorem1,
    verify_theorem2,
)
from .genus2 import AutGroupId, CurveContext, catalog, get_context, hyperelliptic_involution, quotient_is_p1, very_ample
from .picard import PicardLedger, build_ledger, collect_relations, difference, ell, zigzag_certificate
