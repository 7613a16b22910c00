"""genus2-galois - Galois-subspace decompositions for genus-2 curves with many automorphisms"""

__version__ = "0.1.0"
