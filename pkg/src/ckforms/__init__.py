"""Exact verification and enumeration engine for standard compact
Clifford-Klein forms on two-factor semisimple homogeneous spaces.

Subpackages:
  exactlin    exact rational linear algebra
  liealg      matrix Lie algebras, Killing forms, Cartan involutions
  realforms   real form constructors and spin representation frames
  embeddings  the embedding catalog (blocks, realifications, spin, diagonals)
  rootweyl    restricted root data and little Weyl groups
  cartanproj  Cartan projections and properness-gap experiments
  criteria    the decomposition and compactness tests, triple classification
  enumerate   family enumeration and table emission
  cli         command line interface
"""

__version__ = "0.1.0"

SCHEMA_VERSION = 1
