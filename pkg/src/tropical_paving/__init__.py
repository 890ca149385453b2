"""Zero-dimensional tropical ideals over the Boolean semiring, via invariant d-partitions.

Submodules:

* :mod:`.lattices` - HNF/SNF lattice arithmetic and quotient groups Z^n / L
* :mod:`.partitions` - finitely generated translation-invariant d-partitions
* :mod:`.matroids` - finite matroids and brute-force axiom checkers
* :mod:`.ideals` - tropical ideals, membership, circuits, restriction, extension
* :mod:`.realizability` - realization search over small finite fields
* :mod:`.textio` - text formats; :mod:`.cli` - command line
"""

from .errors import DimensionError, ResourceLimitError, ValidationError
from .ideals import (
    TropicalIdeal,
    binomial_lattice,
    circuits_in_window,
    contains,
    degree2_from_lattice,
    degree3_from_pair,
    extend_matroid,
    m_s_ideal,
    rank_oracle,
    remark_example,
    restrict_matroid,
    restrict_vars,
    uniform_ideal,
)
from .lattices import IntegerLattice, QuotientGroup, hnf, intersect, lattice_sum, member, snf_quotient
from .matroids import FiniteMatroid, non_pappus
from .partitions import AffineBlock, FiniteBlock, InvariantPartition, Window

__version__ = "0.1.0"

__all__ = [
    "AffineBlock",
    "DimensionError",
    "FiniteBlock",
    "FiniteMatroid",
    "IntegerLattice",
    "InvariantPartition",
    "QuotientGroup",
    "ResourceLimitError",
    "TropicalIdeal",
    "ValidationError",
    "Window",
    "binomial_lattice",
    "circuits_in_window",
    "contains",
    "degree2_from_lattice",
    "degree3_from_pair",
    "extend_matroid",
    "hnf",
    "intersect",
    "lattice_sum",
    "m_s_ideal",
    "member",
    "non_pappus",
    "rank_oracle",
    "remark_example",
    "restrict_matroid",
    "restrict_vars",
    "snf_quotient",
    "uniform_ideal",
]
