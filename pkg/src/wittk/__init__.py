"""Exact computation of relative K-groups of k<x_1..x_n>/(m^a) via truncation poset Witt vectors."""

__version__ = "0.1.0"

from .abgroup import AbHom, FinAbGroup, cokernel, kernel, smith_normal_form
from .homology import homology, iota_check
from .rational import kgroups_rational, rational_v_matrix
from .trunc import TruncationPoset, TruncationSet, build_poset, vmap_components
from .witt import (
    CoefficientRing,
    Integers,
    IntegersMod,
    PosetWittVector,
    PrimeField,
    Rationals,
    WittVector,
    frobenius,
    generalized_verschiebung,
    ghost,
    teichmuller,
    verschiebung,
)
from .wittfp import decompose, encode, kgroups_fp, structure, verschiebung_matrix
from .words import (
    BlockClass,
    Word,
    aperiodic_necklaces,
    block_period,
    canonical_form,
    fiber,
    necklace_count,
)
