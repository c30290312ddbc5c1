"""Structural predicates and decompositions of LLD operator spaces."""

from .common import CheckResult
from .decompose import (
    CoreSplit,
    OneDimSplit,
    ThinDecomposition,
    alternating_core_split,
    colinearity_hypothesis,
    one_dim_split,
    r_reduce_normalize,
    thin_decomposition,
)
from .predicates import (
    BlockShape,
    Indices,
    column_property,
    decomposition_inequality,
    flanders_atkinson_check,
    indices,
    minimal_clld,
    primitive,
    semiprimitive,
)

__all__ = [
    "CheckResult", "BlockShape", "Indices", "indices", "minimal_clld", "semiprimitive",
    "primitive", "column_property", "flanders_atkinson_check", "decomposition_inequality",
    "r_reduce_normalize", "one_dim_split", "thin_decomposition", "colinearity_hypothesis",
    "alternating_core_split", "OneDimSplit", "ThinDecomposition", "CoreSplit",
]
