"""Exact finite-field arithmetic, linear algebra and enumeration."""

from .enumeration import (
    all_projective,
    all_vectors,
    check_budget,
    enumerate_items,
    gaussian_binomial,
    projective,
    projective_blocks,
    projective_count,
    proper_subspace_count,
    subspace_blocks,
    subspace_count,
    subspaces,
    vector_blocks,
    vectors,
)
from .field import Field, make_field
from .linalg import (
    Subspace,
    batch_det,
    batch_rank,
    complete_basis,
    det,
    inverse,
    kernel,
    rank,
    rank_rref_kernel,
    rref,
    solve,
)

__all__ = [
    "Field", "make_field", "Subspace", "rref", "rank", "kernel", "rank_rref_kernel",
    "solve", "inverse", "det", "batch_rank", "batch_det", "complete_basis",
    "vectors", "vector_blocks", "all_vectors", "projective", "projective_blocks",
    "all_projective", "projective_count", "subspaces", "subspace_blocks",
    "subspace_count", "gaussian_binomial", "enumerate_items", "check_budget",
    "proper_subspace_count",
]
