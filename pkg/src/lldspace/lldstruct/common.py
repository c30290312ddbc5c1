"""Helpers shared by the structural predicates and decompositions."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from ..exactfield import Field, complete_basis, inverse, kernel, rank, solve


@dataclass
class CheckResult:
    """Outcome of a structural check.

    ``holds`` is the verdict, ``witness`` a certificate of failure (or of
    success, for constructive checks) and ``tags`` records how the verdict
    was reached: exact or randomized, budgets, seeds and unmet hypotheses.
    """

    holds: bool
    witness: Any = None
    tags: dict = field(default_factory=dict)
    detail: str = ""

    def __bool__(self):
        return bool(self.holds)


def lead_index(v) -> int:
    nz = np.nonzero(np.asarray(v) != 0)[0]
    return int(nz[0])


def hyperplane_bases(F: Field, Y: np.ndarray) -> np.ndarray:
    """For projective vectors y (rows, leading entry 1), bases of ker y.

    Returns shape (N, k-1, k); row j-th of item t is e_j - y_j e_i where i
    is the leading index of y.  Read as a (k-1) x k matrix, the same array
    is a surjection K^k -> K^{k-1} whose kernel is the line K y.
    """
    Y = np.asarray(Y, dtype=F.dtype)
    N, k = Y.shape
    out = F.zeros((N, k - 1, k))
    if N == 0:
        return out
    leads = np.argmax(Y != 0, axis=1)
    for i in np.unique(leads):
        sel = np.nonzero(leads == i)[0]
        others = [j for j in range(k) if j != i]
        for t, j in enumerate(others):
            out[sel, t, j] = 1
            out[sel, t, i] = F.neg(Y[sel, j])
    return out


def normalize_to_jr(F: Field, A: np.ndarray, x=None):
    """Invertible P, Q with P A Q = J_r; if x lies in ker A, Q e_n = x.

    Returns (P, Q, r).
    """
    m, n = A.shape
    ker = kernel(F, A)
    r = n - ker.dim
    kb = ker.basis
    if x is not None and ker.dim:
        x = np.asarray(x, dtype=F.dtype)
        kb = np.concatenate([_extend_within(F, ker, x), x[None, :]])
    comp = complete_basis(F, kb, n)[len(kb):]
    Q = np.concatenate([comp, kb]).T.copy()
    cols = F.matmul(A, Q)[:, :r].T
    Pinv = complete_basis(F, cols, m).T.copy()
    return inverse(F, Pinv), Q, r


def _extend_within(F: Field, sub, x) -> np.ndarray:
    """Vectors of ``sub`` that together with x form a basis of ``sub``."""
    chosen = [x]
    for v in sub.basis:
        if rank(F, np.array(chosen + [v])) > len(chosen):
            chosen.append(v)
    return np.array(chosen[1:], dtype=F.dtype).reshape(-1, sub.n)


def jr(F: Field, m: int, n: int, r: int) -> np.ndarray:
    J = F.zeros((m, n))
    for i in range(r):
        J[i, i] = 1
    return J


def block_diag(F: Field, *blocks) -> np.ndarray:
    size_r = sum(b.shape[0] for b in blocks)
    size_c = sum(b.shape[1] for b in blocks)
    out = F.zeros((size_r, size_c))
    i = j = 0
    for b in blocks:
        out[i : i + b.shape[0], j : j + b.shape[1]] = b
        i += b.shape[0]
        j += b.shape[1]
    return out


def adapted_basis_inverse(F: Field, vectors, n: int):
    """(G, G^{-1}) where G's first columns are the given independent vectors."""
    V = np.asarray(vectors, dtype=F.dtype).reshape(-1, n)
    G = complete_basis(F, V, n).T.copy()
    return G, inverse(F, G)


def coefficient_solutions(F: Field, Cb: np.ndarray, targets: np.ndarray):
    """Coefficient vectors lam with lam @ Cb = target, one per target row."""
    out = []
    for t in targets:
        sol = solve(F, Cb.T, t)
        if sol is None:
            return None
        out.append(sol)
    return np.array(out, dtype=F.dtype).reshape(len(targets), Cb.shape[0])


def is_alternating(F: Field, M) -> bool:
    M = np.asarray(M, dtype=F.dtype)
    return bool(np.all(np.diagonal(M, axis1=-2, axis2=-1) == 0)) and bool(
        np.array_equal(np.swapaxes(M, -1, -2), F.neg(M))
    )


def binom(n: int, k: int) -> int:
    from math import comb

    return comb(n, k) if 0 <= k <= n else 0


def rank_of(F: Field, M) -> int:
    return rank(F, M)
