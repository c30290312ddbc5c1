"""Dense exact linear algebra over a :class:`Field`.

Matrices are 2-D numpy arrays of field elements.  Row reduction works one
column at a time with whole-row numpy updates; ``batch_rank`` and
``batch_det`` run the same elimination on a stack of matrices at once, each
item with its own pivot rows.
"""

from __future__ import annotations

import numpy as np

from ..errors import ShapeMismatch, SingularTransform
from .field import Field


def _as(F: Field, M) -> np.ndarray:
    M = np.asarray(M, dtype=F.dtype)
    if M.ndim != 2:
        raise ShapeMismatch(f"expected a matrix, got shape {M.shape}")
    return M.copy()


def rref(F: Field, M) -> tuple[np.ndarray, tuple[int, ...]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    A = _as(F, M)
    m, n = A.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(A[r:, c] != 0)[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        if A[r, c] != 1:
            A[r] = F.mul(A[r], F.inv(int(A[r, c])))
        col = A[:, c].copy()
        col[r] = 0
        rows = np.nonzero(col != 0)[0]
        if rows.size:
            A[rows] = F.sub(A[rows], F.mul(col[rows][:, None], A[r][None, :]))
        pivots.append(c)
        r += 1
    return A[:r], tuple(pivots)


def rank(F: Field, M) -> int:
    M = np.asarray(M)
    if M.size == 0:
        return 0
    return len(rref(F, M)[1])


def kernel(F: Field, M) -> "Subspace":
    """Right kernel {x : M x = 0} as a canonical subspace."""
    M = np.asarray(M, dtype=F.dtype)
    n = M.shape[1]
    if M.shape[0] == 0:
        return Subspace.full(F, n)
    R, piv = rref(F, M)
    free = [j for j in range(n) if j not in piv]
    basis = F.zeros((len(free), n))
    for t, j in enumerate(free):
        basis[t, j] = 1
        for i, pc in enumerate(piv):
            basis[t, pc] = F.neg(int(R[i, j]))
    return Subspace(F, n, basis)


def rank_rref_kernel(F: Field, M):
    """(rank, RREF rows, kernel) in one call."""
    M = np.asarray(M, dtype=F.dtype)
    R, piv = rref(F, M) if M.size else (F.zeros((0, M.shape[1])), ())
    return len(piv), R, kernel(F, M)


def solve(F: Field, A, b):
    """One solution x of A x = b (b a vector or matrix), or None."""
    A = np.asarray(A, dtype=F.dtype)
    b = np.asarray(b, dtype=F.dtype)
    vec = b.ndim == 1
    B = b[:, None] if vec else b
    m, n = A.shape
    if B.shape[0] != m:
        raise ShapeMismatch("right-hand side height differs from matrix height")
    aug = np.concatenate([A, B], axis=1)
    R, piv = rref(F, aug)
    if any(p >= n for p in piv):
        return None
    X = F.zeros((n, B.shape[1]))
    for i, pc in enumerate(piv):
        X[pc] = R[i, n:]
    return X[:, 0] if vec else X


def inverse(F: Field, M) -> np.ndarray:
    M = _as(F, M)
    n = M.shape[0]
    if M.shape[1] != n:
        raise ShapeMismatch("inverse of a non-square matrix")
    R, piv = rref(F, np.concatenate([M, F.eye(n)], axis=1))
    if tuple(piv[:n]) != tuple(range(n)):
        raise SingularTransform("matrix is singular")
    return R[:, n:]


def det(F: Field, M) -> int:
    M = np.asarray(M, dtype=F.dtype)
    return int(batch_det(F, M[None])[0])


def _elim_stack(F: Field, A: np.ndarray, track_det: bool):
    """Forward elimination on a stack (N, m, n); returns (rank, det or None)."""
    N, m, n = A.shape
    rk = np.zeros(N, dtype=np.int64)
    sign_det = F.zeros(N) + 1 if track_det else None
    fast = F.k == 1 and F.dtype is not object
    p = F.p
    rows_idx = np.arange(m)
    for c in range(n):
        col = A[:, :, c]
        cand = (col != 0) & (rows_idx[None, :] >= rk[:, None])
        has = cand.any(axis=1)
        items = np.nonzero(has)[0]
        if items.size == 0:
            continue
        piv = np.argmax(cand[items], axis=1)
        r = rk[items]
        swap = piv != r
        if swap.any():
            si, sp, sr = items[swap], piv[swap], r[swap]
            tmp = A[si, sr].copy()
            A[si, sr] = A[si, sp]
            A[si, sp] = tmp
            if track_det:
                sign_det[si] = F.neg(sign_det[si])
        prow = A[items, r]
        pval = prow[:, c]
        if track_det:
            sign_det[items] = F.mul(sign_det[items], pval)
        inv = F.inv(pval)
        if fast:
            prow = prow * inv[:, None] % p
        else:
            prow = F.mul(prow, inv[:, None])
        factors = A[items, :, c].copy()
        factors[rows_idx[None, :] <= r[:, None]] = 0
        if fast:
            A[items] = (A[items] - factors[:, :, None] * prow[:, None, :]) % p
        else:
            A[items] = F.sub(A[items], F.mul(factors[:, :, None], prow[:, None, :]))
        rk[items] += 1
    return rk, sign_det


def batch_rank(F: Field, stack, chunk: int = 1 << 21) -> np.ndarray:
    """Ranks of every matrix in a stack of shape (N, m, n)."""
    S = np.asarray(stack, dtype=F.dtype)
    N, m, n = S.shape
    if m == 0 or n == 0 or N == 0:
        return np.zeros(N, dtype=np.int64)
    if m < n:
        S = np.swapaxes(S, 1, 2)
        m, n = n, m
    per = max(1, chunk // (m * n))
    out = np.empty(N, dtype=np.int64)
    for start in range(0, N, per):
        block = S[start : start + per].copy()
        out[start : start + per] = _elim_stack(F, block, False)[0]
    return out


def batch_det(F: Field, stack) -> np.ndarray:
    S = np.asarray(stack, dtype=F.dtype).copy()
    N, m, n = S.shape
    if m != n:
        raise ShapeMismatch("determinant of a non-square matrix")
    if n == 0:
        return F.zeros(N) + 1
    rk, d = _elim_stack(F, S, True)
    d = np.asarray(d)
    d[rk < n] = 0
    return d


class Subspace:
    """Subspace of K^n held by its canonical RREF basis (rows)."""

    __slots__ = ("field", "n", "basis", "pivots")

    def __init__(self, F: Field, n: int, vectors=None):
        self.field = F
        self.n = n
        if vectors is None or np.asarray(vectors).size == 0:
            self.basis = F.zeros((0, n))
            self.pivots = ()
        else:
            V = np.asarray(vectors, dtype=F.dtype).reshape(-1, n)
            self.basis, self.pivots = rref(F, V)

    @classmethod
    def full(cls, F: Field, n: int) -> "Subspace":
        return cls(F, n, F.eye(n))

    @classmethod
    def zero(cls, F: Field, n: int) -> "Subspace":
        return cls(F, n)

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.field == other.field
            and self.n == other.n
            and self.pivots == other.pivots
            and np.array_equal(self.basis, other.basis)
        )

    def __hash__(self):
        return hash((self.n, self.pivots, tuple(int(x) for x in self.basis.ravel())))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, n={self.n}, pivots={self.pivots})"

    def contains(self, v) -> bool:
        v = np.asarray(v, dtype=self.field.dtype).reshape(-1, self.n)
        return rank(self.field, np.concatenate([self.basis, v])) == self.dim

    def contains_subspace(self, other: "Subspace") -> bool:
        return self.contains(other.basis) if other.dim else True

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace(self.field, self.n, np.concatenate([self.basis, other.basis]))

    def intersect(self, other: "Subspace") -> "Subspace":
        # annihilator of the sum of annihilators
        ann = self.annihilator() + other.annihilator()
        return ann.annihilator()

    def annihilator(self) -> "Subspace":
        """{y : <y, v> = 0 for all v in self}."""
        if self.dim == 0:
            return Subspace.full(self.field, self.n)
        return kernel(self.field, self.basis)

    def complement_indices(self) -> list[int]:
        """Standard coordinates spanning a complement (the non-pivot columns)."""
        return [j for j in range(self.n) if j not in self.pivots]

    def complement(self) -> "Subspace":
        F = self.field
        idx = self.complement_indices()
        E = F.zeros((len(idx), self.n))
        for t, j in enumerate(idx):
            E[t, j] = 1
        return Subspace(F, self.n, E)

    def quotient_map(self) -> np.ndarray:
        """Matrix P of shape (n - dim, n) with kernel exactly this subspace."""
        F = self.field
        idx = self.complement_indices()
        P = F.zeros((len(idx), self.n))
        for t, j in enumerate(idx):
            P[t, j] = 1
            for i, pc in enumerate(self.pivots):
                P[t, pc] = F.neg(int(self.basis[i, j]))
        return P


def complete_basis(F: Field, vectors, n: int) -> np.ndarray:
    """Extend independent rows to a basis of K^n using standard vectors."""
    if n == 0:
        return F.zeros((0, 0))
    V = np.asarray(vectors, dtype=F.dtype).reshape(-1, n)
    rows = list(V)
    cur = rank(F, V) if V.size else 0
    for j in range(n):
        if cur == n:
            break
        e = F.zeros(n)
        e[j] = 1
        trial = np.array(rows + [e], dtype=F.dtype)
        if rank(F, trial) > cur:
            rows.append(e)
            cur += 1
    return np.array(rows, dtype=F.dtype).reshape(-1, n)
