"""Alternating matrices and operator spaces of the alternating kind.

An alternating n x n matrix is stored through its strict upper triangle,
read row by row: (1,2), (1,3), ..., (1,n), (2,3), ...  In characteristic 2
"alternating" means symmetric with zero diagonal and this is checked
explicitly.  A subspace V of alternating matrices defines the operator
space of x -> (A_1 x, ..., A_m x)^T over a basis A_i of V; that is the
operator space of the alternating bilinear map U x U -> (U ^ U) / V^perp.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb

import numpy as np

from .errors import (
    BudgetExceeded,
    DimensionTooLarge,
    InvariantViolation,
    NotAlternating,
    NotAlternatingForm,
    OddDimension,
    ShapeMismatch,
)
from .exactfield import Field, batch_rank, kernel, projective_blocks, projective_count, rank, rref
from .matspace import DEFAULT_BUDGET, MatrixSpace, trk
from .rng import SplitMix64

PFAFFIAN_MAX_N = 8


def pair_indices(n: int) -> list[tuple[int, int]]:
    """Positions (i, j), i < j, in lexicographic order."""
    return list(combinations(range(n), 2))


def is_alternating(F: Field, M) -> bool:
    M = np.asarray(M, dtype=F.dtype)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        return False
    return bool(not np.diagonal(M).any() and np.array_equal(M.T, F.neg(M)))


def alt_vector(F: Field, M) -> np.ndarray:
    """Strict upper triangle of an alternating matrix."""
    M = np.asarray(M, dtype=F.dtype)
    if not is_alternating(F, M):
        raise NotAlternating("matrix is not alternating")
    i, j = np.triu_indices(M.shape[0], 1)
    return M[i, j].copy()


def alt_matrix(F: Field, n: int, v) -> np.ndarray:
    """The alternating matrix with strict upper triangle v."""
    v = np.asarray(v, dtype=F.dtype)
    M = F.zeros((n, n))
    i, j = np.triu_indices(n, 1)
    M[i, j] = v
    M[j, i] = F.neg(v)
    return M


def elementary(F: Field, n: int, i: int, j: int) -> np.ndarray:
    """A_ij = E_ij - E_ji (0-based indices)."""
    M = F.zeros((n, n))
    M[i, j] = 1
    M[j, i] = F.neg(1)
    return M


class AltSubspace:
    """A linear subspace of Mata_n(K), stored by strict upper triangles."""

    __slots__ = ("field", "n", "vectors")

    def __init__(self, F: Field, n: int, matrices=()):
        self.field = F
        self.n = int(n)
        vecs = [alt_vector(F, self._check(M)) for M in matrices]
        self._set(vecs)

    def _check(self, M):
        M = np.asarray(M, dtype=self.field.dtype)
        if M.shape != (self.n, self.n):
            raise ShapeMismatch(f"expected {self.n}x{self.n}, got {M.shape}")
        return M

    def _set(self, vecs):
        N = comb(self.n, 2)
        if vecs and N:
            self.vectors = rref(self.field, np.array(vecs, dtype=self.field.dtype))[0]
        else:
            self.vectors = self.field.zeros((0, N))

    @classmethod
    def from_vectors(cls, F: Field, n: int, vectors) -> "AltSubspace":
        out = cls(F, n)
        V = np.asarray(vectors, dtype=F.dtype).reshape(-1, comb(n, 2))
        out._set(list(V))
        return out

    @classmethod
    def full(cls, F: Field, n: int) -> "AltSubspace":
        return cls(F, n, [elementary(F, n, i, j) for i, j in pair_indices(n)])

    @property
    def d(self) -> int:
        return self.vectors.shape[0]

    @property
    def basis(self) -> np.ndarray:
        """Basis matrices, shape (d, n, n)."""
        F = self.field
        out = F.zeros((self.d, self.n, self.n))
        i, j = np.triu_indices(self.n, 1)
        out[:, i, j] = self.vectors
        out[:, j, i] = F.neg(self.vectors)
        return out

    def __eq__(self, other):
        return (
            isinstance(other, AltSubspace)
            and self.field == other.field
            and self.n == other.n
            and np.array_equal(self.vectors, other.vectors)
        )

    def __hash__(self):
        return hash((self.field, self.n, self.vectors.tobytes()))

    def __repr__(self):
        return f"AltSubspace({self.field}, n={self.n}, d={self.d})"

    def contains(self, M) -> bool:
        v = alt_vector(self.field, self._check(M))
        return rank(self.field, np.concatenate([self.vectors, v[None]])) == self.d

    def as_matrix_space(self) -> MatrixSpace:
        return MatrixSpace(self.field, self.n, self.n, list(self.basis))

    def congruent_image(self, P) -> "AltSubspace":
        """{P^T A P : A in V}."""
        F = self.field
        P = np.asarray(P, dtype=F.dtype)
        mats = F.matmul(F.matmul(P.T, self.basis), P) if self.d else []
        return AltSubspace(F, self.n, list(mats))


# -- pfaffian -----------------------------------------------------------------

def _pf(F: Field, M: np.ndarray) -> int:
    n = M.shape[0]
    if n == 0:
        return 1
    if n == 2:
        return int(M[0, 1])
    total = 0
    for j in range(1, n):
        a = int(M[0, j])
        if a == 0:
            continue
        keep = [k for k in range(1, n) if k != j]
        sub = _pf(F, M[np.ix_(keep, keep)])
        term = F.mul(a, sub)
        total = F.add(total, term if j % 2 == 1 else F.neg(term))
    return int(total)


def pfaffian(F: Field, M) -> int:
    """Pfaffian by expansion along the first row; Pf^2 = det."""
    M = np.asarray(M, dtype=F.dtype)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ShapeMismatch("pfaffian needs a square matrix")
    n = M.shape[0]
    if n % 2:
        raise OddDimension(f"pfaffian of odd size {n}")
    if not is_alternating(F, M):
        raise NotAlternating("pfaffian needs an alternating matrix")
    if n > PFAFFIAN_MAX_N:
        raise DimensionTooLarge(f"pfaffian expansion is capped at n = {PFAFFIAN_MAX_N}")
    return _pf(F, M)


def pfaffian4_batch(F: Field, mats) -> np.ndarray:
    """af - be + cd for a stack of 4 x 4 alternating matrices."""
    M = np.asarray(mats, dtype=F.dtype)
    a, b, c = M[:, 0, 1], M[:, 0, 2], M[:, 0, 3]
    d, e, f = M[:, 1, 2], M[:, 1, 3], M[:, 2, 3]
    return F.add(F.sub(F.mul(a, f), F.mul(b, e)), F.mul(c, d))


# -- pairing ------------------------------------------------------------------

def pairing(F: Field, A, B) -> int:
    """<A|B> = sum over i < j of a_ij b_ij."""
    va, vb = alt_vector(F, A), alt_vector(F, B)
    return int(F.matmul(va[None, :], vb[:, None])[0, 0])


def orthocomplement(V: AltSubspace) -> AltSubspace:
    F = V.field
    N = comb(V.n, 2)
    if V.d == 0:
        return AltSubspace.from_vectors(F, V.n, F.eye(N))
    return AltSubspace.from_vectors(F, V.n, kernel(F, V.vectors).basis)


def pairing_and_orthocomplement(V: AltSubspace):
    """(Gram matrix of the basis of V, V^perp)."""
    F = V.field
    gram = F.matmul(V.vectors, V.vectors.T) if V.d else F.zeros((0, 0))
    return gram, orthocomplement(V)


# -- operator spaces of the alternating kind ----------------------------------

def operator_space_from_alt(H: AltSubspace) -> MatrixSpace:
    """Space spanned by the m x n matrices whose i-th row is e_j^T A_i."""
    F = H.field
    B = H.basis  # (m, n, n)
    gens = [B[:, j, :].copy() for j in range(H.n)]
    return MatrixSpace(F, H.d, H.n, gens)


def operator_space_from_matrices(F: Field, mats) -> MatrixSpace:
    """Operator space of an ordered list of alternating matrices A_1..A_m.

    The generic matrix has row k equal to x^T A_k, so the row order follows
    the list order (AltSubspace forgets it).
    """
    B = np.asarray(mats, dtype=F.dtype)
    for A in B:
        if not is_alternating(F, A):
            raise NotAlternating("operator space needs alternating matrices")
    n = B.shape[-1]
    return MatrixSpace(F, B.shape[0], n, [B[:, j, :].copy() for j in range(n)])


def wedge_space(F: Field, n: int) -> MatrixSpace:
    """Operator space of the standard pairing U x U -> U ^ U, U = K^n."""
    if n < 2:
        raise ShapeMismatch("wedge space needs n >= 2")
    return operator_space_from_alt(AltSubspace.full(F, n))


@dataclass(frozen=True)
class Regularity:
    incompressible: bool
    fully_regular: bool
    witness: tuple | None


def regularity_checks(H: AltSubspace) -> Regularity:
    """Incompressible iff the basis matrices have no common kernel vector."""
    F = H.field
    if H.d == 0:
        ker = F.eye(H.n)
    else:
        ker = kernel(F, H.basis.reshape(-1, H.n)).basis
    if len(ker):
        return Regularity(False, False, tuple(int(v) for v in ker[0]))
    return Regularity(True, True, None)


def alt_transitivity(H: AltSubspace, budget: int = DEFAULT_BUDGET, seed: int = 0):
    """(trk H, attaining x) with H seen as the maps x -> H x.

    Raises InvariantViolation if H is incompressible, dim H > 1 + C(n-2, 2),
    q >= n - 1 and still trk H != n - 1.
    """
    F = H.field
    if F.q**H.n > budget:
        raise BudgetExceeded("vectors", F.q**H.n, budget)
    S = H.as_matrix_space()
    res = trk(S, budget, seed)
    value = res.value if H.d else 0
    x = res.witness if H.d else None
    n = H.n
    if (regularity_checks(H).incompressible and H.d > 1 + comb(n - 2, 2)
            and F.q >= n - 1 and value != n - 1):
        raise InvariantViolation(f"trk = {value} but the transitivity hypotheses hold")
    return value, x


@dataclass(frozen=True)
class AltPrimitivity:
    """Witness (x, basis of U0) of non-primitivity, or None."""

    witness: tuple | None
    hypotheses_met: bool
    cross_check: str = "skipped"
    tags: dict = field(default_factory=dict)


def alt_primitivity_criterion(H: AltSubspace, budget: int = DEFAULT_BUDGET, role: str = "V",
                              seed: int = 0) -> AltPrimitivity:
    """Look for x != 0 and a hyperplane U0 containing x with x ^ U0 inside W.

    ``role`` says whether H is V (then W = H^perp) or W (then V = H^perp).
    For u in K^n, x ^ u lies in W = V^perp iff x^T B u = 0 for every B in V,
    so Z_x = {u : x ^ u in W} is the kernel of the operator space element
    at x, and a witness exists iff that element has rank <= 1.
    """
    from .lldstruct import primitive

    F = H.field
    V = H if role == "V" else orthocomplement(H)
    n = V.n
    S = operator_space_from_alt(V)
    hyp = V.d > 2 + comb(n - 2, 2) and F.q >= n - 1
    tags = {"hypotheses": "met" if hyp else "hypothesis-unmet", "role": role}
    if projective_count(F, n) > budget:
        raise BudgetExceeded("projective points", projective_count(F, n), budget)
    witness = None
    for X in projective_blocks(F, n):
        mats = _elements_at(V, X)
        r = batch_rank(F, mats)
        hit = np.nonzero(r <= 1)[0]
        if len(hit):
            x = X[hit[0]]
            Z = kernel(F, mats[hit[0]])
            chosen = [x]
            for v in Z.basis:
                if len(chosen) == n - 1:
                    break
                if rank(F, np.array(chosen + [v])) > len(chosen):
                    chosen.append(v)
            U0 = np.array(chosen, dtype=F.dtype)
            witness = (tuple(int(v) for v in x), U0)
            break
    cross = "skipped"
    if S.is_enumerable(budget) and regularity_checks(V).incompressible:
        prim = primitive(S, budget, seed).holds
        cross = "agree" if prim == (witness is None) else "disagree"
        if cross == "disagree" and hyp:
            raise InvariantViolation("criterion and direct primitivity check disagree")
    return AltPrimitivity(witness, hyp, cross, tags)


def _elements_at(V: AltSubspace, X) -> np.ndarray:
    """For each x, the d x n matrix with rows x^T B_k."""
    F = V.field
    B = V.basis
    return F.matmul(X[:, None, None, :], B[None])[:, :, 0, :]


# -- trilinear forms -------------------------------------------------------------

@dataclass(frozen=True)
class TrilinearSpace:
    space: MatrixSpace
    fully_regular: bool
    witness: tuple | None


def from_trilinear(F: Field, T) -> TrilinearSpace:
    """Operator space of x -> matrix of T(x, -, -) for an alternating T."""
    T = np.asarray(T, dtype=F.dtype)
    n = T.shape[0]
    if T.shape != (n, n, n):
        raise ShapeMismatch("trilinear coefficients must be n x n x n")
    ok = (
        not np.einsum("iij->ij", T).any()
        and not np.einsum("iji->ij", T).any()
        and not np.einsum("jii->ij", T).any()
        and np.array_equal(np.transpose(T, (1, 0, 2)), F.neg(T))
        and np.array_equal(np.transpose(T, (0, 2, 1)), F.neg(T))
    )
    if not ok:
        raise NotAlternatingForm("coefficients are not alternating")
    space = MatrixSpace(F, n, n, [T[i] for i in range(n)])
    ker = kernel(F, T.reshape(n, -1).T)
    if ker.dim:
        return TrilinearSpace(space, False, tuple(int(v) for v in ker.basis[0]))
    return TrilinearSpace(space, True, None)


def random_alt_subspace(F: Field, n: int, dim: int, rng: SplitMix64) -> AltSubspace:
    """Row space of a random dim x C(n, 2) matrix of full rank."""
    N = comb(n, 2)
    while True:
        R = rng.integers(F.q, (dim, N)).astype(F.dtype)
        if rank(F, R) == dim:
            return AltSubspace.from_vectors(F, n, R)


def wedge_coordinates(F: Field, x, u) -> np.ndarray:
    """Coordinates of x ^ u: x_i u_j - x_j u_i for i < j."""
    x = np.asarray(x, dtype=F.dtype)
    u = np.asarray(u, dtype=F.dtype)
    i, j = np.triu_indices(len(x), 1)
    return F.sub(F.mul(x[i], u[j]), F.mul(x[j], u[i]))


__all__ = [
    "AltSubspace", "pfaffian", "pfaffian4_batch", "pairing", "orthocomplement",
    "pairing_and_orthocomplement", "operator_space_from_alt", "operator_space_from_matrices",
    "wedge_space", "regularity_checks", "alt_transitivity", "alt_primitivity_criterion", "from_trilinear",
    "random_alt_subspace", "wedge_coordinates", "elementary", "alt_matrix", "alt_vector",
    "is_alternating", "pair_indices", "Regularity", "AltPrimitivity", "TrilinearSpace",
]
