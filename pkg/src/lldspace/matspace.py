"""Linear spaces of m x n matrices and their basic invariants.

A :class:`MatrixSpace` is stored through the reduced row echelon form of its
row-major vectorized basis, so two spaces are equal exactly when their
canonical forms agree.  The functionals here (upper-rank, transitive rank,
kernel, essential range, reduction, the dual space of evaluation maps) are
all computed exactly when the relevant enumeration fits in the budget, and
otherwise through recorded randomized procedures.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import ShapeMismatch, SingularTransform
from .exactfield import (
    Field,
    Subspace,
    batch_rank,
    inverse,
    kernel,
    make_field,
    rank,
    rref,
    vector_blocks,
)
from .rng import SplitMix64

DEFAULT_BUDGET = 10**6
DEFAULT_TRIALS = 8


class MatrixSpace:
    """A linear subspace of Mat_{m,n}(K) given by a basis."""

    __slots__ = ("field", "m", "n", "basis", "canonical", "_cache")

    def __init__(self, F: Field, m: int, n: int, matrices=()):
        self.field = F
        self.m = int(m)
        self.n = int(n)
        mats = [np.asarray(A, dtype=F.dtype) for A in matrices]
        for A in mats:
            if A.shape != (self.m, self.n):
                raise ShapeMismatch(f"expected {self.m}x{self.n}, got {A.shape}")
        if mats and self.m * self.n:
            flat = np.stack([A.reshape(-1) for A in mats])
            self.canonical, _ = rref(F, flat)
        else:
            self.canonical = F.zeros((0, self.m * self.n))
        if self.m * self.n:
            self.basis = self.canonical.reshape(-1, self.m, self.n)
        else:
            self.basis = F.zeros((0, self.m, self.n))
        self._cache = {}

    @property
    def d(self) -> int:
        return self.basis.shape[0]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.m, self.n)

    def __eq__(self, other):
        return (
            isinstance(other, MatrixSpace)
            and self.field == other.field
            and self.shape == other.shape
            and np.array_equal(self.canonical, other.canonical)
        )

    def __hash__(self):
        return hash((self.field, self.m, self.n, self.canonical.tobytes()))

    def __repr__(self):
        return f"MatrixSpace({self.field}, {self.m}x{self.n}, d={self.d})"

    def element(self, coeffs) -> np.ndarray:
        """sum_i coeffs[i] * basis[i]; also works on a stack of coefficient rows."""
        return self.field.dot(coeffs, self.basis)

    def element_blocks(self, budget: int | None = None):
        """All q^d elements, as (coefficient block, matrix block) pairs."""
        for X in vector_blocks(self.field, self.d, budget=budget, block=_block_size(self)):
            yield X, self.element(X) if self.d else self.field.zeros((X.shape[0], self.m, self.n))

    def contains(self, M) -> bool:
        M = np.asarray(M, dtype=self.field.dtype).reshape(1, -1)
        if self.m * self.n == 0:
            return True
        return rank(self.field, np.concatenate([self.canonical, M])) == self.d

    def coordinates(self, M):
        """Coefficients of M in the canonical basis (M must lie in the space)."""
        v = np.asarray(M, dtype=self.field.dtype).reshape(-1)
        piv = self._pivots()
        coeffs = v[list(piv)]
        back = self.element(coeffs).reshape(-1) if self.d else np.zeros_like(v)
        if not np.array_equal(back, v):
            raise ValueError("matrix is not in the space")
        return coeffs

    def _pivots(self) -> tuple[int, ...]:
        if "pivots" not in self._cache:
            piv = []
            for row in self.canonical:
                piv.append(int(np.nonzero(row != 0)[0][0]))
            self._cache["pivots"] = tuple(piv)
        return self._cache["pivots"]

    def is_enumerable(self, budget: int) -> bool:
        return self.field.q**self.d <= budget


def _block_size(S: MatrixSpace) -> int:
    return max(1, (1 << 20) // max(1, S.m * S.n))


def new_space(F: Field, m: int, n: int, matrices=()) -> MatrixSpace:
    return MatrixSpace(F, m, n, matrices)


# -- upper-rank -----------------------------------------------------------------

@dataclass(frozen=True)
class RankResult:
    """A rank-type value with how it was obtained.

    ``method`` is 'exact' (full enumeration), 'generic-extension' (maximum
    over random evaluations of a generic matrix in an extension field) or
    'sampled' (maximum over random base-field samples, a lower bound).
    ``generic`` is the generic rank when it was determined.
    """

    value: int
    method: str
    exact: bool
    generic: int | None = None
    trials: int | None = None
    seed: int | None = None
    extension_degree: int | None = None
    witness: tuple | None = None

    def __int__(self):
        return self.value


def extension_for(F: Field, size: int) -> tuple[Field, int]:
    """Smallest extension GF(q^e) of F with q^e > size."""
    e = 1
    while F.q**e <= size:
        e += 1
    if e == 1:
        return F, 1
    return make_field(F.p, F.k * e), e


def embedding_table(F: Field, E: Field) -> np.ndarray:
    """Array t with t[a] the image of a in E, for a field embedding F -> E."""
    if F == E:
        return np.arange(F.q, dtype=np.int64)
    if F.k == 1:
        return np.arange(F.q, dtype=np.int64)
    # a root of F's modulus in E
    mod = F.modulus
    xs = E.elements()
    val = E.zeros(xs.shape)
    for c in reversed(mod):
        val = E.add(E.mul(val, xs), c)
    root = int(xs[np.nonzero(val == 0)[0][0]])
    table = np.zeros(F.q, dtype=np.int64)
    powers = [1]
    for _ in range(1, F.k):
        powers.append(E.mul(powers[-1], root))
    for a in range(F.q):
        acc = 0
        for c, pw in zip(F.coeffs(a), powers):
            acc = E.add(acc, E.mul(c, pw))
        table[a] = acc
    return table


def generic_rank(S: MatrixSpace, trials: int = DEFAULT_TRIALS, seed: int = 0) -> RankResult:
    """Rank of a generic matrix, by evaluation at random extension-field points."""
    F = S.field
    if S.d == 0 or S.m == 0 or S.n == 0:
        return RankResult(0, "generic-extension", False, 0, trials, seed, 1)
    E, e = extension_for(F, min(S.m, S.n))
    basis = embedding_table(F, E)[S.basis.astype(np.int64)] if E != F else S.basis
    rng = SplitMix64(seed)
    X = rng.integers(E.q, (trials, S.d)).astype(E.dtype)
    mats = E.dot(X, basis)
    value = int(batch_rank(E, mats).max())
    return RankResult(value, "generic-extension", False, value, trials, seed, e)


def urk(S: MatrixSpace, budget: int = DEFAULT_BUDGET, seed: int = 0,
        trials: int = DEFAULT_TRIALS) -> RankResult:
    """Upper-rank: the maximal rank of an element of S."""
    key = ("urk", budget, seed, trials)
    if key in S._cache:
        return S._cache[key]
    F = S.field
    if S.d == 0 or S.m == 0 or S.n == 0:
        res = RankResult(0, "exact", True, 0)
    elif S.is_enumerable(budget):
        best, witness = -1, None
        for X, mats in S.element_blocks():
            r = batch_rank(F, mats)
            i = int(np.argmax(r))
            if r[i] > best:
                best, witness = int(r[i]), tuple(int(v) for v in X[i])
            if best == min(S.m, S.n):
                break
        generic = best if F.q > best else generic_rank(S, trials, seed).value
        res = RankResult(best, "exact", True, generic, witness=witness)
    else:
        g = generic_rank(S, trials, seed)
        res = g
    S._cache[key] = res
    return res


def rank_distribution(S: MatrixSpace, budget: int = DEFAULT_BUDGET, seed: int = 0,
                      samples: int = 4096) -> tuple[tuple[int, ...], bool, int | None]:
    """Histogram of ranks; (counts by rank 0..min(m,n), exact flag, sample size)."""
    F = S.field
    top = min(S.m, S.n)
    hist = np.zeros(top + 1, dtype=np.int64)
    if S.d == 0 or top == 0:
        hist[0] = F.q**S.d
        return tuple(int(v) for v in hist), True, None
    if S.is_enumerable(budget):
        for _, mats in S.element_blocks():
            hist += np.bincount(batch_rank(F, mats), minlength=top + 1)
        return tuple(int(v) for v in hist), True, None
    rng = SplitMix64(seed).split(1)
    X = rng.integers(F.q, (samples, S.d)).astype(F.dtype)
    hist += np.bincount(batch_rank(F, S.element(X)), minlength=top + 1)
    return tuple(int(v) for v in hist), False, samples


# -- transitive rank ----------------------------------------------------------

def image_matrices(S: MatrixSpace, xs) -> np.ndarray:
    """For each vector x, the m x d matrix [A_1 x | ... | A_d x]."""
    F = S.field
    xs = np.asarray(xs, dtype=F.dtype).reshape(-1, S.n)
    flat = S.basis.reshape(S.d * S.m, S.n)
    prod = F.matmul(flat, xs.T)  # (d*m, N)
    return prod.reshape(S.d, S.m, -1).transpose(2, 1, 0)


def trk(S: MatrixSpace, budget: int = DEFAULT_BUDGET, seed: int = 0,
        trials: int = 256) -> RankResult:
    """Transitive rank: max over x of dim Sx."""
    key = ("trk", budget, seed, trials)
    if key in S._cache:
        return S._cache[key]
    F = S.field
    if S.d == 0 or S.m == 0 or S.n == 0:
        res = RankResult(0, "exact", True)
    elif F.q**S.n <= budget:
        best, witness = -1, None
        for xs in vector_blocks(F, S.n, block=max(1, (1 << 20) // (S.m * S.d))):
            r = batch_rank(F, image_matrices(S, xs))
            i = int(np.argmax(r))
            if r[i] > best:
                best, witness = int(r[i]), tuple(int(v) for v in xs[i])
            if best == min(S.m, S.d):
                break
        res = RankResult(best, "exact", True, witness=witness)
    else:
        rng = SplitMix64(seed).split(2)
        xs = rng.integers(F.q, (trials, S.n)).astype(F.dtype)
        r = batch_rank(F, image_matrices(S, xs))
        i = int(np.argmax(r))
        res = RankResult(int(r[i]), "sampled", False, trials=trials, seed=seed,
                         witness=tuple(int(v) for v in xs[i]))
    S._cache[key] = res
    return res


# -- kernel, essential range, reduction ---------------------------------------

def kernel_and_essrange(S: MatrixSpace) -> tuple[Subspace, Subspace]:
    F = S.field
    if S.d == 0:
        return Subspace.full(F, S.n), Subspace.zero(F, S.m)
    stacked = S.basis.reshape(S.d * S.m, S.n)
    ker = kernel(F, stacked) if S.n else Subspace.zero(F, 0)
    side = np.concatenate(list(S.basis), axis=1)  # m x (d*n)
    ess = Subspace(F, S.m, side.T) if S.m else Subspace.zero(F, 0)
    return ker, ess


@dataclass(frozen=True)
class Reduction:
    """S_bar together with the maps realizing it.

    Every element A of S corresponds to ``row_select @ A @ col_inject`` in
    S_bar; ``row_lift`` maps K^{m'} back onto the essential range and
    ``kernel`` is the common kernel of S.
    """

    space: MatrixSpace
    row_select: np.ndarray
    col_inject: np.ndarray
    row_lift: np.ndarray
    kernel: Subspace
    essrange: Subspace


def reduce(S: MatrixSpace) -> Reduction:
    F = S.field
    ker, ess = kernel_and_essrange(S)
    rows = list(ess.pivots)
    cols = ker.complement_indices()
    E = F.zeros((len(rows), S.m))
    for t, i in enumerate(rows):
        E[t, i] = 1
    J = F.zeros((S.n, len(cols)))
    for t, j in enumerate(cols):
        J[j, t] = 1
    mats = [A[np.ix_(rows, cols)] for A in S.basis]
    Sbar = MatrixSpace(F, len(rows), len(cols), mats)
    return Reduction(Sbar, E, J, ess.basis.T.copy(), ker, ess)


def is_reduced(S: MatrixSpace) -> bool:
    ker, ess = kernel_and_essrange(S)
    return ker.dim == 0 and ess.dim == S.m


# -- duality and equivalences ---------------------------------------------------

def dual_hat(S: MatrixSpace) -> MatrixSpace:
    """The space of evaluation maps f -> f(x), as m x d matrices."""
    F = S.field
    gens = []
    for i in range(S.n):
        gens.append(S.basis[:, :, i].T.copy())  # column j is A_j e_i
    return MatrixSpace(F, S.m, S.d, gens)


def transpose_space(S: MatrixSpace) -> MatrixSpace:
    return MatrixSpace(S.field, S.n, S.m, [A.T for A in S.basis])


def apply_equivalence(S: MatrixSpace, P, Q) -> MatrixSpace:
    """The space {P A Q : A in S} for invertible P (m x m) and Q (n x n)."""
    F = S.field
    P = np.asarray(P, dtype=F.dtype)
    Q = np.asarray(Q, dtype=F.dtype)
    if P.shape != (S.m, S.m) or Q.shape != (S.n, S.n):
        raise ShapeMismatch("transform shapes do not match the space")
    if rank(F, P) < S.m or rank(F, Q) < S.n:
        raise SingularTransform("equivalence requires invertible matrices")
    mats = F.matmul(F.matmul(P, S.basis), Q) if S.d else []
    return MatrixSpace(F, S.m, S.n, list(mats))


def random_invertible(F: Field, n: int, rng: SplitMix64) -> np.ndarray:
    while True:
        M = rng.integers(F.q, (n, n)).astype(F.dtype)
        if rank(F, M) == n:
            return M


def direct_sum(S: MatrixSpace, T: MatrixSpace) -> MatrixSpace:
    """Block-diagonal sum: pairs (A, B) -> diag(A, B)."""
    F = S.field
    m, n = S.m + T.m, S.n + T.n
    gens = []
    for A in S.basis:
        M = F.zeros((m, n))
        M[: S.m, : S.n] = A
        gens.append(M)
    for B in T.basis:
        M = F.zeros((m, n))
        M[S.m :, S.n :] = B
        gens.append(M)
    return MatrixSpace(F, m, n, gens)


def span_of_rank(S: MatrixSpace, r: int, budget: int = DEFAULT_BUDGET) -> MatrixSpace:
    """Span of the elements of rank exactly r (enumerates all elements)."""
    F = S.field
    gens = []
    for _, mats in S.element_blocks(budget=budget):
        sel = mats[batch_rank(F, mats) == r]
        if sel.size:
            gens.append(sel)
    if not gens:
        return MatrixSpace(F, S.m, S.n)
    allm = np.concatenate(gens)
    flat = allm.reshape(allm.shape[0], -1)
    R, _ = rref(F, flat)
    return MatrixSpace(F, S.m, S.n, R.reshape(-1, S.m, S.n))


# -- fingerprint --------------------------------------------------------------

@dataclass(frozen=True)
class Fingerprint:
    """Equivalence-invariant summary of a matrix space.

    Equality compares only the invariant values, never the method tags.
    """

    m: int
    n: int
    d: int
    urk: int
    trk: int
    lld_index: int
    defect_index: int
    rank_distribution: tuple[int, ...]
    kernel_dim: int
    essrange_dim: int
    urk_method: str = dc_field(compare=False, default="exact")
    trk_method: str = dc_field(compare=False, default="exact")
    distribution_exact: bool = dc_field(compare=False, default=True)
    sample_size: int | None = dc_field(compare=False, default=None)
    seed: int = dc_field(compare=False, default=0)
    generic_urk: int | None = dc_field(compare=False, default=None)

    def summary(self) -> tuple[int, int, int, int, int, int]:
        return (self.m, self.n, self.d, self.urk, self.trk, self.lld_index)

    @property
    def exact(self) -> bool:
        return self.urk_method == "exact" and self.trk_method == "exact"


def fingerprint(S: MatrixSpace, budget: int = DEFAULT_BUDGET, seed: int = 0) -> Fingerprint:
    u = urk(S, budget, seed)
    t = trk(S, budget, seed)
    hist, exact, size = rank_distribution(S, budget, seed)
    ker, ess = kernel_and_essrange(S)
    return Fingerprint(
        m=S.m,
        n=S.n,
        d=S.d,
        urk=u.value,
        trk=t.value,
        lld_index=S.d - t.value,
        defect_index=S.n - u.value,
        rank_distribution=hist,
        kernel_dim=ker.dim,
        essrange_dim=ess.dim,
        urk_method=u.method,
        trk_method=t.method,
        distribution_exact=exact,
        sample_size=size,
        seed=seed,
        generic_urk=u.generic,
    )


def full_matrix_space(F: Field, m: int, n: int) -> MatrixSpace:
    gens = []
    for i in range(m):
        for j in range(n):
            E = F.zeros((m, n))
            E[i, j] = 1
            gens.append(E)
    return MatrixSpace(F, m, n, gens)

