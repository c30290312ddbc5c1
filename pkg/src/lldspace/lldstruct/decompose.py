"""Constructive decompositions of primitive and semi-primitive spaces.

Every routine returns the transformed space together with the invertible
matrices realizing it (T = P S Q) and a dict of structural checks that were
verified on the output.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import BadWitness, HypothesisViolated, InvariantViolation, ZeroSpace
from ..exactfield import (
    Subspace,
    batch_rank,
    complete_basis,
    inverse,
    kernel,
    rank,
    rref,
    solve,
)
from ..matspace import (
    DEFAULT_BUDGET,
    MatrixSpace,
    fingerprint,
    is_reduced,
    urk,
)
from ..rng import SplitMix64
from .common import (
    adapted_basis_inverse,
    binom,
    block_diag,
    coefficient_solutions,
    is_alternating,
    jr,
    normalize_to_jr,
)
from .predicates import column_property


def _transform(F, mats, P, Q):
    return F.matmul(F.matmul(P, mats), Q)


def _space(F, m, n, mats):
    return MatrixSpace(F, m, n, list(mats))


# -- r-reduction ---------------------------------------------------------------

def _max_rank_element(S: MatrixSpace, budget: int, seed: int):
    F = S.field
    u = urk(S, budget, seed)
    if u.exact and u.witness is not None:
        return S.element(np.array(u.witness, dtype=F.dtype)), u.value
    rng = SplitMix64(seed).split(5)
    X = rng.integers(F.q, (4096, S.d)).astype(F.dtype)
    mats = S.element(X)
    r = batch_rank(F, mats)
    i = int(np.argmax(r))
    return mats[i], int(r[i])


def r_reduce_normalize(S: MatrixSpace, budget: int = DEFAULT_BUDGET, seed: int = 0):
    """(T, P, Q) with T = P S Q containing J_r, r the best rank found."""
    if S.d == 0:
        raise ZeroSpace("cannot normalize the zero space")
    A, _ = _max_rank_element(S, budget, seed)
    P, Q, _ = normalize_to_jr(S.field, A)
    return _space(S.field, S.m, S.n, _transform(S.field, S.basis, P, Q)), P, Q


# -- one-dimensional image split ----------------------------------------------

@dataclass
class OneDimSplit:
    space: MatrixSpace
    q: int
    H: MatrixSpace
    P: np.ndarray
    Q: np.ndarray
    checks: dict = field(default_factory=dict)


def one_dim_split(S: MatrixSpace, x, budget: int = DEFAULT_BUDGET, seed: int = 0) -> OneDimSplit:
    """Split S along a vector x with dim S x = 1.

    With U' = {u : S u in S x} and q = n - dim U', the result T = P S Q has
    S x = K e_1, U' spanned by the last n - q coordinates, a zero lower-right
    block, and H(T) = rows 2..m, columns 1..q.  H is reduced by
    construction; urk H = urk S - 1 is reported (it needs the column
    property and #K > urk S).
    """
    F = S.field
    x = np.asarray(x, dtype=F.dtype)
    Sx = F.matmul(S.basis, x)  # (d, m)
    if rank(F, Sx) != 1:
        raise BadWitness("dim S x must be 1")
    y = rref(F, Sx)[0][0]
    _, P = adapted_basis_inverse(F, y, S.m)
    PA = F.matmul(P, S.basis)  # in new row coordinates, y = e_1
    tail = PA[:, 1:, :].reshape(-1, S.n)
    Uprime = kernel(F, tail)
    qd = S.n - Uprime.dim
    full = complete_basis(F, Uprime.basis, S.n)
    Q = np.concatenate([full[Uprime.dim :], Uprime.basis]).T.copy()
    mats = F.matmul(PA, Q)
    T = _space(F, S.m, S.n, mats)
    if mats[:, 1:, qd:].any():
        raise InvariantViolation("lower-right block of the split is not zero")
    H = _space(F, S.m - 1, qd, mats[:, 1:, :qd])
    checks = {"H_reduced": is_reduced(H)}
    if not checks["H_reduced"] and is_reduced(S):
        raise InvariantViolation("H is not reduced although S is")
    uS, uH = urk(S, budget, seed), urk(H, budget, seed)
    checks["urk_H"] = uH.value
    checks["urk_drop_ok"] = uH.value == uS.value - 1
    checks["hypothesis"] = "met" if F.q > uS.value else "hypothesis-unmet"
    return OneDimSplit(T, qd, H, P, Q, checks)


# -- thin decomposition -------------------------------------------------------

@dataclass
class ThinDecomposition:
    space: MatrixSpace
    p: int
    s: int
    t: int
    B: list
    H: MatrixSpace
    P: np.ndarray
    Q: np.ndarray
    checks: dict = field(default_factory=dict)
    bound: tuple = ()


def _reduced_r_setup(S: MatrixSpace, budget: int, seed: int, A=None, x=None):
    """Common hypotheses for the r = n - 1 routines; returns (r, A, x)."""
    F = S.field
    if not is_reduced(S):
        raise HypothesisViolated("reduced", "the space is not reduced")
    u = urk(S, budget, seed)
    r = u.value
    if r != S.n - 1:
        raise HypothesisViolated("urk = n - 1", f"urk = {r}, n = {S.n}")
    if A is None:
        A, _ = _max_rank_element(S, budget, seed)
    A = np.asarray(A, dtype=F.dtype)
    if rank(F, A) != r:
        raise HypothesisViolated("A has maximal rank", f"rank A = {rank(F, A)}, urk = {r}")
    if not S.contains(A):
        raise HypothesisViolated("A in S")
    ker = kernel(F, A)
    if x is None:
        x = ker.basis[0]
    x = np.asarray(x, dtype=F.dtype)
    if not x.any() or not ker.contains(x):
        raise HypothesisViolated("x spans ker A")
    return r, A, x


def _c_prime_normalizer(F, Cb, r):
    """(p, R) with R invertible r x r and R C'(S) = K^p x 0."""
    Rb, _ = rref(F, Cb) if Cb.size else (F.zeros((0, r)), ())
    p = Rb.shape[0]
    if p == 0:
        return 0, F.eye(r)
    _, R = adapted_basis_inverse(F, Rb, r)
    return p, R


def thin_decomposition(S: MatrixSpace, A=None, x=None, budget: int = DEFAULT_BUDGET,
                       seed: int = 0) -> ThinDecomposition:
    """Bring a reduced space with urk = n - 1 to the thin block form.

    T = P S Q contains J_r with x -> e_n, C'(T) = K^p x 0, the rows below r
    split as s rows carrying the alternating matrices B_1..B_s and a last
    block whose middle part is H (urk H < t when t > 0), and
    m <= C(p+1, 2) + C(r-p+1, 2).  Raises HypothesisViolated when a step's
    hypothesis fails.
    """
    F = S.field
    r, A, x = _reduced_r_setup(S, budget, seed, A, x)
    m, n = S.m, S.n
    P1, Q1, _ = normalize_to_jr(F, A, x)
    mats = _transform(F, S.basis, P1, Q1)
    if mats[:, r:, n - 1].any():
        raise HypothesisViolated("#K > r", "lower-right block is not zero after normalizing")
    # C'(S) = K^p x 0
    p, R = _c_prime_normalizer(F, mats[:, :r, n - 1], r)
    Rinv = inverse(F, R)
    P2 = block_diag(F, R, F.eye(m - r))
    Q2 = block_diag(F, Rinv, F.eye(1))
    mats = _transform(F, mats, P2, Q2)
    # polarized identity B(M) = [C(M)^T B_i]_i
    C = mats[:, :p, n - 1]  # (d, p)
    Bm = mats[:, r:, :p]  # (d, m-r, p)
    lam = coefficient_solutions(F, C, F.eye(p)) if p else F.zeros((0, S.d))
    if lam is None:
        raise InvariantViolation("C(S) does not span K^p")
    lifts = F.dot(lam, mats) if p else F.zeros((0, m, n))
    Bi = np.transpose(lifts[:, r:, :p], (1, 0, 2)) if p else F.zeros((m - r, 0, 0))
    pred = F.matmul(C[:, None, None, :], Bi[None]).reshape(S.d, m - r, p) if p else Bm
    if not np.array_equal(pred, Bm):
        raise HypothesisViolated("#K > r", "B(M) is not determined by C(M)")
    if p and not all(is_alternating(F, b) for b in Bi):
        raise HypothesisViolated("column property", "some B_i is not alternating")
    # row reduction to s independent B_i
    flat = Bi.reshape(m - r, -1)
    aug = np.concatenate([flat, F.eye(m - r)], axis=1)
    Raug, _ = rref(F, aug)
    G = Raug[:, flat.shape[1]:]
    s = rank(F, flat) if flat.size else 0
    P3 = block_diag(F, F.eye(r), G)
    mats = _transform(F, mats, P3, F.eye(n))
    Bi = np.asarray([Raug[i, : flat.shape[1]].reshape(p, p) for i in range(s)], dtype=F.dtype)
    # split the T block by its common kernel
    Tm = mats[:, r + s :, p:r]  # (d, m-r-s, r-p)
    if Tm.size:
        kb = kernel(F, Tm.reshape(-1, r - p)).basis
    else:
        kb = Subspace.full(F, r - p).basis
    full = complete_basis(F, kb, r - p)
    Z = np.concatenate([full[len(kb):], kb]).T.copy().reshape(r - p, r - p)
    t = r - p - len(kb)
    Zinv = inverse(F, Z) if Z.size else Z
    Q4 = block_diag(F, F.eye(p), Z, F.eye(1))
    P4 = block_diag(F, F.eye(p), Zinv, F.eye(m - r))
    mats = _transform(F, mats, P4, Q4)
    P = F.matmul(P4, F.matmul(P3, F.matmul(P2, P1)))
    Q = F.matmul(Q1, F.matmul(Q2, Q4))
    T = _space(F, m, n, mats)
    H = _space(F, m - r - s, t, mats[:, r + s :, p : p + t])
    checks = _thin_checks(F, T, mats, r, p, s, t, Bi, H, budget, seed)
    bound = (m, binom(p + 1, 2) + binom(r - p + 1, 2))
    checks["bound_ok"] = bound[0] <= bound[1]
    if not all(v for k, v in checks.items() if k.endswith("_ok")):
        bad = [k for k, v in checks.items() if k.endswith("_ok") and not v]
        raise HypothesisViolated("#K > r and column property", f"failed checks: {bad}")
    return ThinDecomposition(T, p, s, t, list(Bi), H, P, Q, checks, bound)


def _thin_checks(F, T, mats, r, p, s, t, Bi, H, budget, seed):
    m, n = T.m, T.n
    checks = {}
    checks["jr_ok"] = T.contains(jr(F, m, n, r))
    checks["c_prime_ok"] = not mats[:, p:, n - 1].any()
    checks["lower_zero_ok"] = not mats[:, r + s :, :p].any() and not mats[:, r + s :, p + t : r].any()
    if T.is_enumerable(budget):
        X = np.concatenate([Xb for Xb, _ in T.element_blocks()])
        E = T.element(X)
    else:
        E = mats
    C = E[:, :p, n - 1]
    R = E[:, r : r + s, :p]
    if s:
        pred = F.matmul(C[:, None, None, :], Bi[None]).reshape(len(E), s, p)
        checks["polarized_ok"] = bool(np.array_equal(pred, R))
    else:
        checks["polarized_ok"] = not R.any()
    checks["alternating_ok"] = all(is_alternating(F, b) for b in Bi)
    if t > 0:
        checks["H_reduced_ok"] = is_reduced(H)
        uh = urk(H, budget, seed)
        checks["urk_H"] = uh.value
        checks["urk_H_ok"] = uh.value < t
    u = urk(T, budget, seed)
    checks["urk_ok"] = u.value == r
    return checks


# -- colinearity -------------------------------------------------------------

def _colinearity_system(S: MatrixSpace, r: int):
    """Linear system in alpha polarizing A(M) C(M) = alpha(M) C(M) over basis pairs."""
    F = S.field
    d, n = S.d, S.n
    A = S.basis[:, :r, :r]
    C = S.basis[:, :r, n - 1]
    rows, rhs = [], []
    for i in range(d):
        for j in range(i, d):
            lhs = F.matmul(A[i], C[j])
            if j != i:
                lhs = F.add(lhs, F.matmul(A[j], C[i]))
            block = F.zeros((r, d))
            block[:, i] = C[j]
            if j != i:
                block[:, j] = F.add(block[:, j], C[i])
            rows.append(block)
            rhs.append(lhs)
    return np.concatenate(rows), np.concatenate(rhs)


def colinearity_hypothesis(S: MatrixSpace, budget: int = DEFAULT_BUDGET, seed: int = 0):
    """(holds, alpha) for A(M) C(M) = alpha(M) C(M) on S.

    S must contain J_r with r = urk S = n - 1; A(M) is the top-left r x r
    block and C(M) the top r entries of the last column.  alpha is a linear
    form given by its values on the canonical basis of S.
    """
    F = S.field
    n = S.n
    r = urk(S, budget, seed).value
    if r != n - 1 or not S.contains(jr(F, S.m, n, r)):
        raise HypothesisViolated("J_r in S with r = n - 1")
    C = S.basis[:, :r, n - 1]
    p = rank(F, C) if C.size else 0
    if p < 2:
        raise HypothesisViolated("dim C(S) >= 2", f"dim C(S) = {p}")
    lhs, rhs = _colinearity_system(S, r)
    alpha = solve(F, lhs, rhs)
    if alpha is None:
        return False, None
    return True, alpha


# -- alternating core split -----------------------------------------------------

@dataclass
class CoreSplit:
    space: MatrixSpace
    s: int
    p: int
    D: MatrixSpace
    H: MatrixSpace
    phi: np.ndarray
    P: np.ndarray
    Q: np.ndarray
    checks: dict = field(default_factory=dict)


def alternating_core_split(S: MatrixSpace, alpha=None, budget: int = DEFAULT_BUDGET,
                           seed: int = 0) -> CoreSplit:
    """Split off the alternating core of a space satisfying colinearity.

    S must contain J_r (r = urk S = n - 1) with dim C(S) = p >= 2 and admit
    alpha with A(M) C(M) = alpha(M) C(M).  The result T = P S Q has the form
    [[D, ?], [0, H]] where D (s x (p+1)) is the operator space of an
    alternating bilinear map K^{p+1} x K^{p+1} -> K^s and urk D = p.
    """
    F = S.field
    m, n, d = S.m, S.n, S.d
    ok, a0 = colinearity_hypothesis(S, budget, seed)
    if not ok:
        raise HypothesisViolated("colinearity", "no linear alpha exists")
    if alpha is None:
        alpha = a0
    alpha = np.asarray(alpha, dtype=F.dtype)
    lhs, rhs = _colinearity_system(S, n - 1)
    if alpha.shape != (d,) or not np.array_equal(F.matmul(lhs, alpha), rhs):
        raise HypothesisViolated("colinearity", "alpha does not satisfy A(M) C(M) = alpha(M) C(M)")
    r = n - 1
    C0 = S.basis[:, :r, n - 1]
    p, R = _c_prime_normalizer(F, C0, r)
    P1 = block_diag(F, R, F.eye(m - r))
    Q1 = block_diag(F, inverse(F, R), F.eye(1))
    mats = _transform(F, S.basis, P1, Q1)  # same coefficient order as S.basis
    Cp = mats[:, :p, n - 1]
    lam = coefficient_solutions(F, Cp, F.eye(p))
    lifts = F.dot(lam, mats)  # M_j with C'(M_j) = e_j
    mu = F.dot(lam, alpha)  # alpha(M_j)
    # h(M): columns 0..p-1 and n-1 of M
    # Phi((X, a), (Y, b)) = [(-aI + phi(X)) Y + b X ; psi(X) Y]
    phi0 = lifts[:, :p, :p]  # (p, p, p) by generator j
    psi = lifts[:, p:, :p]
    Phi = F.zeros((p + 1, p + 1, m))
    for j in range(p):
        # u = e_j (X = e_j, a = 0)
        Phi[j, :p, :p] = F.sub(phi0[j], F.mul(mu[j], F.eye(p))).T
        Phi[j, :p, p:] = psi[j].T
        Phi[j, p, j] = 1  # b X
    for k in range(p):
        Phi[p, k, k] = F.neg(1)  # -a I Y
    checks = {}
    diag_zero = not any(Phi[u, u].any() for u in range(p + 1))
    antisym = np.array_equal(Phi, F.neg(np.swapaxes(Phi, 0, 1)))
    checks["phi_alternating_ok"] = bool(diag_zero and antisym)
    if not checks["phi_alternating_ok"]:
        raise HypothesisViolated("#K > r and colinearity", "Phi is not alternating")
    Vb, _ = rref(F, Phi.reshape(-1, m))
    s = Vb.shape[0]
    _, P2 = adapted_basis_inverse(F, Vb, m)
    order = list(range(p)) + [n - 1] + list(range(p, n - 1))
    Q2 = F.zeros((n, n))
    for new, old in enumerate(order):
        Q2[old, new] = 1
    mats = _transform(F, mats, P2, Q2)
    P = F.matmul(P2, P1)
    Q = F.matmul(Q1, Q2)
    T = _space(F, m, n, mats)
    checks["lower_left_zero_ok"] = not mats[:, s:, : p + 1].any()
    Dm = mats[:, :s, : p + 1]
    D = _space(F, s, p + 1, Dm)
    H = _space(F, m - s, n - p - 1, mats[:, s:, p + 1 :])
    # D must be the operator space of Phi in V' coordinates
    Phib = F.matmul(Phi.reshape(-1, m), P2.T)[:, :s].reshape(p + 1, p + 1, s)
    ops = _space(F, s, p + 1, [Phib[u].T for u in range(p + 1)])
    checks["D_is_operator_space_ok"] = ops == D
    checks["D_left_regular_ok"] = rank(F, Phib.reshape(p + 1, -1)) == p + 1
    ud = urk(D, budget, seed)
    checks["urk_D"] = ud.value
    checks["urk_D_ok"] = ud.value == p or not ud.exact
    if H.m and H.n and H.d:
        cp = column_property(H, mode="randomized", budget=budget, seed=seed)
        checks["H_column_property"] = "randomized-pass" if cp.holds else "fail"
    else:
        checks["H_column_property"] = "vacuous"
    if S.is_enumerable(budget):
        checks["fingerprint_ok"] = fingerprint(T, budget, seed) == fingerprint(S, budget, seed)
    bad = [k for k, v in checks.items() if k.endswith("_ok") and not v]
    if bad:
        raise InvariantViolation(f"core split checks failed: {bad}")
    return CoreSplit(T, s, p, D, H, Phi, P, Q, checks)
