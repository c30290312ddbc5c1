"""Structural predicates on matrix spaces.

Each predicate enumerates exactly when the relevant count fits in the
budget, and otherwise either raises :class:`BudgetExceeded` or falls back to
a recorded randomized procedure, as documented per function.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import (
    BudgetExceeded,
    InvalidShape,
    InvariantViolation,
    NotCLLD,
    NotRReduced,
)
from ..exactfield import (
    batch_rank,
    check_budget,
    projective_blocks,
    projective_count,
    proper_subspace_count,
    rref,
    subspace_blocks,
    vector_blocks,
)
from ..matspace import (
    DEFAULT_BUDGET,
    MatrixSpace,
    apply_equivalence,
    embedding_table,
    extension_for,
    image_matrices,
    is_reduced,
    kernel_and_essrange,
    trk,
    urk,
)
from ..rng import SplitMix64
from .common import CheckResult, hyperplane_bases, jr

_CHUNK = 1 << 21
_SAMPLE = 64


@dataclass(frozen=True)
class Indices:
    """lld-index c = d - trk and defect index n - urk, with provenance."""

    lld_index: int
    defect_index: int
    lld_exact: bool
    urk_exact: bool
    trk_method: str
    urk_method: str


def indices(S: MatrixSpace, budget: int = DEFAULT_BUDGET, seed: int = 0) -> Indices:
    t = trk(S, budget, seed)
    u = urk(S, budget, seed)
    return Indices(S.d - t.value, S.n - u.value, t.exact, u.exact, t.method, u.method)


# -- minimal c-LLD ----------------------------------------------------------------

def minimal_clld(S: MatrixSpace, c: int, budget: int = DEFAULT_BUDGET) -> CheckResult:
    """Is S a minimal c-LLD space, i.e. no hyperplane of S is c-LLD?

    A hyperplane T_y = {sum X_i A_i : y.X = 0} is c-LLD iff every x has
    dim T_y x <= (d - 1) - c.  On failure the witness is the basis of a
    c-LLD hyperplane.  Exact only; raises BudgetExceeded beyond the budget.
    """
    F = S.field
    if S.d == 0:
        raise NotCLLD("the zero space is not c-LLD for c >= 1")
    if F.q**S.n > budget:
        raise BudgetExceeded("vectors for trk", F.q**S.n, budget)
    lld = S.d - trk(S, budget).value
    if lld < c:
        raise NotCLLD(f"space is only {lld}-LLD, not {c}-LLD")
    npy = projective_count(F, S.d)
    npx = projective_count(F, S.n)
    check_budget("hyperplane scan", npy * max(1, npx), budget)
    bound = S.d - 1 - c
    if S.d - 1 < c:
        return CheckResult(True, None, {"method": "exact"}, "no hyperplane can be c-LLD")
    xs = np.concatenate(list(projective_blocks(F, S.n))) if S.n else F.zeros((0, 0))
    Mx = image_matrices(S, xs)  # (Nx, m, d)
    per_y = max(1, _CHUNK // max(1, Mx.shape[0] * S.m * S.d))
    for Y in projective_blocks(F, S.d, block=per_y):
        K = hyperplane_bases(F, Y)  # (Ny, d-1, d)
        prod = F.matmul(Mx[None, :, :, :], np.swapaxes(K, 1, 2)[:, None, :, :])
        r = batch_rank(F, prod.reshape(-1, S.m, S.d - 1)).reshape(len(Y), -1)
        ok = (r <= bound).all(axis=1)
        if ok.any():
            i = int(np.argmax(ok))
            T = F.dot(K[i], S.basis)
            return CheckResult(False, {"y": tuple(int(v) for v in Y[i]), "hyperplane": T},
                               {"method": "exact"}, "a hyperplane is still c-LLD")
    return CheckResult(True, None, {"method": "exact"})


# -- semi-primitivity and primitivity -------------------------------------------

def _rank_r_elements(S: MatrixSpace, r: int, budget: int) -> np.ndarray:
    F = S.field
    out = []
    for _, mats in S.element_blocks(budget=budget):
        sel = mats[batch_rank(F, mats) == r]
        if len(sel):
            out.append(sel)
    return np.concatenate(out) if out else F.zeros((0, S.m, S.n))


def _first_failing(F, elems, maps, side: str, r: int) -> int | None:
    """Index of the first map under which no element keeps rank r.

    ``side`` is 'right' (restriction, A @ map^T) or 'left' (quotient,
    map @ A).  Elements are tried in a fixed spread order, in chunks of
    growing size, and only against maps not yet settled.
    """
    N = maps.shape[0]
    kept = np.zeros(N, dtype=bool)
    order = np.random.default_rng(0).permutation(len(elems))
    size = elems.shape[1] * elems.shape[2]
    lo, step = 0, _SAMPLE
    while lo < len(order) and not kept.all():
        part = elems[order[lo : lo + step]]
        lo, step = lo + step, step * 4
        todo = np.nonzero(~kept)[0]
        per = max(1, _CHUNK // max(1, len(part) * size))
        for a in range(0, len(todo), per):
            idx = todo[a : a + per]
            if side == "right":
                prod = F.matmul(part[None], np.swapaxes(maps[idx], 1, 2)[:, None])
            else:
                prod = F.matmul(maps[idx][:, None], part[None])
            rk = batch_rank(F, prod.reshape((-1,) + prod.shape[2:])).reshape(len(idx), -1)
            kept[idx] = (rk == r).any(axis=1)
    bad = np.nonzero(~kept)[0]
    return int(bad[0]) if len(bad) else None


def _generic_elements(S: MatrixSpace, trials: int, seed: int):
    F = S.field
    E, e = extension_for(F, min(S.m, S.n))
    basis = embedding_table(F, E)[S.basis.astype(np.int64)] if E != F else S.basis
    X = SplitMix64(seed).split(7).integers(E.q, (trials, S.d)).astype(E.dtype)
    return E, E.dot(X, basis), embedding_table(F, E) if E != F else None


def _hyperplane_scan(S: MatrixSpace, side: str, budget: int, seed: int, trials: int):
    """(verdict, witness vector or None, tags) for restriction or quotient scan."""
    F = S.field
    dim = S.n if side == "right" else S.m
    check_budget("hyperplanes", projective_count(F, dim), budget)
    u = urk(S, budget, seed)
    r = u.value
    if u.exact:
        elems = _rank_r_elements(S, r, budget)
        EF, emb, tags = F, None, {"method": "exact", "urk": r}
    else:
        EF, elems, emb = _generic_elements(S, trials, seed)
        elems = elems[batch_rank(EF, elems) == r]
        tags = {"method": "generic-extension", "urk": r, "seed": seed, "trials": trials}
    for Y in projective_blocks(F, dim, block=4096):
        maps = hyperplane_bases(F, Y)
        if emb is not None:
            maps = emb[maps.astype(np.int64)]
        bad = _first_failing(EF, elems, maps, side, r)
        if bad is not None:
            return False, tuple(int(v) for v in Y[bad]), tags
    return True, None, tags


def semiprimitive(S: MatrixSpace, budget: int = DEFAULT_BUDGET, seed: int = 0,
                  trials: int = 8) -> CheckResult:
    """Reduced, and urk(S restricted to U) = urk S for every hyperplane U of K^n.

    Witness on failure: ('not-reduced', dims) or ('hyperplane', y) where the
    offending hyperplane is ker y.
    """
    if not is_reduced(S):
        ker, ess = kernel_and_essrange(S)
        return CheckResult(False, {"kind": "not-reduced", "kernel_dim": ker.dim,
                                   "essrange_dim": ess.dim}, {"method": "exact"},
                           "space is not reduced")
    ok, y, tags = _hyperplane_scan(S, "right", budget, seed, trials)
    if ok:
        return CheckResult(True, None, tags)
    return CheckResult(False, {"kind": "hyperplane", "y": y}, tags,
                       "restriction to ker y loses upper-rank")


def primitive(S: MatrixSpace, budget: int = DEFAULT_BUDGET, seed: int = 0,
              trials: int = 8) -> CheckResult:
    """Semi-primitive, and every quotient K^m / Kv keeps the upper-rank.

    Witness on failure: the semi-primitivity witness, or ('line', v).
    """
    sp = semiprimitive(S, budget, seed, trials)
    if not sp.holds:
        return sp
    ok, v, tags = _hyperplane_scan(S, "left", budget, seed, trials)
    if ok:
        return CheckResult(True, None, tags)
    return CheckResult(False, {"kind": "line", "v": v}, tags,
                       "quotient by K v loses upper-rank")


# -- column property ----------------------------------------------------------

def _quotient_maps(F, W: np.ndarray) -> np.ndarray:
    """Stack of quotient maps K^m -> K^m / W for RREF bases sharing one pattern."""
    N, w, m = W.shape
    if w == 0:
        return np.broadcast_to(F.eye(m), (N, m, m)).copy()
    piv = [int(np.nonzero(W[0, i] != 0)[0][0]) for i in range(w)]
    free = [j for j in range(m) if j not in piv]
    P = F.zeros((N, len(free), m))
    for t, j in enumerate(free):
        P[:, t, j] = 1
        for i, pc in enumerate(piv):
            P[:, t, pc] = F.neg(W[:, i, j])
    return P


def _column_check(F, S: MatrixSpace, W: np.ndarray, X: np.ndarray, mats: np.ndarray):
    """For each W in the stack, the index of a violating element or -1."""
    N = W.shape[0]
    P = _quotient_maps(F, W)  # (N, m-w, m)
    k = P.shape[1]
    PA = F.matmul(P[:, None], S.basis[None])  # (N, d, k, n)
    r_stack = batch_rank(F, PA.reshape(N, S.d * k, S.n))
    res = np.full(N, -1, dtype=np.int64)
    live = np.nonzero(r_stack > 0)[0]
    if not len(live):
        return res
    per = max(1, _CHUNK // max(1, len(mats) * k * S.n))
    for lo in range(0, len(live), per):
        idx = live[lo : lo + per]
        prod = F.matmul(P[idx][:, None], mats[None])  # (b, Ne, k, n)
        rk = batch_rank(F, prod.reshape(-1, k, S.n)).reshape(len(idx), -1)
        hit = rk == r_stack[idx][:, None]
        has = hit.any(axis=1)
        res[idx[has]] = np.argmax(hit[has], axis=1)
    return res


def column_property(S: MatrixSpace, mode: str = "exact", budget: int = DEFAULT_BUDGET,
                    trials: int = 200, seed: int = 0) -> CheckResult:
    """Check the column property.

    For every proper subspace W of K^m with quotient map P, no element A
    may have rank(P A) equal to dim of the stacked images (which is the
    codimension of U_2 = {x : S x in W}), unless that number is zero.

    ``mode='exact'`` visits every W in ascending dimension and lexicographic
    pattern order and raises BudgetExceeded if there are more than
    ``budget`` of them.  ``mode='randomized'`` checks ``trials`` random W.
    Either way the elements of S are enumerated when q^d fits the budget
    and sampled otherwise (a pass is then only one-sided evidence).
    """
    F = S.field
    tags = {"mode": mode}
    if F.q**S.d <= budget:
        X = np.concatenate(list(vector_blocks(F, S.d)))[1:]
        tags["elements"] = "all"
    else:
        X = SplitMix64(seed).split(3).integers(F.q, (4096, S.d)).astype(F.dtype)
        tags.update(elements="sampled", seed=seed)
    mats = S.element(X) if S.d else F.zeros((0, S.m, S.n))
    if not len(mats):
        return CheckResult(True, None, tags, "zero space")

    def verdict(W, res):
        bad = np.nonzero(res >= 0)[0]
        if not len(bad):
            return None
        i = int(bad[0])
        return CheckResult(False, {"W": W[i].copy(), "element": tuple(int(v) for v in X[res[i]])},
                           tags, "rank(PA) reaches the stacked rank")

    if mode == "exact":
        total = proper_subspace_count(F, S.m)
        check_budget("proper subspaces", total, budget)
        tags["subspaces"] = total
        per = max(1, (1 << 14) // max(1, len(mats)))
        for w in range(S.m):
            for W in subspace_blocks(F, S.m, w, block=per):
                out = verdict(W, _column_check(F, S, W, X, mats))
                if out is not None:
                    return out
        return CheckResult(True, None, tags)
    if mode == "randomized":
        rng = SplitMix64(seed).split(4)
        tags.update(seed=seed, trials=trials)
        for _ in range(trials):
            w = rng.below(S.m)
            R = rng.integers(F.q, (w, S.m)).astype(F.dtype)
            B = rref(F, R)[0] if w else F.zeros((0, S.m))
            if len(B):
                # regroup into a single-pattern stack
                B = B[None]
            else:
                B = F.zeros((1, 0, S.m))
            out = verdict(B, _column_check(F, S, B, X, mats))
            if out is not None:
                return out
        return CheckResult(True, None, tags)
    raise ValueError(f"unknown mode {mode!r}")


# -- Flanders-Atkinson ----------------------------------------------------------

def _test_elements(S: MatrixSpace, budget: int):
    F = S.field
    if F.q**S.d <= budget:
        return np.concatenate(list(vector_blocks(F, S.d))), "all"
    d = S.d
    rows = [np.eye(d, dtype=np.int64)]
    pairs = [(i, j) for i in range(d) for j in range(i + 1, d)]
    if pairs:
        P = np.zeros((len(pairs), d), dtype=np.int64)
        for t, (i, j) in enumerate(pairs):
            P[t, i] = P[t, j] = 1
        rows.append(P)
    method = "polarized"
    if F.p == 2:
        trip = [(i, j, k) for i in range(d) for j in range(i + 1, d) for k in range(j + 1, d)]
        if trip:
            T = np.zeros((len(trip), d), dtype=np.int64)
            for t, idx in enumerate(trip):
                T[t, list(idx)] = 1
            rows.append(T)
        method = "polarized-cubic"
    return np.concatenate(rows).astype(F.dtype), method


def flanders_atkinson_check(S: MatrixSpace, r: int | None = None,
                            budget: int = DEFAULT_BUDGET) -> CheckResult:
    """Check D = 0 and B A^k C = 0 (k = 0..min(m, n)) for elements of S.

    Elements are written [[A, C], [B, D]] with A the top-left r x r block.
    The space must contain J_r; r defaults to urk S.  The conclusion is
    proven when urk S <= r < q; otherwise it is reported with tag
    'hypothesis-unmet' and violations are expected.
    """
    F = S.field
    u = urk(S, budget).value
    if r is None:
        r = u
    if not 0 < r <= min(S.m, S.n) or not S.contains(jr(F, S.m, S.n, r)):
        raise NotRReduced(f"space does not contain J_{r}")
    X, method = _test_elements(S, budget)
    tags = {"elements": method, "urk": u,
            "hypothesis": "met" if F.q > r and u <= r else "hypothesis-unmet"}
    mats = S.element(X)
    A, C = mats[:, :r, :r], mats[:, :r, r:]
    B, D = mats[:, r:, :r], mats[:, r:, r:]
    bad = np.nonzero(D.reshape(len(X), -1).any(axis=1))[0]
    if len(bad):
        return CheckResult(False, {"element": tuple(int(v) for v in X[bad[0]]), "k": "D"}, tags,
                           "lower-right block is nonzero")
    Y = C
    for k in range(min(S.m, S.n) + 1):
        Z = F.matmul(B, Y)
        bad = np.nonzero(Z.reshape(len(X), -1).any(axis=1))[0]
        if len(bad):
            return CheckResult(False, {"element": tuple(int(v) for v in X[bad[0]]), "k": k}, tags,
                               f"B A^{k} C is nonzero")
        Y = F.matmul(A, Y)
    return CheckResult(True, None, tags)


# -- decomposition inequality -------------------------------------------------

@dataclass(frozen=True)
class BlockShape:
    """Top r rows, left s columns; the lower-right (m-r) x (n-s) block vanishes.

    Optional P, Q are applied first (S -> P S Q).
    """

    r: int
    s: int
    P: np.ndarray | None = None
    Q: np.ndarray | None = None


def decomposition_inequality(S: MatrixSpace, shape: BlockShape,
                             budget: int = DEFAULT_BUDGET, seed: int = 0):
    """(urk B(S), urk C(S), urk S, holds) for the block shape [[?, C], [B, 0]].

    Raises InvalidShape if the lower-right block is not zero, and
    InvariantViolation if the inequality urk S >= urk B + urk C fails with
    all three values exact and q > urk S.
    """
    F = S.field
    T = S
    if shape.P is not None or shape.Q is not None:
        P = shape.P if shape.P is not None else F.eye(S.m)
        Q = shape.Q if shape.Q is not None else F.eye(S.n)
        T = apply_equivalence(S, P, Q)
    r, s = shape.r, shape.s
    if not (0 <= r <= T.m and 0 <= s <= T.n):
        raise InvalidShape("block sizes out of range")
    if T.d and T.basis[:, r:, s:].any():
        raise InvalidShape("lower-right block is not zero")
    Bs = MatrixSpace(F, T.m - r, s, list(T.basis[:, r:, :s]))
    Cs = MatrixSpace(F, r, T.n - s, list(T.basis[:, :r, s:]))
    ub, uc, us = urk(Bs, budget, seed), urk(Cs, budget, seed), urk(T, budget, seed)
    holds = us.value >= ub.value + uc.value
    if not holds and ub.exact and uc.exact and us.exact and F.q > us.value:
        raise InvariantViolation(
            f"urk S = {us.value} < urk B + urk C = {ub.value} + {uc.value}")
    return ub.value, uc.value, us.value, holds
