"""Verification suites and the seeded conjecture search."""

from __future__ import annotations

from math import comb

import numpy as np

from ..alternating import (
    AltSubspace,
    operator_space_from_alt,
    pfaffian4_batch,
    random_alt_subspace,
    regularity_checks,
)
from ..catalog import build_entry, default_params, list_entries
from ..errors import BadParams, VacuousClass
from ..exactfield import Field, batch_det
from ..lldstruct import minimal_clld, primitive, semiprimitive
from ..matspace import DEFAULT_BUDGET, MatrixSpace, dual_hat, fingerprint, reduce, trk, urk
from ..rng import SplitMix64


def conjecture_bound(r: int) -> int:
    return (r + 1) ** 2 // 4


def rank_bounds(r: int) -> dict:
    """The three proven trk bounds and the conjectured one, for upper-rank r."""
    return {
        "column": 1 + comb(r, 2),
        "semiprimitive": 3 + comb(r - 1, 2) if r >= 1 else None,
        "semiprimitive2": 6 + comb(r - 2, 2) if r >= 2 else None,
        "conjecture": conjecture_bound(r),
    }


def search_conjecture(F: Field, r: int, trials: int, seed: int,
                      budget: int = DEFAULT_BUDGET) -> dict:
    """Sample semi-primitive spaces of the alternating kind with urk r.

    Each trial draws a random subspace V of Mata_{r+1}(K) of random dimension,
    keeps it if incompressible, and tests its operator space.  Returns
    counts, the largest trk seen and any counterexample to
    trk <= floor((r+1)^2 / 4).
    """
    if r < 1:
        raise BadParams("r must be at least 1")
    n = r + 1
    top = comb(n, 2)
    rng = SplitMix64(seed)
    sampled = incompressible = kept = 0
    max_trk = None
    violations = []
    for i in range(trials):
        stream = rng.split(i)
        dim = 1 + stream.below(top)
        V = random_alt_subspace(F, n, dim, stream)
        sampled += 1
        if not regularity_checks(V).incompressible:
            continue
        incompressible += 1
        S = operator_space_from_alt(V)
        u = urk(S, budget, seed)
        if u.value != r or not semiprimitive(S, budget, seed).holds:
            continue
        kept += 1
        t = trk(S, budget, seed).value
        max_trk = t if max_trk is None else max(max_trk, t)
        if t > conjecture_bound(r):
            violations.append({"trial": i, "dim": dim, "trk": t})
    return {
        "r": r,
        "n": n,
        "trials": trials,
        "seed": seed,
        "sampled": sampled,
        "incompressible": incompressible,
        "semiprimitive": kept,
        "max_trk": max_trk,
        "bound": conjecture_bound(r),
        "violations": violations,
    }


def catalog_entries(F: Field):
    """(id, CatalogEntry) for every entry that exists over F."""
    out = []
    for info in list_entries():
        try:
            out.append((info.id, build_entry(info.id, F, default_params(info.id, F))))
        except (VacuousClass, BadParams):
            continue
    return out


def entry_space(E) -> MatrixSpace:
    """The operator space of an entry (the alternating kind for a1..a5)."""
    if isinstance(E.space, AltSubspace):
        return operator_space_from_alt(E.space)
    return E.space


def verify_catalog(F: Field, budget: int = DEFAULT_BUDGET) -> list[tuple[str, bool, dict]]:
    """Check every expected record against the analysis pipeline."""
    rows = []
    for id_, E in catalog_entries(F):
        exp, got = E.expected, {}
        if hasattr(E.space, "m"):
            S = E.space
            fp = fingerprint(S, budget)
            got.update(m=fp.m, n=fp.n, d=fp.d, urk=fp.urk, lld_index=fp.lld_index)
            if exp.get("semiprimitive") is not None:
                got["semiprimitive"] = semiprimitive(S, budget).holds
            if exp.get("primitive") is not None:
                got["primitive"] = primitive(S, budget).holds
            if exp.get("minimal") is not None:
                got["minimal"] = minimal_clld(S, 1, budget).holds
        else:
            got.update(n=E.space.n, d=E.space.d,
                       incompressible=regularity_checks(E.space).incompressible)
        ok = all(exp.get(k) is None or exp[k] == v for k, v in got.items())
        rows.append((id_, ok, got))
    return rows


def verify_duality(F: Field, budget: int = DEFAULT_BUDGET) -> list[tuple[str, bool, dict]]:
    rows = []
    for id_, E in catalog_entries(F):
        S = entry_space(E)
        a = fingerprint(dual_hat(dual_hat(S)), budget)
        b = fingerprint(reduce(S).space, budget)
        h = dual_hat(S)
        swap = (trk(S, budget).value == urk(h, budget).value
                and urk(S, budget).value == trk(h, budget).value)
        rows.append((id_, a == b and swap, {"hathat": a.summary(), "reduced": b.summary()}))
    return rows


def verify_pfaffian(F: Field, count: int = 1000, seed: int = 0) -> list[tuple[str, bool, dict]]:
    rng = SplitMix64(seed)
    v = rng.integers(F.q, (count, 6)).astype(F.dtype)
    M = F.zeros((count, 4, 4))
    i, j = np.triu_indices(4, 1)
    M[:, i, j] = v
    M[:, j, i] = F.neg(v)
    pf = pfaffian4_batch(F, M)
    ok = bool(np.array_equal(F.mul(pf, pf), batch_det(F, M)))
    return [(f"pfaffian-gf{F.q}", ok, {"count": count, "seed": seed})]


SUITES = {
    "catalog": verify_catalog,
    "duality": verify_duality,
    "pfaffian": verify_pfaffian,
}
