"""Deterministic enumeration of vectors, projective points and subspaces.

Every enumerator has an exact item count, accepts a ``budget`` (raising
:class:`BudgetExceeded` before doing any work when the count is larger) and
``start``/``stop`` offsets so a scan can be split into shards.  Block
variants yield numpy stacks for vectorized consumers.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterator

import numpy as np

from ..errors import BudgetExceeded
from .field import Field

DEFAULT_BLOCK = 1 << 16


def gaussian_binomial(n: int, d: int, q: int) -> int:
    """Number of d-dimensional subspaces of GF(q)^n."""
    if d < 0 or d > n:
        return 0
    num, den = 1, 1
    for i in range(d):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def check_budget(what: str, count: int, budget: int | None) -> None:
    if budget is not None and count > budget:
        raise BudgetExceeded(what, count, budget)


def digits_array(F: Field, indices: np.ndarray, n: int) -> np.ndarray:
    """Base-q digits of each index, most significant coordinate first."""
    idx = np.asarray(indices, dtype=np.int64 if F.q ** n < 1 << 62 else object)
    out = np.zeros(idx.shape + (n,), dtype=F.dtype)
    rem = idx.copy()
    for j in range(n - 1, -1, -1):
        out[..., j] = rem % F.q
        rem = rem // F.q
    return out


# -- vectors -------------------------------------------------------------------

def vector_count(F: Field, n: int) -> int:
    return F.q**n


def vector_blocks(F: Field, n: int, start: int = 0, stop: int | None = None,
                  budget: int | None = None, block: int = DEFAULT_BLOCK) -> Iterator[np.ndarray]:
    total = vector_count(F, n)
    stop = total if stop is None else min(stop, total)
    check_budget(f"vectors({n})", stop - start, budget)
    for lo in range(start, stop, block):
        hi = min(lo + block, stop)
        yield digits_array(F, np.arange(lo, hi), n)


def vectors(F: Field, n: int, start: int = 0, stop: int | None = None,
            budget: int | None = None) -> Iterator[np.ndarray]:
    """All of K^n in base-q counting order."""
    for blk in vector_blocks(F, n, start, stop, budget):
        yield from blk


def all_vectors(F: Field, n: int, budget: int | None = None) -> np.ndarray:
    check_budget(f"vectors({n})", vector_count(F, n), budget)
    return digits_array(F, np.arange(vector_count(F, n)), n)


# -- projective points -----------------------------------------------------------

def projective_count(F: Field, n: int) -> int:
    return (F.q**n - 1) // (F.q - 1) if n > 0 else 0


def projective_blocks(F: Field, n: int, budget: int | None = None,
                      block: int = DEFAULT_BLOCK) -> Iterator[np.ndarray]:
    """Representatives with first nonzero coordinate 1, in counting order."""
    check_budget(f"projective({n})", projective_count(F, n), budget)
    for lead in range(n - 1, -1, -1):
        tail = n - lead - 1
        count = F.q**tail
        for lo in range(0, count, block):
            hi = min(lo + block, count)
            t = digits_array(F, np.arange(lo, hi), tail)
            out = np.zeros((hi - lo, n), dtype=F.dtype)
            out[:, lead] = 1
            out[:, lead + 1:] = t
            yield out


def projective(F: Field, n: int, budget: int | None = None) -> Iterator[np.ndarray]:
    for blk in projective_blocks(F, n, budget):
        yield from blk


def all_projective(F: Field, n: int, budget: int | None = None) -> np.ndarray:
    blocks = list(projective_blocks(F, n, budget))
    if not blocks:
        return np.zeros((0, n), dtype=F.dtype)
    return np.concatenate(blocks)


# -- subspaces -----------------------------------------------------------------

def subspace_count(F: Field, n: int, d: int) -> int:
    return gaussian_binomial(n, d, F.q)


def _pattern_free(n: int, piv: tuple[int, ...]) -> list[tuple[int, int]]:
    pset = set(piv)
    return [(i, j) for i, pc in enumerate(piv) for j in range(pc + 1, n) if j not in pset]


def subspace_blocks(F: Field, n: int, d: int, start: int = 0, stop: int | None = None,
                    budget: int | None = None,
                    block: int = DEFAULT_BLOCK) -> Iterator[np.ndarray]:
    """Stacks of shape (N, d, n) of canonical RREF bases.

    Pivot patterns come in lexicographic order; within a pattern the free
    entries (row by row, left to right) run through base-q counting order.
    """
    total = subspace_count(F, n, d)
    stop = total if stop is None else min(stop, total)
    check_budget(f"subspaces({n},{d})", stop - start, budget)
    offset = 0
    for piv in combinations(range(n), d):
        free = _pattern_free(n, piv)
        count = F.q ** len(free)
        lo_pat, hi_pat = offset, offset + count
        offset = hi_pat
        lo, hi = max(lo_pat, start), min(hi_pat, stop)
        if lo >= hi:
            continue
        base = np.zeros((d, n), dtype=F.dtype)
        for i, pc in enumerate(piv):
            base[i, pc] = 1
        rows = np.array([f[0] for f in free], dtype=np.int64)
        cols = np.array([f[1] for f in free], dtype=np.int64)
        for b0 in range(lo, hi, block):
            b1 = min(b0 + block, hi)
            vals = digits_array(F, np.arange(b0 - lo_pat, b1 - lo_pat), len(free))
            out = np.broadcast_to(base, (b1 - b0, d, n)).copy()
            if len(free):
                out[:, rows, cols] = vals
            yield out
        if offset >= stop:
            break


def subspaces(F: Field, n: int, d: int, start: int = 0, stop: int | None = None,
              budget: int | None = None) -> Iterator[np.ndarray]:
    for blk in subspace_blocks(F, n, d, start, stop, budget):
        yield from blk


def proper_subspace_count(F: Field, n: int) -> int:
    """Number of subspaces W with W != K^n."""
    return sum(subspace_count(F, n, d) for d in range(n))


def enumerate_items(F: Field, mode: str, *args, budget: int | None = None, start: int = 0):
    """Single entry point: mode is 'vectors', 'projective' or 'subspaces'."""
    if mode == "vectors":
        return vectors(F, *args, start=start, budget=budget)
    if mode == "projective":
        return projective(F, *args, budget=budget)
    if mode == "subspaces":
        return subspaces(F, *args, start=start, budget=budget)
    raise ValueError(f"unknown enumeration mode {mode!r}")
