import itertools

import numpy as np
import pytest

from lldspace.errors import BudgetExceeded
from lldspace.exactfield import (
    all_projective, all_vectors, gaussian_binomial, make_field, projective_count, rank,
    subspace_blocks, subspace_count,
)


def test_gaussian_binomial_values():
    assert gaussian_binomial(4, 2, 3) == 130
    assert gaussian_binomial(6, 3, 3) == 33880
    assert gaussian_binomial(5, 0, 7) == 1
    assert gaussian_binomial(3, 4, 2) == 0


def brute_subspace_count(F, n, d):
    vecs = [np.array(v) for v in itertools.product(range(F.q), repeat=n)]
    spans = set()
    for rows in itertools.combinations(vecs, d):
        M = np.array(rows, dtype=F.dtype).reshape(d, n)
        if rank(F, M) != d:
            continue
        span = set()
        for c in itertools.product(range(F.q), repeat=d):
            v = F.dot(np.array(c, dtype=F.dtype), M) if d else np.zeros(n)
            span.add(tuple(int(x) for x in v))
        spans.add(frozenset(span))
    return len(spans)


@pytest.mark.parametrize("p,k,n,d", [(2, 1, 4, 2), (3, 1, 3, 1), (3, 1, 3, 2), (2, 2, 3, 1)])
def test_subspace_count_brute_force(p, k, n, d):
    F = make_field(p, k)
    assert subspace_count(F, n, d) == brute_subspace_count(F, n, d)


@pytest.mark.parametrize("n,d", [(4, 2), (3, 1), (5, 3)])
def test_subspace_enumeration_distinct_and_complete(n, d):
    F = make_field(3)
    stack = np.concatenate(list(subspace_blocks(F, n, d, block=17)))
    assert len(stack) == gaussian_binomial(n, d, 3)
    assert len({M.tobytes() for M in stack}) == len(stack)
    assert all(rank(F, M) == d for M in stack[:: max(1, len(stack) // 50)])


def test_subspace_range_slicing():
    F = make_field(2)
    full = np.concatenate(list(subspace_blocks(F, 5, 2)))
    part = np.concatenate(list(subspace_blocks(F, 5, 2, start=40, stop=100)))
    assert np.array_equal(full[40:100], part)


def test_projective():
    F = make_field(3)
    P = all_projective(F, 2)
    assert len(P) == projective_count(F, 2) == 4
    for v in P:
        assert v[np.nonzero(v)[0][0]] == 1


def test_vectors_order_and_budget():
    F = make_field(2)
    V = all_vectors(F, 3)
    assert V.tolist()[:3] == [[0, 0, 0], [0, 0, 1], [0, 1, 0]]
    with pytest.raises(BudgetExceeded):
        all_vectors(F, 10, budget=100)
