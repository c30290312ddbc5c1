import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from lldspace.errors import SingularTransform
from lldspace.exactfield import (
    Subspace, batch_det, batch_rank, det, inverse, kernel, make_field, rank, rref, solve,
)
from conftest import brute_rank, leibniz_det

FIELDS = [make_field(2), make_field(3), make_field(5), make_field(2, 2), make_field(3, 2)]


@st.composite
def matrices(draw, max_m=4, max_n=4):
    F = draw(st.sampled_from(FIELDS))
    m = draw(st.integers(1, max_m))
    n = draw(st.integers(1, max_n))
    vals = draw(st.lists(st.integers(0, F.q - 1), min_size=m * n, max_size=m * n))
    return F, np.array(vals, dtype=F.dtype).reshape(m, n)


@st.composite
def square(draw, max_n=4):
    F = draw(st.sampled_from(FIELDS))
    n = draw(st.integers(1, max_n))
    vals = draw(st.lists(st.integers(0, F.q - 1), min_size=n * n, max_size=n * n))
    return F, np.array(vals, dtype=F.dtype).reshape(n, n)


@given(matrices(max_m=3, max_n=3))
def test_rank_matches_row_space_size(args):
    F, M = args
    if F.q**M.shape[0] > 2000:
        return
    assert rank(F, M) == brute_rank(F, M)


@given(matrices())
def test_rank_of_transpose(args):
    F, M = args
    assert rank(F, M) == rank(F, M.T)


@given(matrices())
def test_rref_is_canonical(args):
    F, M = args
    R, piv = rref(F, M)
    assert len(piv) == rank(F, M)
    for i, pc in enumerate(piv):
        assert R[i, pc] == 1
        assert not np.delete(R[:, pc], i).any()
    # row operations do not change the rref
    if M.shape[0] >= 2:
        N = M.copy()
        N[0] = F.add(N[0], F.mul(2 % F.p or 1, N[1]))
        assert np.array_equal(rref(F, N)[0], R)


@given(matrices())
def test_kernel(args):
    F, M = args
    K = kernel(F, M)
    assert K.dim == M.shape[1] - rank(F, M)
    if K.dim:
        assert not F.matmul(M, K.basis.T).any()


@given(square())
def test_det_matches_leibniz(args):
    F, M = args
    assert det(F, M) == leibniz_det(F, M)


@given(square())
def test_inverse(args):
    F, M = args
    n = M.shape[0]
    if rank(F, M) < n:
        with pytest.raises(SingularTransform):
            inverse(F, M)
        return
    assert np.array_equal(F.matmul(M, inverse(F, M)), F.eye(n))


@given(matrices())
def test_solve(args):
    F, M = args
    x0 = np.arange(M.shape[1]) % F.q
    b = F.matmul(M, x0.astype(F.dtype))
    x = solve(F, M, b)
    assert np.array_equal(F.matmul(M, x), b)


def test_solve_inconsistent():
    F = make_field(5)
    assert solve(F, [[1, 0], [1, 0]], [1, 2]) is None


def test_batch_agrees_with_single(field):
    F = field
    rng = np.random.default_rng(1)
    stack = rng.integers(0, F.q, (50, 3, 3)).astype(F.dtype)
    assert list(batch_rank(F, stack)) == [rank(F, M) for M in stack]
    assert list(batch_det(F, stack)) == [leibniz_det(F, M) for M in stack]


def test_subspace_operations(gf5):
    F = gf5
    A = Subspace(F, 4, [[1, 0, 0, 0], [0, 1, 0, 0]])
    B = Subspace(F, 4, [[0, 1, 0, 0], [0, 0, 1, 0]])
    assert A.intersect(B) == Subspace(F, 4, [[0, 1, 0, 0]])
    assert (A + B).dim == 3
    assert A.annihilator().annihilator() == A
    P = A.quotient_map()
    assert P.shape == (2, 4)
    assert not F.matmul(P, A.basis.T).any()
    assert rank(F, P) == 2


def test_subspace_contains(gf3):
    S = Subspace(gf3, 3, [[1, 1, 0]])
    assert S.contains([2, 2, 0])
    assert not S.contains([1, 0, 0])
