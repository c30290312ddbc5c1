import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from lldspace.catalog import build_entry, default_params
from lldspace.errors import ShapeMismatch, SingularTransform
from lldspace.exactfield import make_field
from lldspace.matspace import (
    MatrixSpace, apply_equivalence, direct_sum, dual_hat, fingerprint, full_matrix_space,
    is_reduced, kernel_and_essrange, new_space, random_invertible, reduce, span_of_rank,
    transpose_space, trk, urk,
)
from lldspace.rng import SplitMix64
from conftest import brute_rank


def mata3(F):
    return build_entry("mat3-alt", F).space


def wedge4(F):
    return build_entry("wedge", F, {"n": 4}).space


def brute_urk(S):
    F = S.field
    best = 0
    for c in itertools.product(range(F.q), repeat=S.d):
        M = S.element(np.array(c, dtype=F.dtype)) if S.d else F.zeros((S.m, S.n))
        best = max(best, brute_rank(F, M))
    return best


def brute_trk(S):
    F = S.field
    best = 0
    for x in itertools.product(range(F.q), repeat=S.n):
        x = np.array(x, dtype=F.dtype)
        imgs = [F.matmul(A, x) for A in S.basis]
        best = max(best, brute_rank(F, np.array(imgs)) if imgs else 0)
    return best


@st.composite
def small_spaces(draw):
    F = draw(st.sampled_from([make_field(2), make_field(3)]))
    m = draw(st.integers(1, 3))
    n = draw(st.integers(1, 3))
    d = draw(st.integers(0, 3))
    vals = draw(st.lists(st.integers(0, F.q - 1), min_size=d * m * n, max_size=d * m * n))
    mats = np.array(vals, dtype=F.dtype).reshape(d, m, n)
    return MatrixSpace(F, m, n, list(mats))


def test_new_space_examples(gf3, gf5):
    I2 = gf3.eye(2)
    assert new_space(gf3, 2, 2, [I2, I2]).d == 1
    assert mata3(gf5).d == 3
    Z = new_space(gf3, 2, 2)
    assert Z.d == 0
    assert urk(Z).value == 0 and trk(Z).value == 0
    with pytest.raises(ShapeMismatch):
        new_space(gf3, 2, 2, [gf3.eye(3)])


@given(small_spaces())
def test_urk_trk_brute_force(S):
    assert urk(S).value == brute_urk(S)
    assert trk(S).value == brute_trk(S)


@given(small_spaces())
def test_dual_swaps_ranks(S):
    H = dual_hat(S)
    assert trk(S).value == urk(H).value
    assert urk(S).value == trk(H).value


@given(small_spaces())
def test_dual_twice_is_reduction(S):
    a = fingerprint(reduce(dual_hat(dual_hat(S))).space)
    b = fingerprint(reduce(S).space)
    assert a.summary() == b.summary()
    assert a.rank_distribution == b.rank_distribution


@given(small_spaces())
def test_reduce_properties(S):
    R = reduce(S).space
    assert is_reduced(R)
    assert R.d == S.d
    assert urk(R).value == urk(S).value
    assert reduce(R).space == R


@given(small_spaces(), st.integers(0, 2**32))
def test_fingerprint_invariant_under_equivalence(S, seed):
    rng = SplitMix64(seed)
    P = random_invertible(S.field, S.m, rng)
    Q = random_invertible(S.field, S.n, rng)
    assert fingerprint(apply_equivalence(S, P, Q)) == fingerprint(S)


def test_named_ranks(gf3, gf5):
    assert urk(mata3(gf5)).value == 2
    assert trk(mata3(gf5)).value == 2
    assert urk(wedge4(gf5)).value == 3
    assert trk(wedge4(gf5)).value == 3
    assert trk(full_matrix_space(gf3, 2, 2)).value == 2


def test_fingerprints(gf3, gf5):
    assert fingerprint(mata3(gf3)).summary() == (3, 3, 3, 2, 2, 1)
    full = fingerprint(full_matrix_space(gf3, 2, 2))
    # 2-LLD (each x has a 2-dim annihilator) but not defective, since I2 is invertible
    assert full.urk == 2 and full.lld_index == 2 and full.defect_index == 0
    assert fingerprint(wedge4(gf5)).summary() == (6, 4, 4, 3, 3, 1)
    S = mata3(gf5)
    assert fingerprint(dual_hat(S)) == fingerprint(S)


def test_kernel_and_reduce_examples(gf3):
    S = mata3(gf3)
    ker, ess = kernel_and_essrange(S)
    assert ker.dim == 0 and ess.dim == 3
    assert reduce(S).space == S
    padded = MatrixSpace(gf3, 4, 3, [np.vstack([A, gf3.zeros((1, 3))]) for A in S.basis])
    assert reduce(padded).space.m == 3
    E11 = gf3.zeros((2, 2))
    E11[0, 0] = 1
    R = reduce(MatrixSpace(gf3, 2, 2, [E11])).space
    assert R.shape == (1, 1) and R.d == 1
    ker, ess = kernel_and_essrange(MatrixSpace(gf3, 2, 2))
    assert ker.dim == 2 and ess.dim == 0


def test_dual_of_identity_line(gf5):
    S = MatrixSpace(gf5, 3, 3, [gf5.eye(3)])
    H = dual_hat(S)
    assert H.shape == (3, 1) and H.d == 3


def test_transpose_and_equivalence(gf5):
    W = wedge4(gf5)
    T = transpose_space(W)
    assert T.shape == (4, 6)
    assert transpose_space(T) == W
    assert apply_equivalence(W, gf5.eye(6), gf5.eye(4)) == W
    with pytest.raises(SingularTransform):
        apply_equivalence(W, gf5.zeros((6, 6)), gf5.eye(4))


def test_permutation_keeps_urk(gf5):
    S = build_entry("plane-D1", gf5).space
    P = gf5.eye(4)[[2, 0, 3, 1]]
    Q = gf5.eye(4)[[1, 3, 0, 2]]
    assert urk(apply_equivalence(S, P, Q)).value == 3


@pytest.mark.parametrize("id_", ["mat3-alt", "sixdim", "fivedim-ii", "plane-D1", "plane-R"])
def test_spanned_by_max_rank_elements(gf5, id_):
    S = build_entry(id_, gf5, default_params(id_, gf5)).space
    assert span_of_rank(S, urk(S).value) == S


def test_dual_defect_bound(gf5):
    for id_ in ["mat3-alt", "sixdim", "plane-D0"]:
        S = build_entry(id_, gf5).space
        fp = fingerprint(S)
        assert fingerprint(dual_hat(S)).defect_index >= fp.lld_index >= 1


def test_direct_sum_ranks(gf3):
    S = direct_sum(mata3(gf3), full_matrix_space(gf3, 1, 1))
    assert urk(S).value == 3 and S.d == 4


def test_urk_generic_mode_reports_method():
    F = make_field(3)
    S = wedge4(F)
    res = urk(S, budget=10)
    assert res.method == "generic-extension" and not res.exact
    assert res.value == 3
