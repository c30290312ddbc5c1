import numpy as np
import pytest

from lldspace.catalog import build_entry, default_params
from lldspace.errors import BadWitness, HypothesisViolated, InvalidShape, NotCLLD, NotRReduced
from lldspace.exactfield import all_projective, inverse, make_field, rank
from lldspace.lldstruct import (
    BlockShape, alternating_core_split, colinearity_hypothesis, column_property,
    decomposition_inequality, flanders_atkinson_check, indices, minimal_clld, one_dim_split,
    primitive, r_reduce_normalize, semiprimitive, thin_decomposition,
)
from lldspace.lldstruct.common import jr
from lldspace.matspace import (
    MatrixSpace, fingerprint, full_matrix_space, transpose_space, urk,
)


def entry(id_, F, **params):
    return build_entry(id_, F, params or default_params(id_, F)).space


def e(F, m, n, i, j):
    E = F.zeros((m, n))
    E[i, j] = 1
    return E


# -- indices and minimality ---------------------------------------------------

def test_indices(gf3, gf5):
    assert indices(entry("mat3-alt", gf3)).lld_index == 1
    assert indices(full_matrix_space(gf3, 2, 2)).defect_index == 0
    ix = indices(entry("wedge", gf5, n=4))
    assert ix.lld_index == 1 and ix.defect_index == 1


def test_minimal_clld(gf3):
    M3 = entry("mat3-alt", gf3)
    assert minimal_clld(M3, 1).holds
    bigger = MatrixSpace(gf3, 3, 3, list(M3.basis) + [e(gf3, 3, 3, 0, 0)])
    res = minimal_clld(bigger, 1)
    assert not res.holds
    assert MatrixSpace(gf3, 3, 3, res.witness["hyperplane"]) == M3
    with pytest.raises(NotCLLD):
        minimal_clld(MatrixSpace(gf3, 3, 3), 1)


# -- semi-primitivity and primitivity -----------------------------------------

def test_semiprimitive_examples(gf5):
    assert semiprimitive(entry("mat3-alt", gf5)).holds
    assert semiprimitive(entry("plane-D0", gf5)).holds
    M3 = entry("mat3-alt", gf5)
    padded = MatrixSpace(gf5, 4, 3, [np.vstack([A, gf5.zeros((1, 3))]) for A in M3.basis])
    res = semiprimitive(padded)
    assert not res.holds and res.witness["kind"] == "not-reduced"


def test_primitive_examples(gf5):
    assert primitive(entry("plane-D1", gf5)).holds
    assert primitive(entry("mat3-alt", gf5)).holds
    res = primitive(entry("plane-D0", gf5))
    assert not res.holds and res.witness["kind"] == "line"


@pytest.mark.parametrize("id_", ["mat3-alt", "plane-D0", "plane-D1", "plane-R",
                                 "plane-hyperbolic", "fivedim-i", "k-vee-mata3"])
def test_primitive_is_semiprimitive_both_ways(gf5, id_):
    S = entry(id_, gf5)
    both = semiprimitive(S).holds and semiprimitive(transpose_space(S)).holds
    assert primitive(S).holds == both


# -- column property ------------------------------------------------------------

def test_column_property_full_mat22_fails(gf3):
    res = column_property(full_matrix_space(gf3, 2, 2))
    assert not res.holds
    assert res.witness["W"].shape[0] == 0


def test_column_property_wedge3(gf3):
    assert column_property(entry("wedge", gf3, n=3)).holds


@pytest.mark.parametrize("id_", ["mat3-alt", "plane-D0", "plane-D1", "plane-R"])
def test_semiprimitive_implies_column_property(gf5, id_):
    S = entry(id_, gf5)
    assert semiprimitive(S).holds
    assert column_property(S).holds


def test_column_property_randomized_is_seeded(gf5):
    S = entry("sixdim", gf5)
    a = column_property(S, mode="randomized", trials=50, seed=3)
    b = column_property(S, mode="randomized", trials=50, seed=3)
    assert a.holds and b.holds and a.tags == b.tags


# -- Flanders-Atkinson ---------------------------------------------------------------

def test_flanders_wedge4(gf5):
    T, P, Q = r_reduce_normalize(entry("wedge", gf5, n=4))
    res = flanders_atkinson_check(T)
    assert res.holds and res.tags["hypothesis"] == "met"


def test_flanders_detects_rank_excess(gf5):
    S = MatrixSpace(gf5, 2, 2, [jr(gf5, 2, 2, 1), e(gf5, 2, 2, 1, 1)])
    res = flanders_atkinson_check(S, r=1)
    assert not res.holds and res.witness["k"] == "D"
    assert res.tags["hypothesis"] == "hypothesis-unmet"


def test_flanders_vacuous_blocks(gf5):
    assert flanders_atkinson_check(MatrixSpace(gf5, 2, 2, [gf5.eye(2)])).holds


def test_flanders_needs_jr(gf5):
    with pytest.raises(NotRReduced):
        flanders_atkinson_check(MatrixSpace(gf5, 2, 2, [e(gf5, 2, 2, 0, 1)]), r=1)


# -- decomposition inequality --------------------------------------------------------

def test_decomposition_inequality(gf5):
    T, _, _ = r_reduce_normalize(entry("wedge", gf5, n=4))
    ub, uc, us, holds = decomposition_inequality(T, BlockShape(3, 3))
    assert holds and ub + uc <= us == 3
    S = entry("mat3-alt", gf5)
    assert decomposition_inequality(S, BlockShape(3, 0))[3]
    D1, _, _ = r_reduce_normalize(entry("plane-D1", gf5))
    assert decomposition_inequality(D1, BlockShape(3, 3))[3]
    with pytest.raises(InvalidShape):
        decomposition_inequality(S, BlockShape(1, 1))


def test_lower_space_has_column_property(gf5):
    T, _, _ = r_reduce_normalize(entry("wedge", gf5, n=4))
    lower = MatrixSpace(gf5, 3, 3, list(T.basis[:, 3:, :3]))
    assert column_property(lower).holds


# -- normalization and splits ------------------------------------------------------

def test_r_reduce_normalize(gf5):
    for S, r in [(entry("mat3-alt", gf5), 2), (MatrixSpace(gf5, 3, 3, [gf5.eye(3)]), 3),
                 (entry("wedge", gf5, n=4), 3)]:
        T, P, Q = r_reduce_normalize(S)
        assert T.contains(jr(gf5, S.m, S.n, r))
        assert fingerprint(T) == fingerprint(S)


def test_one_dim_split(gf5):
    S = entry("plane-D0", gf5)
    x = np.array([0, 0, 0, 1])
    res = one_dim_split(S, x)
    assert res.q == 3
    assert res.checks["H_reduced"] and res.checks["urk_drop_ok"]
    assert res.H.shape == (3, 3)
    again = one_dim_split(res.space, inverse(gf5, res.Q) @ x % 5)
    assert again.q == res.q


def test_one_dim_split_rejects_bad_witness(gf5):
    W = entry("wedge", gf5, n=4)
    for x in all_projective(gf5, 4):
        assert rank(gf5, gf5.matmul(W.basis, x)) == 3
    with pytest.raises(BadWitness):
        one_dim_split(W, [1, 0, 0, 0])
    with pytest.raises(BadWitness):
        one_dim_split(entry("fivedim-i", gf5), [0, 1, 0, 0])


def test_thin_decomposition_wedge3(gf5):
    res = thin_decomposition(entry("wedge", gf5, n=3))
    assert (res.p, res.t) == (2, 0) and res.s <= 1
    assert all(res.checks[k] for k in res.checks if k.endswith("_ok"))


def test_thin_decomposition_wedge4(gf5):
    res = thin_decomposition(entry("wedge", gf5, n=4))
    assert res.p == 3
    assert res.bound == (6, 6)
    # structure: rows below r are C(M)^T B_i with B_i alternating
    T = res.space
    for M in T.basis:
        C = M[:3, 3]
        for i, Bi in enumerate(res.B):
            assert np.array_equal(M[3 + i, :3], gf5.matmul(C, Bi))


def test_thin_decomposition_rank_hypothesis(gf5):
    S = entry("wedge", gf5, n=4)
    with pytest.raises(HypothesisViolated):
        thin_decomposition(S, A=gf5.zeros((6, 4)))


def test_colinearity(gf5):
    T, _, _ = r_reduce_normalize(entry("wedge", gf5, n=4))
    holds, alpha = colinearity_hypothesis(T)
    assert holds and alpha is not None
    # for M = xJ + yC + zB, A(M) C(M) = (xy + yz, xz) has no linear alpha
    J = jr(gf5, 2, 3, 2)
    C = gf5.array([[0, 1, 1], [0, 0, 0]])
    B = e(gf5, 2, 3, 1, 2)
    assert colinearity_hypothesis(MatrixSpace(gf5, 2, 3, [J, C, B])) == (False, None)
    with pytest.raises(HypothesisViolated):
        colinearity_hypothesis(MatrixSpace(gf5, 2, 3, [J, B]))


def test_alternating_core_split_wedge4(gf5):
    S = entry("wedge", gf5, n=4)
    T, _, _ = r_reduce_normalize(S)
    res = alternating_core_split(T)
    assert res.s == S.m == 6
    assert res.H.d == 0
    assert res.checks["phi_alternating_ok"] and res.checks["urk_D"] == 3
    assert fingerprint(res.space) == fingerprint(S)


def test_alternating_core_split_fivedim(gf5):
    T, _, _ = r_reduce_normalize(entry("fivedim-ii", gf5))
    res = alternating_core_split(T)
    assert res.s == 5 and res.p == 3
    assert res.checks["D_is_operator_space_ok"]


def test_alternating_core_split_bad_alpha(gf5):
    T, _, _ = r_reduce_normalize(entry("wedge", gf5, n=4))
    with pytest.raises(HypothesisViolated):
        alternating_core_split(T, alpha=[2, 3, 1, 4])
