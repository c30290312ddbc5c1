"""Acceptance suite: one test per criterion, each timed against its limit.

Every test records its verdict and wall time in ``RESULTS``; the
terminal-summary hook in conftest prints one line per criterion.
"""

import io
import itertools
import subprocess
import sys
import time
from contextlib import contextmanager
from math import comb

import numpy as np

from lldspace.alternating import (
    operator_space_from_alt, pfaffian4_batch, random_alt_subspace, regularity_checks, wedge_space,
)
from lldspace.catalog import build_entry, default_params
from lldspace.cli import run
from lldspace.cli.harness import (
    catalog_entries, entry_space, rank_bounds, verify_catalog, verify_duality,
)
from lldspace.cli.spacefile import emit, parse
from lldspace.errors import BudgetExceeded
from lldspace.exactfield import batch_det, make_field, rank
from lldspace.lldstruct import (
    alternating_core_split, column_property, flanders_atkinson_check, minimal_clld,
    primitive, r_reduce_normalize, semiprimitive, thin_decomposition,
)
from lldspace.matspace import (
    dual_hat, fingerprint, full_matrix_space, is_reduced, trk, urk,
)
from lldspace.quadform import QuadForm, classify_dim2, classify_dim3, restrict_pfaffian
from lldspace.rng import SplitMix64

RESULTS = {}

F3, F5, F7, F4 = make_field(3), make_field(5), make_field(7), make_field(2, 2)


@contextmanager
def criterion(number, limit):
    """Time the body, record PASS/FAIL and fail on overrun."""
    start = time.perf_counter()
    RESULTS[number] = ("FAIL", None, limit)
    yield
    elapsed = time.perf_counter() - start
    ok = elapsed < limit
    RESULTS[number] = ("PASS" if ok else "FAIL", elapsed, limit)
    assert ok, f"criterion {number} took {elapsed:.2f}s, limit {limit}s"


def entry(id_, F, **params):
    return build_entry(id_, F, params or default_params(id_, F))


# -- 1 -------------------------------------------------------------------------

def test_criterion_01_pfaffian_identity():
    with criterion(1, 1.0):
        for F in (F3, F5, F7, F4):
            rng = SplitMix64(2024)
            v = rng.integers(F.q, (1000, 6)).astype(F.dtype)
            M = F.zeros((1000, 4, 4))
            i, j = np.triu_indices(4, 1)
            M[:, i, j] = v
            M[:, j, i] = F.neg(v)
            pf = pfaffian4_batch(F, M)
            assert np.array_equal(F.mul(pf, pf), batch_det(F, M)), F


# -- 2 -------------------------------------------------------------------------

def test_criterion_02_mata3():
    with criterion(2, 1.0):
        for F in (F3, F5):
            S = entry("mat3-alt", F).space
            fp = fingerprint(S)
            assert fp.summary() == (3, 3, 3, 2, 2, 1)
            assert fp.urk_method == "exact" and fp.trk_method == "exact"
            assert minimal_clld(S, 1).holds
            assert semiprimitive(S).holds
            assert primitive(S).holds
            assert fingerprint(dual_hat(S)) == fp


# -- 3 -------------------------------------------------------------------------

PRIMITIVE = {"plane-D0": False, "plane-D1": True, "plane-R": True, "plane-hyperbolic": True}
RANK3 = ["plane-D0", "plane-D1", "plane-R", "plane-hyperbolic", "fivedim-i", "fivedim-ii",
         "sixdim"]


def test_criterion_03_catalog_claims():
    with criterion(3, 30.0):
        for F in (F5, F7):
            rows = verify_catalog(F)
            bad = [(id_, got) for id_, ok, got in rows if not ok]
            assert not bad, bad
            for id_ in RANK3:
                S = entry(id_, F).space
                assert urk(S).value == 3, id_
                assert semiprimitive(S).holds, id_
                if id_ in PRIMITIVE:
                    assert primitive(S).holds == PRIMITIVE[id_], id_
            for id_ in ("lld4-D1", "lld4-R"):
                S = entry(id_, F).space
                assert fingerprint(S).lld_index == 1, id_
                assert minimal_clld(S, 1).holds, id_


# -- 4 -------------------------------------------------------------------------

def test_criterion_04_duality_involution():
    with criterion(4, 30.0):
        rows = verify_duality(F5)
        assert len(rows) == 17
        bad = [(id_, info) for id_, ok, info in rows if not ok]
        assert not bad, bad
        for id_, E in catalog_entries(F5):
            S, H = entry_space(E), dual_hat(entry_space(E))
            assert trk(S).value == urk(H).value, id_
            assert urk(S).value == trk(H).value, id_


# -- 5 -------------------------------------------------------------------------

def test_criterion_05_flanders_atkinson():
    with criterion(5, 30.0):
        checked = 0
        for F in (F5, F7):
            for id_, E in catalog_entries(F):
                S = entry_space(E)
                if F.q <= urk(S).value:
                    continue
                T, _, _ = r_reduce_normalize(S)
                res = flanders_atkinson_check(T)
                assert res.holds, (id_, F, res.witness)
                assert res.tags["hypothesis"] == "met"
                assert res.tags["elements"] == "all", (id_, res.tags)
                checked += 1
        assert checked == 34


# -- 6 -------------------------------------------------------------------------

def gauss3(n, k):
    num = den = 1
    for i in range(k):
        num *= 3 ** (n - i) - 1
        den *= 3 ** (i + 1) - 1
    return num // den


def test_criterion_06_column_property():
    with criterion(6, 300.0):
        res = column_property(wedge_space(F3, 3))
        assert res.holds and res.tags["mode"] == "exact"
        res = column_property(wedge_space(F3, 4))
        assert res.holds and res.tags["mode"] == "exact"
        assert res.tags["subspaces"] == sum(gauss3(6, k) for k in range(6)) == 56631
        res = column_property(full_matrix_space(F3, 2, 2))
        assert not res.holds
        assert res.witness["W"].shape[0] == 0


# -- 7 -------------------------------------------------------------------------

def test_criterion_07_atkinson_lloyd():
    with criterion(7, 10.0):
        for F in (F5, F7):
            for id_, E in catalog_entries(F):
                S = entry_space(E)
                assert S.m <= comb(urk(S).value + 1, 2), (id_, F)
        S = wedge_space(F7, 5)
        r = urk(S).value
        assert (S.m, r) == (10, 4)
        assert S.m == comb(r + 1, 2)


# -- 8 -------------------------------------------------------------------------

def transitivity_samples(count=200, seed=8):
    """Seeded incompressible V in Mata_n(GF(5)), n in {4, 5}, dim V > 1 + C(n-2, 2)."""
    rng = SplitMix64(seed)
    out, i = [], 0
    while len(out) < count:
        n = 4 + len(out) % 2
        low, top = 2 + comb(n - 2, 2), comb(n, 2)
        stream = rng.split(i)
        i += 1
        V = random_alt_subspace(F5, n, low + stream.below(top - low + 1), stream)
        if V.d > 1 + comb(n - 2, 2) and regularity_checks(V).incompressible:
            out.append(V)
    return out


def test_criterion_08_transitivity():
    with criterion(8, 60.0):
        samples = transitivity_samples()
        assert len(samples) == 200
        assert {V.n for V in samples} == {4, 5}
        for V in samples:
            res = trk(V.as_matrix_space())
            assert res.method == "exact"
            assert res.value == V.n - 1, V


# -- 9 -------------------------------------------------------------------------

def test_criterion_09_decompositions():
    with criterion(9, 10.0):
        S = wedge_space(F5, 4)
        r = urk(S).value
        res = thin_decomposition(S)
        assert res.p == 3
        assert res.checks and all(res.checks[k] for k in res.checks if k.endswith("_ok"))
        p = res.p
        assert S.m <= comb(p + 1, 2) + comb(r - p + 1, 2)
        assert res.bound == (6, 6) == (S.m, comb(p + 1, 2) + comb(r - p + 1, 2))
        T, _, _ = r_reduce_normalize(S)
        core = alternating_core_split(T)
        assert core.s == S.m
        assert all(core.checks[k] for k in core.checks if k.endswith("_ok"))
        # phi[u, v] is the value of the bilinear map on basis vectors u, v
        phi = core.phi
        u = np.arange(phi.shape[0])
        assert not phi[u, u].any()
        assert np.array_equal(phi, F5.neg(np.swapaxes(phi, 0, 1)))
        assert core.checks["D_is_operator_space_ok"]
        assert urk(core.D).value == core.p
        assert fingerprint(core.space) == fingerprint(S)


# -- 10 ------------------------------------------------------------------------

def brute_orbit_labels(F):
    """Orbit id of every (a, b, c) under q -> lam * (q o P), P in GL_2, lam != 0."""
    gl = [np.array(P, dtype=F.dtype).reshape(2, 2)
          for P in itertools.product(range(F.q), repeat=4)]
    gl = [P for P in gl if rank(F, P) == 2]
    label = {}
    for abc in itertools.product(range(F.q), repeat=3):
        if abc in label:
            continue
        q = QuadForm(F, 2, [[abc[0], abc[1]], [0, abc[2]]])
        for P in gl:
            s = q.substitute(P)
            for lam in range(1, F.q):
                C = s.scale(lam).coeffs
                label.setdefault((int(C[0, 0]), int(C[0, 1]), int(C[1, 1])), abc)
    return label


PLANE_TAGS = {"plane-D0": "D0", "plane-D1": "D1", "plane-R": "R(2)", "plane-hyperbolic": "R(1)"}


def test_criterion_10_quadratic_classifier():
    with criterion(10, 120.0):
        for id_, tag in PLANE_TAGS.items():
            W = entry(id_, F5).plane
            assert classify_dim2(restrict_pfaffian(F5, W)).tag == tag, id_
        label = brute_orbit_labels(F5)
        assert len(label) == 125
        tag_of = {}
        for abc, orbit in label.items():
            q = QuadForm(F5, 2, [[abc[0], abc[1]], [0, abc[2]]])
            tag_of.setdefault(orbit, set()).add(classify_dim2(q).tag)
        assert all(len(t) == 1 for t in tag_of.values())
        assert len({next(iter(t)) for t in tag_of.values()}) == len(tag_of)
        a = {i: entry(f"a{i}", F5).space for i in range(1, 6)}
        assert regularity_checks(a[1]).incompressible
        assert not regularity_checks(a[2]).incompressible
        ranks = [classify_dim3(restrict_pfaffian(F5, a[i])).rank for i in (3, 4, 5)]
        assert ranks == [1, 2, 3]
        assert classify_dim3(restrict_pfaffian(F5, a[1])).rank == 0
        assert classify_dim3(restrict_pfaffian(F5, a[2])).rank == 0


# -- 11 ------------------------------------------------------------------------

def bound_checks(S, F):
    """Rank bounds whose hypotheses hold for S; returns the number applied."""
    r = urk(S).value
    t = trk(S).value
    b = rank_bounds(r)
    applied = 0
    if F.q <= r or not is_reduced(S):
        return applied
    sp = semiprimitive(S).holds
    try:
        col = sp or column_property(S).holds
    except BudgetExceeded:
        col = False
    if col:
        assert t <= b["column"], (t, r)
        applied += 1
    if sp and r >= 2:
        assert t <= b["semiprimitive"], (t, r)
        assert t <= b["semiprimitive2"], (t, r)
        applied += 2
    return applied


def test_criterion_11_rank_bounds():
    with criterion(11, 120.0):
        applied = 0
        for id_, E in catalog_entries(F5):
            applied += bound_checks(entry_space(E), F5)
        assert applied >= 40
        pipeline = 0
        for V in transitivity_samples():
            S = operator_space_from_alt(V)
            if F5.q > urk(S).value and semiprimitive(S).holds:
                pipeline += 1
                assert bound_checks(S, F5) == 3
        assert pipeline > 0
        out, err = io.StringIO(), io.StringIO()
        code = run(["search", "conjecture", "--r", "3", "--field", "5", "--trials", "1000"],
                   out, err)
        lines = dict(line.split("\t", 1) for line in out.getvalue().splitlines())
        assert code == 0 and lines["violations"] == "0", out.getvalue()
        assert int(lines["semiprimitive"]) > 0


# -- 12 ------------------------------------------------------------------------

def test_criterion_12_cli_determinism(tmp_path):
    with criterion(12, 10.0):
        path = tmp_path / "wedge4.llds"
        path.write_text(emit(wedge_space(F5, 4)))
        argvs = [
            ["analyze", str(path)],
            ["check", "column", str(path), "--mode", "randomized", "--seed", "7"],
            ["search", "conjecture", "--r", "3", "--field", "5", "--trials", "30", "--seed", "5"],
            ["verify", "pfaffian", "--field", "7"],
        ]
        for argv in argvs:
            reports = []
            for _ in range(2):
                out, err = io.StringIO(), io.StringIO()
                reports.append((run(argv, out, err), out.getvalue()))
            assert reports[0] == reports[1], argv
        argv = ["search", "conjecture", "--r", "2", "--field", "5", "--trials", "20", "--seed", "1"]
        procs = [subprocess.run([sys.executable, "-m", "lldspace", *argv],
                                capture_output=True, check=False) for _ in range(2)]
        assert procs[0].returncode == procs[1].returncode == 0
        assert procs[0].stdout == procs[1].stdout and procs[0].stdout
        for F in (F3, F5, F7, F4, make_field(3, 2)):
            for id_, E in catalog_entries(F):
                text = emit(E.space)
                back = parse(text)
                assert back == E.space, id_
                assert emit(back) == text, id_
