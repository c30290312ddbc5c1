import itertools

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from lldspace.exactfield import make_field

settings.register_profile(
    "lldspace", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("lldspace")

SMALL_FIELDS = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (3, 2), (2, 3)]


@pytest.fixture(params=SMALL_FIELDS, ids=lambda pk: f"GF{pk[0]**pk[1]}")
def field(request):
    p, k = request.param
    return make_field(p, k)


@pytest.fixture
def gf3():
    return make_field(3)


@pytest.fixture
def gf5():
    return make_field(5)


@pytest.fixture
def gf7():
    return make_field(7)


@pytest.fixture
def gf4():
    return make_field(2, 2)


def span_size(F, rows):
    """Number of distinct vectors in the span of ``rows`` (brute force)."""
    rows = [np.asarray(r) for r in rows]
    if not rows:
        return 1
    seen = set()
    for coeffs in itertools.product(range(F.q), repeat=len(rows)):
        v = F.zeros(rows[0].shape)
        for c, r in zip(coeffs, rows):
            v = F.add(v, F.mul(c, r))
        seen.add(tuple(int(x) for x in v))
    return len(seen)


def brute_rank(F, M):
    """Rank of M from the size of its row space."""
    M = np.asarray(M)
    if M.size == 0:
        return 0
    size = span_size(F, list(M))
    r = 0
    while F.q**r < size:
        r += 1
    return r


def leibniz_det(F, M):
    n = M.shape[0]
    total = 0
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = 1
        for i in range(n):
            term = F.mul(term, int(M[i, perm[i]]))
        total = F.sub(total, term) if inv % 2 else F.add(total, term)
    return int(total)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        verdict, elapsed, limit = RESULTS[number]
        took = "not finished" if elapsed is None else f"{elapsed:.2f}s"
        terminalreporter.write_line(f"criterion {number:2d} {verdict} ({took}, limit {limit:g}s)")
