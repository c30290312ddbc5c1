import numpy as np
from hypothesis import given, strategies as st

from lldspace.rng import SplitMix64


def test_reference_value():
    # first output of splitmix64 seeded with 0
    assert SplitMix64(0).next_u64() == 0xE220A8397B1DCDAF


def test_split_depends_only_on_seed_and_index():
    a, b = SplitMix64(7), SplitMix64(7)
    a.next_u64()
    assert a.split(3).next_u64() == b.split(3).next_u64()
    assert a.split(3).next_u64() != a.split(4).next_u64()


def test_array_matches_scalar_stream():
    a, b = SplitMix64(42), SplitMix64(42)
    arr = a.u64_array(10)
    assert [int(x) for x in arr] == [b.next_u64() for _ in range(10)]
    assert a.next_u64() == b.next_u64()


@given(st.integers(0, 2**64 - 1), st.integers(1, 1000))
def test_below_in_range(seed, bound):
    r = SplitMix64(seed)
    assert all(0 <= r.below(bound) < bound for _ in range(5))
    vals = r.integers(bound, (4, 3))
    assert vals.shape == (4, 3)
    assert ((vals >= 0) & (vals < bound)).all()


def test_integers_roughly_uniform():
    vals = SplitMix64(1).integers(5, (20000,))
    counts = np.bincount(vals.astype(np.int64), minlength=5)
    assert counts.min() > 3700 and counts.max() < 4300
