"""Deterministic generator: published anchor, reference stream, sampling laws."""

import itertools
import math

import pytest
from hypothesis import given, settings, strategies as st

import reference as ref
from rootsplit.rng import MASK64, SplitMix64

seeds = st.integers(0, MASK64)


def test_seed_zero_anchor():
    # first output for seed 0 in the original splitmix64 reference code
    assert SplitMix64(0).next_u64() == 0xE220A8397B1DCDAF


def test_matches_reference_stream():
    for seed in [0, 1, 42, 2**63, MASK64, 0x123456789ABCDEF]:
        gen = SplitMix64(seed)
        assert [gen.next_u64() for _ in range(50)] == ref.splitmix64_stream(seed, 50)


def test_seed_wraps_to_64_bits():
    assert SplitMix64(2**64 + 5).next_u64() == SplitMix64(5).next_u64()


@given(seeds, st.integers(1, 10**9))
@settings(max_examples=200)
def test_next_below_in_range_and_deterministic(seed, bound):
    a = SplitMix64(seed)
    b = SplitMix64(seed)
    xs = [a.next_below(bound) for _ in range(20)]
    assert xs == [b.next_below(bound) for _ in range(20)]
    assert all(0 <= x < bound for x in xs)


def test_next_below_rejects_nonpositive():
    with pytest.raises(ValueError):
        SplitMix64(0).next_below(0)


def test_next_below_covers_small_range():
    gen = SplitMix64(7)
    seen = {gen.next_below(5) for _ in range(500)}
    assert seen == {0, 1, 2, 3, 4}


@given(seeds, st.integers(1, 12), st.data())
@settings(max_examples=150)
def test_sample_subset_shape(seed, n, data):
    k = data.draw(st.integers(0, n))
    roots = SplitMix64(seed).sample_subset(n, k)
    assert len(roots) == k
    assert list(roots) == sorted(set(roots))
    assert all(1 <= r <= n for r in roots)


def test_sample_subset_rejects_bad_sizes():
    with pytest.raises(ValueError):
        SplitMix64(0).sample_subset(4, 5)
    with pytest.raises(ValueError):
        SplitMix64(0).sample_subset(4, -1)


def test_sample_subset_reaches_every_subset():
    # all C(6,3) = 20 subsets appear across seeds, and no others
    want = set(itertools.combinations(range(1, 7), 3))
    got = {SplitMix64(s).sample_subset(6, 3) for s in range(4000)}
    assert got == want


def test_sample_subset_roughly_uniform():
    # chi-square against uniform over C(4,2) = 6 subsets; very loose bound
    counts = {}
    trials = 6000
    for s in range(trials):
        subset = SplitMix64(s).sample_subset(4, 2)
        counts[subset] = counts.get(subset, 0) + 1
    expected = trials / 6
    chi2 = sum((c - expected) ** 2 / expected for c in counts.values())
    # 5 degrees of freedom; 27.8 is far beyond the 99.99th percentile
    assert chi2 < 27.8, counts


def test_sample_subset_consumes_fixed_draw_count():
    # exactly k bounded draws, so later output is predictable
    gen = SplitMix64(9)
    gen.sample_subset(10, 3)
    tail = gen.next_u64()
    gen2 = SplitMix64(9)
    for i in range(3):
        gen2.next_below(10 - i)
    assert gen2.next_u64() == tail


def test_derive_child_seed_is_next_output():
    gen = SplitMix64(5)
    child = gen.derive_child_seed()
    assert child == SplitMix64(5).next_u64()
