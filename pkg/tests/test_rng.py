"""The generator is frozen: these tests pin its exact output stream."""

from __future__ import annotations

from collections import Counter

import numpy as np
import pytest

from shellbench import _kernels
from shellbench.rng import SplitMix64, derive_seed, fisher_yates, mix64, stable_hash64


def test_splitmix64_reference_vector():
    # canonical first outputs for seed 0 (state advances before mixing)
    g = SplitMix64(0)
    assert g.next_u64() == 0xE220A8397B1DCDAF
    assert g.next_u64() == 0x6E789E6AA1B965F4


def test_mix64_is_bijective_on_samples():
    seen = {mix64(x) for x in range(4096)}
    assert len(seen) == 4096


def test_derive_seed_is_order_sensitive_and_stable():
    assert derive_seed(42, 0) == 0xBDD732262FEB6E95
    assert derive_seed(42, 1) == 0x118E846EA93BC949
    assert derive_seed(1, 2, 3) != derive_seed(1, 3, 2)


def test_stable_hash64_known_distinct():
    assert stable_hash64("tokuda") != stable_hash64("ciura-128")
    assert stable_hash64("x") == stable_hash64("x")


def test_below_rejects_bad_bound():
    with pytest.raises(ValueError):
        SplitMix64(1).below(0)


def test_below_range_and_determinism():
    g1, g2 = SplitMix64(7), SplitMix64(7)
    draws1 = [g1.below(10) for _ in range(200)]
    draws2 = [g2.below(10) for _ in range(200)]
    assert draws1 == draws2
    assert all(0 <= d < 10 for d in draws1)
    assert set(draws1) == set(range(10))


def test_fisher_yates_trivial_and_deterministic():
    assert fisher_yates(1, 123) == [1]
    assert fisher_yates(6, 55) == fisher_yates(6, 55)
    assert sorted(fisher_yates(50, 99)) == list(range(1, 51))


def test_kernel_matches_reference_shuffle():
    for seed in (0, 1, 42, 2**63 + 12345, (1 << 64) - 1):
        for n in (1, 2, 3, 7, 100, 500):
            expected = fisher_yates(n, SplitMix64(seed))
            got = _kernels.fill_permutation(n, np.uint64(seed)).tolist()
            assert got == expected, (seed, n)


def test_shuffle_uniformity_chi_square():
    # every permutation of three elements should appear ~1/6 of the time
    draws = 60_000
    counts = Counter(tuple(fisher_yates(3, SplitMix64(derive_seed(2024, t))))
                     for t in range(draws))
    assert len(counts) == 6
    for perm, count in counts.items():
        assert abs(count / draws - 1 / 6) < 0.01, (perm, count)
