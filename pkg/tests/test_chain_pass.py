"""Chain detection/fixing: crafted fragments, exhaustive and randomized oracles."""

from __future__ import annotations


import pytest

from conftest import all_permutations
from shellbench import (
    ChainDescriptor,
    ChainKind,
    Inversion,
    SortMetrics,
    StructuralAssumptionError,
    count_k_inversions,
    final_pass_25,
    final_pass_34,
    find_chain_25,
    find_chain_34,
    fix_chain_25,
    fix_chain_34,
    gapped_insertion_pass,
    mean_presort_inversions,
    pratt,
    presort_passes,
)
from shellbench.chain_pass import structural_violations_25, structural_violations_34
from shellbench.rng import SplitMix64, derive_seed, fisher_yates


def presorted(perm, bases):
    a = list(perm)
    presort_passes(a, pratt(bases, len(a)))
    return a


# ---------------------------------------------------------------- 2 & 5 ----

def test_single_3_inversion_fragment_detected_and_fixed_for_five_ops():
    # fragment values ... 3 1 4 2 ... : one 3-inversion with its implied
    # 1-inversions; the fix is a single 4-cycle costing five operations
    a = [3, 1, 4, 2]
    chain = find_chain_25(a, 0, verified=True)
    assert chain is not None and chain.kind is ChainKind.MC6
    assert chain.k == 1 and chain.interval == (0, 3)
    assert chain.essential == (Inversion(0, 3),)
    m = SortMetrics()
    fix_chain_25(a, chain, m)
    assert a == [1, 2, 3, 4]
    assert m.exchange_ops == 5 and m.exchanges == 4


def test_mc1_fix_costs_three_ops():
    a = [1, 3, 2, 4]
    chain = find_chain_25(a, 1)
    assert chain is not None and chain.kind is ChainKind.MC1
    m = SortMetrics()
    fix_chain_25(a, chain, m)
    assert a == [1, 2, 3, 4]
    assert m.exchange_ops == 3 and m.exchanges == 2


def test_sorted_array_has_no_chains():
    a = list(range(1, 12))
    assert all(find_chain_25(a, i) is None for i in range(len(a)))
    assert all(find_chain_34(a, i) is None for i in range(len(a)))


def test_nested_1_inversion_is_not_a_chain_head():
    a = [3, 1, 4, 2, 5]
    # (2, 3) is the nested 1-inversion of the 3-inversion at 0
    assert find_chain_25(a, 2) is None


def test_find_chain_25_walks_backward_to_the_head():
    # crossing 3-inversions at 0 and 2 over the interval [0, 5]
    a = [3, 1, 5, 2, 6, 4]
    assert structural_violations_25(a) == []
    for probe in (0, 2):
        chain = find_chain_25(a, probe)
        assert chain is not None and chain.kind is ChainKind.MC6
        assert chain.k == 2 and chain.interval == (0, 5)
    m = SortMetrics()
    fix_chain_25(a, find_chain_25(a, 0), m)
    assert a == sorted(a)
    # one 6-cycle rearranges all six entries
    assert m.exchange_ops == 7


def test_fix_chain_25_rejects_stale_descriptor():
    a = [3, 1, 4, 2]
    chain = find_chain_25(a, 0)
    a.sort()
    with pytest.raises(StructuralAssumptionError):
        fix_chain_25(a, chain, SortMetrics())


def test_fix_chain_25_rejects_34_kinds():
    bad = ChainDescriptor(ChainKind.MC5, (0, 3), (Inversion(0, 2), Inversion(1, 3)))
    with pytest.raises(ValueError):
        fix_chain_25([4, 1, 5, 2], bad, SortMetrics())
    good_25 = ChainDescriptor(ChainKind.MC6, (0, 3), (Inversion(0, 3),))
    with pytest.raises(ValueError):
        fix_chain_34([3, 1, 4, 2], good_25, SortMetrics())


def test_mc6_brute_force_small_arrangements():
    """Every 2&5-sorted arrangement of up to 8 values is fixed correctly."""
    for n in range(4, 9):
        for perm in all_permutations(n):
            a = list(perm)
            if structural_violations_25(a):
                continue
            m = SortMetrics()
            final_pass_25(a, m, verified=True)
            assert a == sorted(a), perm
            assert m.structural_fallbacks == 0


def test_final_pass_25_exhaustive_presort_equivalence():
    allowed = {ChainKind.MC1, ChainKind.MC6}
    for n in range(2, 9):
        gaps = pratt((2, 5), n)
        for perm in all_permutations(n):
            a = presorted(perm, (2, 5))
            chains: list[ChainDescriptor] = []
            final_pass_25(a, SortMetrics(), verified=True, collect=chains)
            assert a == sorted(perm)
            assert {c.kind for c in chains} <= allowed


def test_final_pass_34_exhaustive_presort_equivalence():
    allowed = set(ChainKind) - {ChainKind.MC6}
    for n in range(2, 9):
        for perm in all_permutations(n):
            a = presorted(perm, (3, 4))
            chains: list[ChainDescriptor] = []
            final_pass_34(a, SortMetrics(), verified=True, collect=chains)
            assert a == sorted(perm)
            assert {c.kind for c in chains} <= allowed


def test_final_pass_25_on_sorted_input_only_scans():
    a = list(range(1, 40))
    m = SortMetrics()
    final_pass_25(a, m)
    assert m.exchanges == 0 and m.exchange_ops == 0
    assert m.comparisons >= len(a) - 1


def test_final_pass_rejects_unsorted_precondition_in_verified_mode():
    with pytest.raises(StructuralAssumptionError):
        final_pass_25(list(range(10, 0, -1)), SortMetrics(), verified=True)
    with pytest.raises(StructuralAssumptionError):
        final_pass_34(list(range(10, 0, -1)), SortMetrics(), verified=True)


def test_chains_partition_remaining_inversions_25():
    rng = SplitMix64(424242)
    for _ in range(60):
        n = 60 + rng.below(400)
        a = presorted(fisher_yates(n, rng), (2, 5))
        inv = {(i, i + k) for k in (1, 3) for i in range(n - k) if a[i] > a[i + k]}
        chains: list[ChainDescriptor] = []
        final_pass_25(list(a), SortMetrics(), collect=chains)
        intervals = [c.interval for c in chains]
        for (lo1, hi1), (lo2, hi2) in zip(intervals, intervals[1:]):
            assert hi1 < lo2  # disjoint, in scan order
        covered = set()
        for c in chains:
            lo, hi = c.interval
            members = {(i, j) for (i, j) in inv if lo <= i and j <= hi}
            assert members, f"chain {c} covers no inversion"
            covered |= members
            for e in c.essential:
                assert (e.i, e.j) in inv
        assert covered == inv


def test_mc6_descriptor_invariants_random():
    rng = SplitMix64(7)
    for _ in range(40):
        n = 50 + rng.below(300)
        a = presorted(fisher_yates(n, rng), (2, 5))
        chains: list[ChainDescriptor] = []
        final_pass_25(list(a), SortMetrics(), collect=chains)
        for c in chains:
            assert c.kind in (ChainKind.MC1, ChainKind.MC6)
            if c.kind is ChainKind.MC6:
                starts = [e.i for e in c.essential]
                assert all(b - a_ == 2 for a_, b in zip(starts, starts[1:]))
                assert c.interval == (starts[0], starts[-1] + 3)


# ---------------------------------------------------------------- 3 & 4 ----

def build_mc7_k2_offset3():
    """Realize crossing 5-inversions (0,5) and (3,8) with clean boundaries."""
    # ascending order of entries: A(1),A(2) <= A(5) < A(0) <= A(4) <= A(8)
    #                             < A(3) <= A(6),A(7)
    a = [4, 1, 2, 7, 5, 3, 8, 9, 6]
    assert structural_violations_34(a) == []
    return a


def test_mc7_fragment_detected_with_k2():
    a = build_mc7_k2_offset3()
    chain = find_chain_34(a, 0, verified=True)
    assert chain is not None and chain.kind is ChainKind.MC7
    assert chain.k == 2
    assert [e for e in chain.essential if e.offset == 5] == [Inversion(0, 5), Inversion(3, 8)]
    fix_chain_34(a, chain, SortMetrics())
    assert a == sorted(a)


def test_find_chain_34_walks_backward_to_the_head():
    a = build_mc7_k2_offset3()
    chain = find_chain_34(a, 3)
    assert chain is not None and chain.kind is ChainKind.MC7 and chain.k == 2
    assert chain.interval[0] == 0


def test_sporadic_chain_shapes_detected():
    # MC2: A(i) biggest of three, tail pair ordered
    a = [3, 1, 2, 4]
    chain = find_chain_34(a, 0)
    assert chain.kind is ChainKind.MC2
    fix_chain_34(a, chain, SortMetrics())
    assert a == [1, 2, 3, 4]
    # MC3: A(i+2) smallest of three
    a = [2, 3, 1, 4]
    chain = find_chain_34(a, 0)
    assert chain.kind is ChainKind.MC3
    fix_chain_34(a, chain, SortMetrics())
    assert a == [1, 2, 3, 4]
    # MC4: three reversed
    a = [3, 2, 1, 4]
    chain = find_chain_34(a, 0)
    assert chain.kind is ChainKind.MC4
    m = SortMetrics()
    fix_chain_34(a, chain, m)
    assert a == [1, 2, 3, 4] and m.exchange_ops == 3
    # MC5: crossing 2-inversions
    a = [2, 4, 1, 3]
    chain = find_chain_34(a, 0)
    assert chain.kind is ChainKind.MC5
    fix_chain_34(a, chain, SortMetrics())
    assert a == [1, 2, 3, 4]


def test_structural_lemmas_on_random_presorted_arrays():
    rng = SplitMix64(99)
    for _ in range(150):
        n = 50 + rng.below(500)
        perm = fisher_yates(n, rng)
        assert structural_violations_25(presorted(perm, (2, 5))) == []
        assert structural_violations_34(presorted(perm, (3, 4))) == []


def test_structural_checkers_catch_violations():
    assert structural_violations_25([2, 1, 0]) != []  # not 2-sorted
    assert structural_violations_34([3, 2, 1, 0]) != []


def test_final_passes_match_plain_pass_on_random_arrays():
    rng = SplitMix64(31337)
    for bases, pass_fn in (((2, 5), final_pass_25), ((3, 4), final_pass_34)):
        for _ in range(60):
            n = 30 + rng.below(800)
            perm = fisher_yates(n, rng)
            chain_arr = presorted(perm, bases)
            plain_arr = list(chain_arr)
            pass_fn(chain_arr, SortMetrics())
            gapped_insertion_pass(plain_arr, 1, SortMetrics())
            assert chain_arr == plain_arr == sorted(perm)


def test_mean_presort_inversions_deterministic_and_positive():
    a = mean_presort_inversions((3, 4), 400, trials=50, rng_seed=5)
    b = mean_presort_inversions((3, 4), 400, trials=50, rng_seed=5)
    assert a == b > 0
    c = mean_presort_inversions((2, 5), 400, trials=50, rng_seed=5)
    assert c > a  # the 2&5 presort leaves more surviving inversions


def test_paired_chain_pass_saves_exchange_ops_25():
    """Identical permutations: chain final pass never loses to plain, on average."""
    total_chain = total_plain = 0
    gaps = pratt((2, 5), 1000)
    for t in range(40):
        perm = fisher_yates(1000, SplitMix64(derive_seed(2, t)))
        base = list(perm)
        presort_passes(base, gaps)
        chain_arr, plain_arr = list(base), list(base)
        mc, mp = SortMetrics(), SortMetrics()
        final_pass_25(chain_arr, mc)
        gapped_insertion_pass(plain_arr, 1, mp)
        total_chain += mc.exchange_ops
        total_plain += mp.exchange_ops
        assert chain_arr == plain_arr
    assert total_chain < total_plain


def test_point_queries_agree_with_sweep_chains():
    """Probing every index recovers exactly the chains the sweep fixes."""
    rng = SplitMix64(60)
    cases = (((2, 5), find_chain_25, final_pass_25),
             ((3, 4), find_chain_34, final_pass_34))
    for bases, finder, pass_fn in cases:
        for _ in range(25):
            n = 40 + rng.below(400)
            a = presorted(fisher_yates(n, rng), bases)
            probed = {}
            for i in range(n):
                chain = finder(a, i)
                if chain is not None:
                    probed.setdefault(chain.interval, chain)
            swept: list[ChainDescriptor] = []
            pass_fn(list(a), SortMetrics(), collect=swept)
            assert {c.interval for c in swept} == set(probed)
            for c in swept:
                assert probed[c.interval].kind is c.kind
                assert probed[c.interval].essential == c.essential


def test_count_k_inversions_agrees_with_collected_chain_sizes():
    rng = SplitMix64(8)
    a = presorted(fisher_yates(700, rng), (2, 5))
    chains: list[ChainDescriptor] = []
    final_pass_25(list(a), SortMetrics(), collect=chains)
    k_total = sum(c.k for c in chains if c.kind is ChainKind.MC6)
    assert k_total == count_k_inversions(a, 3)
