"""Shared test helpers: independent oracles kept free of engine code.

The reference insertion sort below is deliberately written from scratch
(explicit index loop over a list) so the engine's counters are checked
against an implementation that shares no code path with the jitted kernels.
"""

from __future__ import annotations

import itertools

import pytest
from hypothesis import settings

# property failures must reproduce identically wherever the suite runs
settings.register_profile("deterministic", derandomize=True)
settings.load_profile("deterministic")


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False,
                     help="also run tests marked slow (full-scale grid passes)")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running full-scale checks")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


def reference_insertion_sort(items: list) -> tuple[list, int, int, int]:
    """Plain insertion sort; returns (sorted copy, comparisons, moves, move_ops).

    Counting model: one comparison per key test (including the failed test
    that ends the scan), one move per element shifted right, and moves + 2
    assignment operations for every insertion that shifted at least once.
    """
    a = list(items)
    comparisons = 0
    moves = 0
    move_ops = 0
    for i in range(1, len(a)):
        key = a[i]
        j = i
        shifted = 0
        while j >= 1:
            comparisons += 1
            if a[j - 1] > key:
                a[j] = a[j - 1]
                j -= 1
                shifted += 1
            else:
                break
        if shifted:
            a[j] = key
            moves += shifted
            move_ops += shifted + 2
    return a, comparisons, moves, move_ops


def reference_gapped_counts(items: list, gap: int) -> tuple[list, int, int, int]:
    """Gap-g insertion pass by sorting each residue chain independently.

    Equivalent work to an interleaved sweep, computed chain by chain, which
    makes it an independent cross-check of the engine's pass.
    """
    a = list(items)
    comparisons = 0
    moves = 0
    move_ops = 0
    for lead in range(gap):
        chain = a[lead::gap]
        schain, c, m, o = reference_insertion_sort(chain)
        a[lead::gap] = schain
        comparisons += c
        moves += m
        move_ops += o
    return a, comparisons, moves, move_ops


def all_permutations(n: int):
    return itertools.permutations(range(1, n + 1))
