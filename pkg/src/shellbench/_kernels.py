"""Jit-compiled hot loops: permutation filling and gapped insertion passes.

These kernels carry the per-element work of every experiment; everything
above them (sequence generation, chain passes, statistics, CLI) is ordinary
Python.  Signatures are explicit so compilation happens once at import and
is cached on disk.

``fill_permutation`` replicates ``rng.fisher_yates`` bit for bit (same
SplitMix64 update, same bitmask rejection); the test suite asserts exact
agreement between the two implementations.
"""

from __future__ import annotations

import numpy as np
from numba import njit

_U = np.uint64


@njit("uint64(uint64)", cache=True, inline="always")
def _mix64(z):
    z = (z ^ (z >> _U(30))) * _U(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> _U(27))) * _U(0x94D049BB133111EB)
    return z ^ (z >> _U(31))


@njit("int64[:](int64, uint64)", cache=True)
def fill_permutation(n, seed):
    """Fisher-Yates permutation of 1..n from a fresh SplitMix64 stream."""
    a = np.empty(n, np.int64)
    for t in range(n):
        a[t] = t + 1
    state = seed
    golden = _U(0x9E3779B97F4A7C15)
    one = _U(1)
    for idx in range(n - 1, 0, -1):
        bound = _U(idx + 1)
        m = bound - one
        m |= m >> _U(1)
        m |= m >> _U(2)
        m |= m >> _U(4)
        m |= m >> _U(8)
        m |= m >> _U(16)
        m |= m >> _U(32)
        while True:
            state = state + golden
            r = _mix64(state) & m
            if r < bound:
                break
        j = np.int64(r)
        tmp = a[idx]
        a[idx] = a[j]
        a[j] = tmp
    return a


@njit("UniTuple(int64, 3)(int64[:], int64)", cache=True)
def pass_counting(a, gap):
    """One gapped insertion pass; returns (comparisons, exchanges, exchange_ops).

    A comparison is every key-vs-key test, including the one that ends the
    inner loop; the index guard itself is free.  An exchange is one
    gap-stride element move.  An insertion that moved m >= 1 elements costs
    m + 2 exchange operations (save key, m shifts, final placement); an
    element that never moves costs none.
    """
    n = a.size
    comps = np.int64(0)
    exch = np.int64(0)
    exops = np.int64(0)
    for i in range(gap, n):
        key = a[i]
        j = i
        moved = 0
        while j >= gap:
            comps += 1
            if a[j - gap] > key:
                a[j] = a[j - gap]
                j -= gap
                moved += 1
            else:
                break
        if moved:
            a[j] = key
            exch += moved
            exops += moved + 2
    return comps, exch, exops


@njit("void(int64[:], int64)", cache=True)
def pass_plain(a, gap):
    """Counter-free twin of ``pass_counting`` for wall-clock measurements."""
    n = a.size
    for i in range(gap, n):
        key = a[i]
        j = i
        while j >= gap and a[j - gap] > key:
            a[j] = a[j - gap]
            j -= gap
        a[j] = key


@njit("UniTuple(int64, 3)(int64[:], int64[:])", cache=True)
def sort_counting(a, gaps_desc):
    """Full instrumented Shellsort over gaps given in decreasing order."""
    comps = np.int64(0)
    exch = np.int64(0)
    exops = np.int64(0)
    for g in gaps_desc:
        c, e, o = pass_counting(a, g)
        comps += c
        exch += e
        exops += o
    return comps, exch, exops


@njit("void(int64[:], int64[:])", cache=True)
def sort_plain(a, gaps_desc):
    """Counter-free full Shellsort over gaps given in decreasing order."""
    for g in gaps_desc:
        pass_plain(a, g)


@njit("int64(int64[:], int64)", cache=True)
def count_k_inversions(a, k):
    n = a.size
    total = np.int64(0)
    for i in range(n - k):
        if a[i] > a[i + k]:
            total += 1
    return total
