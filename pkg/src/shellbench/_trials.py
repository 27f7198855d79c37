"""Single-trial runners shared by the optimizer and the benchmark harness.

Each trial draws a fresh permutation from its own derived seed, so trial
streams are independent of execution order and identical whether runs are
serial or parallel.
"""

from __future__ import annotations

import time

import numpy as np

from . import _kernels
from .chain_pass import final_pass_25, final_pass_34
from .metrics_sort import SortMetrics
from .rng import derive_seed

FINAL_KINDS = ("plain", "chain25", "chain34")


def counting_trial(gaps: tuple[int, ...], n: int, seed: int, final: str = "plain") -> SortMetrics:
    """Sort one seeded permutation of 1..n; return the operation counters.

    ``final`` selects the last pass: "plain" runs the ordinary gap-1 pass,
    "chain25"/"chain34" run the structure-aware pass after presorting with
    every gap above 1.
    """
    a = _kernels.fill_permutation(n, np.uint64(seed & (1 << 64) - 1))
    metrics = SortMetrics()
    if n <= 1:
        return metrics
    if final == "plain":
        gaps_desc = np.array(gaps[::-1], dtype=np.int64)
        c, e, o = _kernels.sort_counting(a, gaps_desc)
        metrics.add_pass(int(c), int(e), int(o))
    else:
        big = np.array([g for g in gaps if g > 1][::-1], dtype=np.int64)
        if big.size:
            c, e, o = _kernels.sort_counting(a, big)
            metrics.add_pass(int(c), int(e), int(o))
        if final == "chain25":
            final_pass_25(a, metrics)
        elif final == "chain34":
            final_pass_34(a, metrics)
        else:
            raise ValueError(f"unknown final pass kind: {final!r}")
    return metrics


def timing_trial(gaps: tuple[int, ...], n: int, seed: int, final: str = "plain") -> int:
    """Wall time in nanoseconds to sort one seeded permutation, counter-free.

    Chain finals time the jitted presort plus the Python chain pass together;
    absolute numbers for those are therefore not comparable across final
    kinds, only within one.
    """
    a = _kernels.fill_permutation(n, np.uint64(seed & (1 << 64) - 1))
    if n <= 1:
        return 0
    if final == "plain":
        gaps_desc = np.array(gaps[::-1], dtype=np.int64)
        t0 = time.perf_counter_ns()
        _kernels.sort_plain(a, gaps_desc)
        return time.perf_counter_ns() - t0
    big = np.array([g for g in gaps if g > 1][::-1], dtype=np.int64)
    pass_fn = final_pass_25 if final == "chain25" else final_pass_34
    sink = SortMetrics()
    t0 = time.perf_counter_ns()
    if big.size:
        _kernels.sort_plain(a, big)
    pass_fn(a, sink)
    return time.perf_counter_ns() - t0


def trial_seed(root: int, index: int) -> int:
    return derive_seed(root, index)


def warm_kernels() -> None:
    """Force jit compilation outside any timed region."""
    a = _kernels.fill_permutation(8, np.uint64(1))
    _kernels.sort_counting(a.copy(), np.array([2, 1], dtype=np.int64))
    _kernels.sort_plain(a.copy(), np.array([2, 1], dtype=np.int64))
    _kernels.count_k_inversions(a, 1)
