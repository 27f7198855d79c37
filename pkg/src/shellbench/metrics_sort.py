"""Instrumented in-place Shellsort engine and inversion-structure utilities.

The accounting model (shared by every experiment in the project):

* comparison  - one key-vs-key inversion test inside an insertion loop,
  including the test that terminates the loop.  The sentinel-free loop only
  performs (and therefore only counts) a key test when the index guard
  passes.
* exchange    - one single-position (gap-stride) element move.
* exchange op - one assignment under the decomposed model: an insertion that
  moved its key m >= 1 positions costs m + 2 operations (one save to a
  temporary, m shifts, one final placement), so a plain swap costs 3.

Exchange ops therefore always equal exchanges + 2 * (number of insertions
that displaced an element).

Timing runs use a counter-free twin of the engine so counter bookkeeping
does not pollute wall-clock numbers.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, MutableSequence, Sequence

import numpy as np

from . import _kernels


class InvalidGapError(ValueError):
    """A pass was requested with a gap outside [1, N)."""


class InvalidSequenceError(ValueError):
    """A gap sequence violates the engine's contract (e.g. missing gap 1)."""


class AccountingModel(Enum):
    COUNT_ONLY = "count-only"
    COUNT_AND_TIME = "count-and-time"


class CostKind(Enum):
    COMPARISONS = "comparisons"
    EXCHANGES = "exchanges"
    EXCHANGE_OPS = "exchange_ops"
    TIME = "time"


@dataclass
class SortMetrics:
    """Per-run operation counters.

    ``wall_time_ns`` is populated only in timing mode.  ``structural_fallbacks``
    counts defensive plain-insertion fixes taken by the structure-aware final
    passes; it is zero unless a chain configuration outside the supported
    catalog is met (which the theory rules out for correctly presorted input).
    """

    comparisons: int = 0
    exchanges: int = 0
    exchange_ops: int = 0
    wall_time_ns: int | None = None
    structural_fallbacks: int = 0

    def cost(self, kind: CostKind) -> int:
        if kind is CostKind.COMPARISONS:
            return self.comparisons
        if kind is CostKind.EXCHANGES:
            return self.exchanges
        if kind is CostKind.EXCHANGE_OPS:
            return self.exchange_ops
        if kind is CostKind.TIME:
            if self.wall_time_ns is None:
                raise ValueError("metrics carry no wall time (counting-only run)")
            return self.wall_time_ns
        raise ValueError(f"unknown cost kind: {kind!r}")

    def add_pass(self, comparisons: int, exchanges: int, exchange_ops: int) -> None:
        self.comparisons += comparisons
        self.exchanges += exchanges
        self.exchange_ops += exchange_ops


def _as_kernel_array(array) -> tuple[np.ndarray, "MutableSequence | np.ndarray | None"]:
    """Return a contiguous int64 array for the kernels plus a write-back target.

    ndarray input of the right dtype is used in place (no copy); anything else
    is copied in and copied back by :func:`_write_back` after mutation.
    """
    if isinstance(array, np.ndarray) and array.dtype == np.int64 and array.flags.c_contiguous:
        return array, None
    arr = np.array(array, dtype=np.int64)
    return arr, array


def _write_back(arr: np.ndarray, target) -> None:
    if target is None:
        return
    if isinstance(target, np.ndarray):
        target[:] = arr
    else:
        target[:] = arr.tolist()


def _checked_gaps(gaps, n: int) -> tuple[int, ...]:
    seq = tuple(getattr(gaps, "gaps", gaps))
    if not seq:
        raise InvalidSequenceError("empty gap sequence")
    if seq[0] != 1:
        raise InvalidSequenceError(f"gap sequence must start at 1, got {seq[0]}")
    if any(b <= a for a, b in zip(seq, seq[1:])):
        raise InvalidSequenceError(f"gap sequence must be strictly increasing: {seq}")
    if seq[-1] >= n:
        raise InvalidGapError(f"gap {seq[-1]} is not < array size {n}; truncate the sequence first")
    return seq


def gapped_insertion_pass(array, gap: int, metrics: SortMetrics) -> None:
    """Run one in-place insertion pass with the given gap, updating ``metrics``."""
    n = len(array)
    if gap < 1 or gap >= n:
        raise InvalidGapError(f"gap must satisfy 1 <= gap < {n}, got {gap}")
    arr, target = _as_kernel_array(array)
    c, e, o = _kernels.pass_counting(arr, gap)
    metrics.add_pass(int(c), int(e), int(o))
    _write_back(arr, target)


def shellsort(array, gaps, model: AccountingModel = AccountingModel.COUNT_ONLY) -> SortMetrics:
    """Sort ``array`` ascending in place, one pass per gap in decreasing order.

    ``gaps`` is a strictly increasing sequence starting at 1 with all gaps
    below the array length (a ``GapSequence`` is accepted directly).  Returns
    the summed pass metrics; in ``COUNT_AND_TIME`` mode the wall clock around
    the whole pass loop is recorded as well.
    """
    metrics = SortMetrics()
    n = len(array)
    if n <= 1:
        if model is AccountingModel.COUNT_AND_TIME:
            metrics.wall_time_ns = 0
        return metrics
    seq = _checked_gaps(gaps, n)
    arr, target = _as_kernel_array(array)
    gaps_desc = np.array(seq[::-1], dtype=np.int64)
    if model is AccountingModel.COUNT_AND_TIME:
        t0 = time.perf_counter_ns()
        c, e, o = _kernels.sort_counting(arr, gaps_desc)
        metrics.wall_time_ns = time.perf_counter_ns() - t0
    else:
        c, e, o = _kernels.sort_counting(arr, gaps_desc)
    metrics.add_pass(int(c), int(e), int(o))
    _write_back(arr, target)
    return metrics


def shellsort_wall_time(array, gaps) -> int:
    """Counter-free Shellsort; returns wall time in nanoseconds.

    This is the timing twin: same passes, no counter bookkeeping.  The array
    is sorted in place as a side effect.
    """
    n = len(array)
    if n <= 1:
        return 0
    seq = _checked_gaps(gaps, n)
    arr, target = _as_kernel_array(array)
    gaps_desc = np.array(seq[::-1], dtype=np.int64)
    t0 = time.perf_counter_ns()
    _kernels.sort_plain(arr, gaps_desc)
    elapsed = time.perf_counter_ns() - t0
    _write_back(arr, target)
    return elapsed


def presort_passes(array, gaps, metrics: SortMetrics | None = None) -> None:
    """Run the passes for every gap > 1 in decreasing order (no final pass).

    With ``metrics`` given the instrumented kernel is used; otherwise the
    counter-free one.  Leaves the array g-sorted for every g in the sequence
    above 1.
    """
    n = len(array)
    big = [g for g in tuple(getattr(gaps, "gaps", gaps)) if g > 1]
    if not big or n <= 1:
        return
    if big[-1] >= n:
        raise InvalidGapError(f"gap {big[-1]} is not < array size {n}")
    arr, target = _as_kernel_array(array)
    gaps_desc = np.array(big[::-1], dtype=np.int64)
    if metrics is None:
        _kernels.sort_plain(arr, gaps_desc)
    else:
        c, e, o = _kernels.sort_counting(arr, gaps_desc)
        metrics.add_pass(int(c), int(e), int(o))
    _write_back(arr, target)


def is_k_sorted(array, k: int) -> bool:
    """True iff A(i) <= A(i+k) for every valid i (vacuously true for k >= N)."""
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    arr = np.asarray(array)
    if k >= arr.size:
        return True
    return bool(np.all(arr[:-k] <= arr[k:]))


def count_k_inversions(array, k: int) -> int:
    """Number of pairs (i, i+k) with A(i) > A(i+k)."""
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    arr = np.asarray(array)
    if k >= arr.size:
        return 0
    return int(np.count_nonzero(arr[:-k] > arr[k:]))


def remaining_inversion_offsets(array, max_offset: int) -> set[int]:
    """Offsets k <= max_offset at which the array still has an inversion."""
    arr = np.asarray(array)
    return {k for k in range(1, max_offset + 1) if k < arr.size and np.any(arr[:-k] > arr[k:])}


def sorted_ascending(array) -> bool:
    return is_k_sorted(array, 1)


def same_multiset(a: Iterable, b: Iterable) -> bool:
    return sorted(a) == sorted(b)
