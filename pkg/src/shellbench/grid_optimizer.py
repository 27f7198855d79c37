"""Grid search over template parameters with dedup and a sequential filter.

Pipeline: enumerate the Cartesian parameter grid, collapse parameter tuples
that generate identical gap sequences (one cheap sequence generation per
tuple), screen each unique candidate with a sequential-analysis filter, run
the survivors for the full trial count, and rank ascending by mean cost.

The sequential filter is a normal-approximation confidence band: after each
trial beyond a minimum, the running mean +/- z * sqrt(variance_bound / t) is
compared against the threshold; a candidate is accepted as soon as the upper
limit drops below the threshold, rejected as soon as the lower limit rises
above it, and decided by the point estimate when the trial budget runs out.

Everything is a pure function of (spec, n, cost kind, config, seeds): trial
streams are derived from a stable hash of the candidate's gap list, so
results do not depend on enumeration or scheduling order.
"""

from __future__ import annotations

import csv
import itertools
import json
import logging
import statistics
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Callable, Iterable, Iterator, Mapping

from .gap_sequences import (
    DegenerateSequenceError,
    GapSequence,
    TemplateParamsA,
    TemplateParamsB,
    canonical_key,
    template_a,
    template_b,
)
from .metrics_sort import CostKind
from ._trials import counting_trial, timing_trial, warm_kernels
from .rng import derive_seed, stable_hash64

logger = logging.getLogger(__name__)

_SPRT_STREAM = 0x5B92
_EVAL_STREAM = 0xE7A1

MIN_TIMING_TRIALS = 30


class TemplateFamily(Enum):
    A = "a"
    B = "b"


class Decision(Enum):
    ACCEPT = "accept"
    REJECT = "reject"


@dataclass(frozen=True)
class AxisSpec:
    """One grid axis: linearly spaced reals, or consecutive integers."""

    lower: float
    upper: float
    count: int
    integer: bool = False

    def __post_init__(self):
        if self.count < 1:
            raise ValueError(f"axis needs at least one point, got {self.count}")
        if self.lower > self.upper:
            raise ValueError(f"axis bounds inverted: [{self.lower}, {self.upper}]")

    def values(self) -> tuple:
        if self.integer:
            return tuple(range(int(self.lower), int(self.upper) + 1))
        if self.count == 1:
            return (self.lower,)
        step = (self.upper - self.lower) / (self.count - 1)
        vals = [self.lower + step * i for i in range(self.count)]
        vals[-1] = self.upper
        return tuple(vals)

    @staticmethod
    def integers(lower: int, upper: int) -> "AxisSpec":
        return AxisSpec(lower, upper, upper - lower + 1, integer=True)


@dataclass(frozen=True)
class GridSpec:
    """Axis descriptors for one template family, in parameter order."""

    family: TemplateFamily
    axes: Mapping[str, AxisSpec]

    _AXIS_NAMES = {TemplateFamily.A: ("a", "b", "c", "d", "f", "e"),
                   TemplateFamily.B: ("a", "b", "c", "d")}

    def __post_init__(self):
        expected = self._AXIS_NAMES[self.family]
        if tuple(self.axes.keys()) != expected:
            raise ValueError(f"family {self.family.value} needs axes {expected}, "
                             f"got {tuple(self.axes.keys())}")

    def size(self) -> int:
        """Grid cardinality; depends only on the spec, never on the array size."""
        total = 1
        for axis in self.axes.values():
            total *= len(axis.values())
        return total

    @staticmethod
    def default_a(points: int = 20, lower: float = 0.5, upper: float = 5.0,
                  offset_max: int = 10) -> "GridSpec":
        real = AxisSpec(lower, upper, points)
        return GridSpec(TemplateFamily.A, {
            "a": real, "b": real, "c": real, "d": real, "f": real,
            "e": AxisSpec.integers(0, offset_max),
        })

    @staticmethod
    def default_b(points: int = 50, lower: float = 0.0, upper: float = 10.0,
                  offset_max: int = 10) -> "GridSpec":
        real = AxisSpec(lower, upper, points)
        return GridSpec(TemplateFamily.B, {
            "a": real, "b": real, "c": real,
            "d": AxisSpec.integers(0, offset_max),
        })

    def to_jsonable(self) -> dict:
        return {
            "family": self.family.value,
            "axes": {name: {"lower": ax.lower, "upper": ax.upper,
                            "count": ax.count, "integer": ax.integer}
                     for name, ax in self.axes.items()},
        }


def enumerate_grid(spec: GridSpec) -> "Iterator[TemplateParamsA | TemplateParamsB]":
    """Yield every parameter tuple of the grid, lazily, in axis order."""
    value_lists = [axis.values() for axis in spec.axes.values()]
    if spec.family is TemplateFamily.A:
        for a, b, c, d, f, e in itertools.product(*value_lists):
            yield TemplateParamsA(a, b, c, d, int(e), f)
    else:
        for a, b, c, d in itertools.product(*value_lists):
            yield TemplateParamsB(a, b, c, d=int(d))


def _instantiate(params, n: int) -> GapSequence:
    if isinstance(params, TemplateParamsA):
        return template_a(params, n)
    return template_b(params, n)


@dataclass
class DedupeResult:
    """One representative parameter tuple per distinct gap list, plus tallies."""

    unique: "dict[str, TemplateParamsA | TemplateParamsB]"
    total: int = 0
    degenerate: int = 0
    too_short: int = 0

    @property
    def unique_count(self) -> int:
        return len(self.unique)


def dedupe(candidates: Iterable, n: int) -> DedupeResult:
    """Map each distinct generated sequence to its first parameter tuple.

    Degenerate parameter tuples (non-increasing gap lists) and sequences too
    short to sort arrays of size n (fewer than two gaps when n > 4) are
    dropped and counted.
    """
    result = DedupeResult(unique={})
    for params in candidates:
        result.total += 1
        try:
            seq = _instantiate(params, n)
        except DegenerateSequenceError:
            result.degenerate += 1
            continue
        if n > 4 and len(seq.gaps) < 2:
            result.too_short += 1
            continue
        key = canonical_key(seq)
        if key not in result.unique:
            result.unique[key] = params
    return result


@dataclass(frozen=True)
class SprtConfig:
    """Sequential-analysis filter settings.

    ``mean_threshold`` is the cost bound a candidate must beat (typically a
    small margin above the best-known baseline's mean); the variance bound
    stands in for the unknown per-trial variance.
    """

    mean_threshold: float
    variance_upper_bound: float
    confidence: float = 0.95
    min_trials: int = 5
    max_trials: int = 100

    def __post_init__(self):
        if not 0.0 < self.confidence < 1.0:
            raise ValueError(f"confidence must be in (0, 1), got {self.confidence}")
        if self.min_trials < 1 or self.min_trials > self.max_trials:
            raise ValueError(f"need 1 <= min_trials <= max_trials, got "
                             f"{self.min_trials}, {self.max_trials}")
        if self.variance_upper_bound < 0:
            raise ValueError("variance bound must be non-negative")

    @property
    def z_value(self) -> float:
        return statistics.NormalDist().inv_cdf(0.5 + self.confidence / 2.0)


def sequential_decision(draw: Callable[[int], float], cfg: SprtConfig) -> tuple[Decision, int]:
    """Accept/reject a cost stream against the configured mean threshold.

    ``draw(t)`` returns the t-th trial cost.  Returns the decision and the
    number of trials consumed.
    """
    z = cfg.z_value
    total = 0.0
    for t in range(1, cfg.max_trials + 1):
        total += draw(t - 1)
        if t < cfg.min_trials:
            continue
        mean = total / t
        half_width = z * (cfg.variance_upper_bound / t) ** 0.5
        if mean + half_width < cfg.mean_threshold:
            return Decision.ACCEPT, t
        if mean - half_width > cfg.mean_threshold:
            return Decision.REJECT, t
    mean = total / cfg.max_trials
    return (Decision.ACCEPT if mean < cfg.mean_threshold else Decision.REJECT), cfg.max_trials


def sprt_filter(seq: GapSequence, n: int, cfg: SprtConfig, cost_kind: CostKind,
                rng_seed: int) -> tuple[Decision, int]:
    """Screen one sequence by running trials one at a time."""
    gaps = tuple(seq.gaps)

    def draw(t: int) -> float:
        seed = derive_seed(rng_seed, _SPRT_STREAM, t)
        if cost_kind is CostKind.TIME:
            return float(timing_trial(gaps, n, seed))
        return float(counting_trial(gaps, n, seed).cost(cost_kind))

    return sequential_decision(draw, cfg)


@dataclass(frozen=True)
class TrialStats:
    mean: float
    sd: float
    trials: int
    cost_kind: CostKind


@dataclass(frozen=True)
class SearchResult:
    params: "TemplateParamsA | TemplateParamsB"
    key: str
    gaps: tuple[int, ...]
    stats: TrialStats
    rank: int = 0


def evaluate(seq: GapSequence, n: int, trials: int, cost_kind: CostKind,
             rng_seed: int) -> TrialStats:
    """Mean and sample standard deviation of the cost over seeded trials."""
    if trials < 2:
        raise ValueError(f"need at least 2 trials for a standard deviation, got {trials}")
    gaps = tuple(seq.gaps)
    values = []
    for t in range(trials):
        seed = derive_seed(rng_seed, _EVAL_STREAM, t)
        if cost_kind is CostKind.TIME:
            values.append(float(timing_trial(gaps, n, seed)))
        else:
            values.append(float(counting_trial(gaps, n, seed).cost(cost_kind)))
    return TrialStats(statistics.fmean(values), statistics.stdev(values), trials, cost_kind)


def _candidate_seed(root: int, key: str, paired: bool) -> int:
    return root if paired else derive_seed(root, stable_hash64(key))


def _result_sort_key(result: SearchResult):
    # lowest mean, then fewer gaps, then the textual key: deterministic ranking
    return (result.stats.mean, len(result.gaps), result.key)


def grid_search(spec: GridSpec, n: int, cost_kind: CostKind, cfg: SprtConfig,
                full_trials: int = 1000, rng_seed: int = 0, top_k: int = 10,
                paired: bool = False, checkpoint_path: "str | Path | None" = None,
                checkpoint_every: int = 2000) -> list[SearchResult]:
    """Run the full enumerate -> dedupe -> filter -> evaluate -> rank pipeline.

    With ``checkpoint_path`` given, progress is persisted as JSON after every
    ``checkpoint_every`` filtered candidates and a matching interrupted run
    resumes where it stopped.  Time-cost searches force at least
    ``MIN_TIMING_TRIALS`` full trials per accepted candidate.
    """
    warm_kernels()
    if cost_kind is CostKind.TIME:
        full_trials = max(full_trials, MIN_TIMING_TRIALS)
    deduped = dedupe(enumerate_grid(spec), n)
    logger.info("grid %d tuples -> %d unique sequences (%d degenerate, %d too short)",
                deduped.total, deduped.unique_count, deduped.degenerate, deduped.too_short)

    config_tag = json.dumps([spec.to_jsonable(), n, cost_kind.value, rng_seed, paired,
                             full_trials, cfg.mean_threshold, cfg.variance_upper_bound,
                             cfg.confidence, cfg.min_trials, cfg.max_trials], sort_keys=True)
    state = _load_checkpoint(checkpoint_path, config_tag)
    results: list[SearchResult] = state["results"]
    processed = state["processed"]
    accepted = state["accepted"]
    filter_trials = state["filter_trials"]

    items = list(deduped.unique.items())
    for idx in range(processed, len(items)):
        key, params = items[idx]
        seq = _instantiate(params, n)
        cand_seed = _candidate_seed(rng_seed, key, paired)
        decision, used = sprt_filter(seq, n, cfg, cost_kind, cand_seed)
        filter_trials += used
        if decision is Decision.ACCEPT:
            stats = evaluate(seq, n, full_trials, cost_kind, cand_seed)
            results.append(SearchResult(params, key, tuple(seq.gaps), stats))
            accepted += 1
        processed = idx + 1
        if checkpoint_path and processed % checkpoint_every == 0:
            _save_checkpoint(checkpoint_path, config_tag, processed, accepted,
                             filter_trials, results)
        if processed % 5000 == 0:
            logger.info("filtered %d/%d candidates, accepted %d", processed, len(items), accepted)

    if checkpoint_path:
        _save_checkpoint(checkpoint_path, config_tag, processed, accepted,
                         filter_trials, results)
    logger.info("accepted %d of %d candidates (%d filter trials total)",
                accepted, len(items), filter_trials)
    if not results:
        logger.warning("no candidate passed the filter; the threshold %.1f may be too strict",
                       cfg.mean_threshold)
        return []
    results.sort(key=_result_sort_key)
    ranked = [SearchResult(r.params, r.key, r.gaps, r.stats, rank)
              for rank, r in enumerate(results[:max(top_k, 0)], start=1)]
    return ranked


def local_refine(best: "TemplateParamsA | TemplateParamsB", n: int, cost_kind: CostKind,
                 cfg: SprtConfig, rng_seed: int = 0, radius: float = 0.2,
                 points: int = 20, full_trials: int = 1000,
                 paired: bool = False) -> SearchResult:
    """Re-grid every real axis within +/- radius of ``best`` and re-search.

    The input tuple itself is always evaluated too, so under the same seed
    the refined winner is never worse than the input.  Integer offsets are
    held fixed.
    """
    def axis(center: float) -> AxisSpec:
        lo = max(center - radius, 0.0)
        return AxisSpec(lo, center + radius, points)

    if isinstance(best, TemplateParamsA):
        spec = GridSpec(TemplateFamily.A, {
            "a": axis(best.a), "b": axis(best.b), "c": axis(best.c), "d": axis(best.d),
            "f": axis(best.f), "e": AxisSpec.integers(best.e, best.e),
        })
    else:
        spec = GridSpec(TemplateFamily.B, {
            "a": axis(best.a), "b": axis(best.b), "c": axis(best.c),
            "d": AxisSpec.integers(best.d, best.d),
        })

    candidates = itertools.chain([best], enumerate_grid(spec))
    deduped = dedupe(candidates, n)
    results = []
    for key, params in deduped.unique.items():
        seq = _instantiate(params, n)
        cand_seed = _candidate_seed(rng_seed, key, paired)
        decision, _ = sprt_filter(seq, n, cfg, cost_kind, cand_seed)
        if decision is Decision.ACCEPT or params is best:
            stats = evaluate(seq, n, full_trials, cost_kind, cand_seed)
            results.append(SearchResult(params, key, tuple(seq.gaps), stats))
    results.sort(key=_result_sort_key)
    best_result = results[0]
    return SearchResult(best_result.params, best_result.key, best_result.gaps,
                        best_result.stats, rank=1)


def _params_to_jsonable(params) -> dict:
    if isinstance(params, TemplateParamsA):
        return {"family": "a", "a": params.a, "b": params.b, "c": params.c,
                "d": params.d, "e": params.e, "f": params.f}
    return {"family": "b", "a": params.a, "b": params.b, "c": params.c, "d": params.d}


def _params_from_jsonable(doc: dict):
    if doc["family"] == "a":
        return TemplateParamsA(doc["a"], doc["b"], doc["c"], doc["d"], int(doc["e"]), doc["f"])
    return TemplateParamsB(doc["a"], doc["b"], doc["c"], int(doc["d"]))


def _load_checkpoint(path, config_tag: str) -> dict:
    empty = {"processed": 0, "accepted": 0, "filter_trials": 0, "results": []}
    if not path:
        return empty
    path = Path(path)
    if not path.exists():
        return empty
    try:
        doc = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError):
        logger.warning("ignoring unreadable checkpoint %s", path)
        return empty
    if doc.get("config") != config_tag:
        logger.warning("checkpoint %s belongs to a different search; starting over", path)
        return empty
    results = [
        SearchResult(
            _params_from_jsonable(item["params"]), item["key"], tuple(item["gaps"]),
            TrialStats(item["mean"], item["sd"], item["trials"], CostKind(item["cost"])),
        )
        for item in doc["results"]
    ]
    logger.info("resuming from checkpoint %s at candidate %d", path, doc["processed"])
    return {"processed": doc["processed"], "accepted": doc["accepted"],
            "filter_trials": doc["filter_trials"], "results": results}


def _save_checkpoint(path, config_tag: str, processed: int, accepted: int,
                     filter_trials: int, results: list[SearchResult]) -> None:
    doc = {
        "config": config_tag,
        "processed": processed,
        "accepted": accepted,
        "filter_trials": filter_trials,
        "results": [
            {"params": _params_to_jsonable(r.params), "key": r.key, "gaps": list(r.gaps),
             "mean": r.stats.mean, "sd": r.stats.sd, "trials": r.stats.trials,
             "cost": r.stats.cost_kind.value}
            for r in results
        ],
    }
    path = Path(path)
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(json.dumps(doc))
    tmp.replace(path)


def write_results_csv(results: list[SearchResult], path) -> None:
    """Persist ranked results with the gap prefix for quick inspection."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["rank", "parameters", "gap_prefix", "mean", "sd", "trials"])
        for r in results:
            prefix = " ".join(str(g) for g in r.gaps[:10])
            writer.writerow([r.rank, json.dumps(_params_to_jsonable(r.params)),
                             prefix, f"{r.stats.mean:.4f}", f"{r.stats.sd:.4f}",
                             r.stats.trials])
