"""Shellsort gap-sequence laboratory.

Instrumented Shellsort with exact comparison/exchange accounting, the
standard gap-sequence catalog plus two parameterized generating functions,
a deduplicating grid optimizer with a sequential-analysis filter, and
structure-aware final passes for arrays presorted on the (2, 5) and (3, 4)
ordered-product sequences.
"""

from .gap_sequences import (
    CiuraVariant,
    DegenerateSequenceError,
    EmptySequenceError,
    GapSequence,
    PrattBasePair,
    TemplateParamsA,
    TemplateParamsB,
    canonical_key,
    ciura,
    pratt,
    sequence_by_name,
    template_a,
    template_b,
    tokuda,
)
from .metrics_sort import (
    AccountingModel,
    CostKind,
    InvalidGapError,
    InvalidSequenceError,
    SortMetrics,
    count_k_inversions,
    gapped_insertion_pass,
    is_k_sorted,
    presort_passes,
    remaining_inversion_offsets,
    shellsort,
    shellsort_wall_time,
)
from .chain_pass import (
    ChainDescriptor,
    ChainKind,
    Inversion,
    StructuralAssumptionError,
    final_pass_25,
    final_pass_34,
    find_chain_25,
    find_chain_34,
    fix_chain_25,
    fix_chain_34,
    mean_presort_inversions,
)
from .grid_optimizer import (
    AxisSpec,
    Decision,
    GridSpec,
    SearchResult,
    SprtConfig,
    TemplateFamily,
    TrialStats,
    dedupe,
    enumerate_grid,
    evaluate,
    grid_search,
    local_refine,
    sprt_filter,
)
from .bench_cli import (
    ExperimentConfig,
    ReportRow,
    emit_plot_data,
    fisher_yates,
    reproduce_table,
    run_experiment,
)
from .rng import SplitMix64, derive_seed

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
