"""hicite: highly cited publication groups and their stability across
citation windows.

Corpora partition publications into cells of journals sharing an identical
subject-category combination; within each cell, highly cited groups are
selected by pre-set percentiles or by Characteristic Scores and Scales, and
group content is compared across consecutive citation-window lengths. A
seeded cumulative-advantage generator produces synthetic corpora for
verification.
"""

from .corpus import (
    CellKey,
    CitationEvent,
    Corpus,
    Journal,
    Publication,
    build_corpus,
    cell_key,
    cell_members,
    derive_partition_cells,
    load_corpus,
    load_corpus_dir,
    write_corpus,
)
from .errors import (
    ConfigError,
    CorpusValidationError,
    EmptyReferenceSetError,
    HiciteError,
    UnknownCellError,
    UnknownPublicationError,
    WindowRangeError,
)
from .selection import (
    CSS_AT_LEAST_REMARKABLY,
    CSS_OUTSTANDINGLY,
    DEFAULT_LEVELS,
    TIE_EXACT_SIZE,
    TIE_INCLUSIVE,
    CssThresholds,
    HighlyCitedGroup,
    SelectionLevel,
    css_level,
    css_select,
    css_thresholds,
    parse_level,
    parse_levels,
    percentile_level,
    percentile_select,
)
from .stability import (
    METRICS,
    ConvergenceSummary,
    OverlapCurve,
    OverlapPoint,
    PeakYearReport,
    SizePoint,
    SizeSeries,
    consecutive_overlap,
    convergence_summary,
    group_sequence,
    normalize_metric,
    peak_year_report,
    size_series,
)
from .synth import (
    AgingKernel,
    LayoutCell,
    SynthConfig,
    generate_corpus,
    load_config,
    preset,
    save_config,
    volume_profile,
)
from .windows import CitationVector, cell_counts, citation_count, citation_series, max_window_length

__version__ = "0.1.0"
