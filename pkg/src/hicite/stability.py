"""Window sweeps, consecutive-group overlap curves, and convergence summaries.

The sweep across cells, levels, and windows is embarrassingly parallel
(every point is a pure function of the corpus); report ordering is fixed to
(cell, level, window) regardless of evaluation order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .corpus import CellKey, Corpus
from .errors import UnknownPublicationError
from .selection import (
    METHOD_CSS,
    TIE_INCLUSIVE,
    HighlyCitedGroup,
    SelectionLevel,
    css_select,
    percentile_select,
)
from .windows import cell_counts

METRICS = ("jaccard", "overlap_fwd", "overlap_bwd")

_METRIC_ALIASES = {
    "jaccard": "jaccard",
    "fwd": "overlap_fwd",
    "overlap_fwd": "overlap_fwd",
    "bwd": "overlap_bwd",
    "overlap_bwd": "overlap_bwd",
}


def normalize_metric(name: str) -> str:
    try:
        return _METRIC_ALIASES[name]
    except KeyError:
        raise ValueError(
            f"unknown overlap metric {name!r} (expected jaccard, overlap_fwd/fwd, or overlap_bwd/bwd)"
        ) from None


@dataclass(frozen=True)
class OverlapPoint:
    """Set overlap between the groups of two consecutive window lengths.

    With both groups empty all three ratios are 1 (vacuous agreement); with
    exactly one empty they are 0. Otherwise jaccard divides by the union,
    overlap_fwd by the earlier group's size, overlap_bwd by the later one's.
    """

    window_a: int
    window_b: int
    size_a: int
    size_b: int
    intersection: int
    jaccard: Fraction
    overlap_fwd: Fraction
    overlap_bwd: Fraction

    def value(self, metric: str) -> Fraction:
        return getattr(self, normalize_metric(metric))


@dataclass(frozen=True)
class OverlapCurve:
    cell: CellKey
    level: SelectionLevel
    points: tuple[OverlapPoint, ...]


@dataclass(frozen=True)
class ConvergenceSummary:
    """First window from which a metric stays at or above a threshold."""

    first_window_at_threshold: int | None
    threshold: Fraction
    metric: str


@dataclass(frozen=True)
class PeakYearReport:
    """Mean citations per year offset for a publication set, plus its argmax."""

    mean_by_offset: tuple[Fraction, ...]
    peak_offset: int


@dataclass(frozen=True)
class SizePoint:
    window: int
    size: int
    reference_set_size: int
    share: Fraction


@dataclass(frozen=True)
class SizeSeries:
    cell: CellKey
    level: SelectionLevel
    points: tuple[SizePoint, ...]


def group_sequence(
    corpus: Corpus,
    cell: CellKey,
    level: SelectionLevel,
    lengths: Iterable[int],
    tie_mode: str = TIE_INCLUSIVE,
) -> list[HighlyCitedGroup]:
    """One highly cited group per window length, each computed independently."""
    lengths = list(lengths)
    if not lengths:
        raise ValueError("empty window range")
    groups = []
    for length in lengths:
        counts = cell_counts(corpus, cell, length)
        if level.method == METHOD_CSS:
            group = css_select(counts, level, cell=cell, window=length)
        else:
            group = percentile_select(counts, level.basis_points, tie_mode, cell=cell, window=length)
        groups.append(group)
    return groups


def consecutive_overlap(groups: Sequence[HighlyCitedGroup]) -> OverlapCurve:
    """Overlap curve across a sequence of consecutive-window groups."""
    if len(groups) < 2:
        raise ValueError("need at least two groups to compare consecutive windows")
    for earlier, later in zip(groups, groups[1:]):
        if later.window != earlier.window + 1:
            raise ValueError(f"windows {earlier.window} and {later.window} are not consecutive")
        if later.cell != earlier.cell or later.level != earlier.level:
            raise ValueError("groups mix cells or levels")
    points = []
    for earlier, later in zip(groups, groups[1:]):
        size_a, size_b = len(earlier.members), len(later.members)
        shared = len(earlier.members & later.members)
        jaccard, fwd, bwd = _overlap_ratios(size_a, size_b, shared)
        points.append(
            OverlapPoint(
                window_a=earlier.window,
                window_b=later.window,
                size_a=size_a,
                size_b=size_b,
                intersection=shared,
                jaccard=jaccard,
                overlap_fwd=fwd,
                overlap_bwd=bwd,
            )
        )
    return OverlapCurve(cell=groups[0].cell, level=groups[0].level, points=tuple(points))


def _overlap_ratios(size_a: int, size_b: int, shared: int) -> tuple[Fraction, Fraction, Fraction]:
    if size_a == 0 and size_b == 0:
        one = Fraction(1)
        return one, one, one
    if size_a == 0 or size_b == 0:
        zero = Fraction(0)
        return zero, zero, zero
    union = size_a + size_b - shared
    return Fraction(shared, union), Fraction(shared, size_a), Fraction(shared, size_b)


def convergence_summary(curve: OverlapCurve, metric: str, threshold: Fraction) -> ConvergenceSummary:
    """Smallest window_a whose metric reaches the threshold and stays there.

    The requirement is sustained: a point that touches the threshold but is
    followed by a dip does not count. Absence is a value, not an error.
    """
    if not curve.points:
        raise ValueError("empty overlap curve")
    if not 0 < threshold <= 1:
        raise ValueError(f"threshold must be in (0, 1], got {threshold}")
    metric = normalize_metric(metric)
    first = None
    for point in reversed(curve.points):
        if point.value(metric) >= threshold:
            first = point.window_a
        else:
            break
    return ConvergenceSummary(first_window_at_threshold=first, threshold=threshold, metric=metric)


def _mean_series(corpus: Corpus, members: Iterable[str]) -> PeakYearReport:
    ids = list(members)
    if not ids:
        raise ValueError("cannot compute a peak-year report for an empty set")
    series = []
    for pid in ids:
        if pid not in corpus.series_index:
            raise UnknownPublicationError(f"unknown publication {pid!r}")
        series.append(corpus.series_index[pid])
    width = max(len(s) for s in series)
    means = []
    for offset in range(width):
        covered = [s[offset] for s in series if len(s) > offset]
        means.append(Fraction(sum(covered), len(covered)))
    # earliest offset wins ties, so a flat early plateau never reads as a late peak
    peak = means.index(max(means))
    return PeakYearReport(mean_by_offset=tuple(means), peak_offset=peak)


def peak_year_report(
    corpus: Corpus,
    group_members: Iterable[str],
    companion_set: Iterable[str],
) -> tuple[PeakYearReport, PeakYearReport]:
    """Mean per-offset citation series and peak offset for a group and a
    companion set (typically the rest of its reference set).

    Publications whose observable span is shorter than an offset simply drop
    out of that offset's mean rather than contributing zeros.
    """
    return _mean_series(corpus, group_members), _mean_series(corpus, companion_set)


def size_series(groups: Sequence[HighlyCitedGroup]) -> SizeSeries:
    """Group size and reference-set share per window length."""
    if not groups:
        raise ValueError("need at least one group")
    points = tuple(
        SizePoint(
            window=group.window,
            size=len(group.members),
            reference_set_size=group.reference_set_size,
            share=Fraction(len(group.members), group.reference_set_size),
        )
        for group in groups
    )
    return SizeSeries(cell=groups[0].cell, level=groups[0].level, points=points)
