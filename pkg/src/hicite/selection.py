"""Highly cited group selection: pre-set percentiles and CSS classes.

All threshold arithmetic is exact. Conditional means are fractions.Fraction
values and membership tests compare integer counts against them directly,
so a count sitting exactly on a threshold can never be misclassified by
rounding, which matters because group membership is the central quantity
everything downstream consumes.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate
from typing import Iterable, Sequence

from .corpus import CellKey
from .errors import EmptyReferenceSetError

METHOD_PERCENTILE = "percentile"
METHOD_CSS = "css"

CSS_AT_LEAST_REMARKABLY = "at_least_remarkably"
CSS_OUTSTANDINGLY = "outstandingly"
CSS_CLASSES = (CSS_AT_LEAST_REMARKABLY, CSS_OUTSTANDINGLY)

# Iteration depth 3 gives the four citedness classes (poorly, fairly,
# remarkably, outstandingly cited).
CSS_DEPTH = 3

TIE_INCLUSIVE = "inclusive"
TIE_EXACT_SIZE = "exact_size"
TIE_MODES = (TIE_INCLUSIVE, TIE_EXACT_SIZE)

BASIS_POINTS_SCALE = 10_000


@dataclass(frozen=True)
class SelectionLevel:
    """One selection rule: a percentile in basis points, or a CSS class floor."""

    method: str
    basis_points: int | None = None
    css_class: str | None = None

    def __post_init__(self):
        if self.method == METHOD_PERCENTILE:
            if self.basis_points is None or not 1 <= self.basis_points <= BASIS_POINTS_SCALE:
                raise ValueError(f"percentile level needs basis_points in [1, {BASIS_POINTS_SCALE}]")
            if self.css_class is not None:
                raise ValueError("percentile level must not set css_class")
        elif self.method == METHOD_CSS:
            if self.css_class not in CSS_CLASSES:
                raise ValueError(f"css level needs css_class in {CSS_CLASSES}")
            if self.basis_points is not None:
                raise ValueError("css level must not set basis_points")
        else:
            raise ValueError(f"unknown selection method {self.method!r}")

    @property
    def label(self) -> str:
        if self.method == METHOD_PERCENTILE:
            return f"p{self.basis_points}"
        return "css-remarkably" if self.css_class == CSS_AT_LEAST_REMARKABLY else "css-outstandingly"


def percentile_level(basis_points: int) -> SelectionLevel:
    return SelectionLevel(METHOD_PERCENTILE, basis_points=basis_points)


def css_level(css_class: str) -> SelectionLevel:
    return SelectionLevel(METHOD_CSS, css_class=css_class)


# Default levels: top 5% and top 1%, plus both CSS class floors.
DEFAULT_LEVELS = (
    percentile_level(500),
    percentile_level(100),
    css_level(CSS_AT_LEAST_REMARKABLY),
    css_level(CSS_OUTSTANDINGLY),
)


def parse_level(token: str) -> SelectionLevel:
    """Parse a level token: p<basis_points>, css-remarkably, css-outstandingly."""
    if token == "css-remarkably":
        return css_level(CSS_AT_LEAST_REMARKABLY)
    if token == "css-outstandingly":
        return css_level(CSS_OUTSTANDINGLY)
    if token.startswith("p") and token[1:].isdigit():
        return percentile_level(int(token[1:]))
    raise ValueError(
        f"unknown level {token!r} (expected p<basis_points>, css-remarkably, or css-outstandingly)"
    )


def parse_levels(spec: str) -> tuple[SelectionLevel, ...]:
    return tuple(parse_level(token.strip()) for token in spec.split(",") if token.strip())


@dataclass(frozen=True)
class CssThresholds:
    """Iterated conditional means of a count distribution, as exact rationals.

    thresholds[0] is the plain mean; each later entry is the mean of the
    counts at or above the previous one. stalled_at marks the 1-based round
    where the mean stopped moving (no count exceeds it); entries from that
    round on are undefined and absent.
    """

    thresholds: tuple[Fraction, ...]
    stalled_at: int | None = None


@dataclass(frozen=True)
class HighlyCitedGroup:
    cell: CellKey
    level: SelectionLevel
    window: int
    members: frozenset[str]
    effective_threshold: Fraction
    reference_set_size: int


def css_thresholds(counts: Iterable[int]) -> CssThresholds:
    """Compute the CSS thresholds of a non-empty multiset of citation counts.

    Round 1 takes the mean of all counts; round j the mean of counts >= the
    round j-1 value, up to CSS_DEPTH rounds. Iteration stalls when the mean
    repeats, which happens exactly when every remaining count equals it.
    """
    values = sorted(counts)
    if not values:
        raise EmptyReferenceSetError("css thresholds need at least one count")
    if values[0] < 0:
        raise ValueError(f"negative citation count {values[0]}")

    prefix = [0] + list(accumulate(values))
    total = len(values)
    thresholds: list[Fraction] = []
    stalled_at = None
    previous = Fraction(0)
    for round_number in range(1, CSS_DEPTH + 1):
        start = bisect_left(values, previous)
        kept = total - start
        mean = Fraction(prefix[total] - prefix[start], kept)
        if round_number > 1 and mean == previous:
            stalled_at = round_number
            break
        thresholds.append(mean)
        previous = mean
    return CssThresholds(tuple(thresholds), stalled_at)


def css_select(
    cell_counts: Sequence[tuple[str, int]],
    level: SelectionLevel,
    *,
    cell: CellKey = "",
    window: int = 0,
) -> HighlyCitedGroup:
    """Select the publications at or above a CSS class floor.

    at_least_remarkably takes counts >= the round-2 threshold, outstandingly
    counts >= the round-3 one. If iteration stalled before the governing
    round, the group is empty and the last defined threshold is recorded.
    `cell` and `window` are labels carried into the group.
    """
    if not cell_counts:
        raise EmptyReferenceSetError("cannot select from an empty reference set")
    if level.method != METHOD_CSS:
        raise ValueError(f"css_select needs a css level, got {level.label}")
    scales = css_thresholds(count for _, count in cell_counts)
    depth = 2 if level.css_class == CSS_AT_LEAST_REMARKABLY else 3
    if len(scales.thresholds) >= depth:
        threshold = scales.thresholds[depth - 1]
        members = frozenset(pid for pid, count in cell_counts if count >= threshold)
    else:
        threshold = scales.thresholds[-1]
        members = frozenset()
    return HighlyCitedGroup(
        cell=cell,
        level=level,
        window=window,
        members=members,
        effective_threshold=threshold,
        reference_set_size=len(cell_counts),
    )


def percentile_select(
    cell_counts: Sequence[tuple[str, int]],
    basis_points: int,
    tie_mode: str = TIE_INCLUSIVE,
    *,
    cell: CellKey = "",
    window: int = 0,
) -> HighlyCitedGroup:
    """Select the top share of a reference set by citation count.

    With N members and a share of `basis_points`/10000, the pivot is the
    count of the ceil(share*N)-th entry in the (count desc, id asc) order.
    inclusive keeps every entry at or above the pivot (so boundary ties can
    push the group past the nominal size); exact_size cuts at exactly
    ceil(share*N) entries, breaking pivot ties by id.
    """
    if not cell_counts:
        raise EmptyReferenceSetError("cannot select from an empty reference set")
    if not 1 <= basis_points <= BASIS_POINTS_SCALE:
        raise ValueError(f"basis_points must be in [1, {BASIS_POINTS_SCALE}], got {basis_points}")
    if tie_mode not in TIE_MODES:
        raise ValueError(f"unknown tie_mode {tie_mode!r} (expected one of {TIE_MODES})")

    ordered = sorted(cell_counts, key=lambda pair: (-pair[1], pair[0]))
    size = len(ordered)
    rank = -(-basis_points * size // BASIS_POINTS_SCALE)  # ceil
    pivot = ordered[rank - 1][1]
    if tie_mode == TIE_INCLUSIVE:
        members = frozenset(pid for pid, count in ordered if count >= pivot)
    else:
        members = frozenset(pid for pid, _ in ordered[:rank])
    return HighlyCitedGroup(
        cell=cell,
        level=percentile_level(basis_points),
        window=window,
        members=members,
        effective_threshold=Fraction(pivot),
        reference_set_size=size,
    )
