"""Citation-window arithmetic over an indexed corpus.

A window of length L covers calendar-year offsets 0..L-1, with the
publication year itself as offset 0. That convention is fixed everywhere;
it is not configurable.
"""

from __future__ import annotations

from dataclasses import dataclass

from .corpus import CellKey, Corpus
from .errors import UnknownCellError, UnknownPublicationError, WindowRangeError


@dataclass(frozen=True)
class CitationVector:
    """Per-publication citation counts indexed by year offset from publication."""

    publication_id: str
    counts_by_offset: tuple[int, ...]


def _series(corpus: Corpus, publication_id: str) -> tuple[int, ...]:
    series = corpus.series_index.get(publication_id)
    if series is None:
        raise UnknownPublicationError(f"unknown publication {publication_id!r}")
    return series


def citation_series(corpus: Corpus, publication_id: str) -> CitationVector:
    """Citation counts per year offset, out to the corpus horizon."""
    return CitationVector(publication_id, _series(corpus, publication_id))


def citation_count(corpus: Corpus, publication_id: str, length: int) -> int:
    """Number of citations received within the first `length` years."""
    series = _series(corpus, publication_id)
    if length < 1 or length > len(series):
        raise WindowRangeError(
            f"window length {length} invalid for publication {publication_id!r}"
            f" (supported lengths 1..{len(series)})"
        )
    return sum(series[:length])


def max_window_length(corpus: Corpus, cell: CellKey) -> int | None:
    """Longest window fully observable for every member of the cell.

    None for an empty cell (no members constrain the window).
    """
    members = corpus.cell_index.get(cell)
    if members is None:
        raise UnknownCellError(f"unknown cell {cell!r}")
    if not members:
        return None
    return min(len(corpus.series_index[pid]) for pid in members)


def cell_counts(corpus: Corpus, cell: CellKey, length: int) -> list[tuple[str, int]]:
    """(publication id, count) for every cell member at the given window.

    Ordered by count descending, ties broken by id ascending, so the result
    is deterministic for a given corpus regardless of storage order.
    """
    members = corpus.cell_index.get(cell)
    if members is None:
        raise UnknownCellError(f"unknown cell {cell!r}")
    limit = max_window_length(corpus, cell)
    if length < 1 or (limit is not None and length > limit):
        raise WindowRangeError(
            f"window length {length} invalid for cell {cell!r} (supported lengths 1..{limit})"
        )
    pairs = [(pid, sum(corpus.series_index[pid][:length])) for pid in members]
    pairs.sort(key=lambda pair: (-pair[1], pair[0]))
    return pairs
