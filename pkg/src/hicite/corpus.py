"""Corpus loading, validation, and partition-cell indexing.

A corpus holds publications, the journals that carried them, and the
citation events they received. Journals sharing an identical combination of
subject categories form one partition cell; every publication inherits its
journal's cell, so the cells partition the corpus. All read access after
construction is pure, which makes a Corpus safe to share across workers.
"""

from __future__ import annotations

import csv
import logging
from contextlib import nullcontext
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterable, Mapping, Union

from .errors import CorpusValidationError, UnknownCellError
from .util import csv_text, write_text_atomic

logger = logging.getLogger(__name__)

DEFAULT_DOC_TYPE = "article"
CELL_SEPARATOR = "|"
CATEGORY_SEPARATOR = ";"

PUBLICATIONS_FILE = "publications.csv"
JOURNALS_FILE = "journals.csv"
CITATIONS_FILE = "citations.csv"

PUBLICATIONS_HEADER = ("id", "journal_id", "year", "doc_type")
JOURNALS_HEADER = ("journal_id", "categories")
CITATIONS_HEADER = ("publication_id", "citing_year")

# Separator characters may not appear inside identifiers or category names:
# they delimit CSV fields, category lists, and cell keys.
_ID_FORBIDDEN = (",", ";", "\n", "\r")
_CATEGORY_FORBIDDEN = (",", ";", CELL_SEPARATOR, "\n", "\r")

CellKey = str
Source = Union[str, Path, IO[str]]


@dataclass(frozen=True)
class Publication:
    id: str
    journal_id: str
    pub_year: int
    doc_type: str = DEFAULT_DOC_TYPE


@dataclass(frozen=True)
class Journal:
    id: str
    categories: frozenset[str]


@dataclass(frozen=True, order=True)
class CitationEvent:
    publication_id: str
    citing_year: int


@dataclass(frozen=True)
class Corpus:
    """Immutable, fully indexed corpus; build via load_corpus or build_corpus.

    series_index maps each publication id to its per-offset citation counts
    (offset 0 = publication year, last offset reaches horizon_year). It is
    derived data and excluded from equality.
    """

    publications: Mapping[str, Publication]
    journals: Mapping[str, Journal]
    events: tuple[CitationEvent, ...]
    cell_index: Mapping[CellKey, frozenset[str]]
    horizon_year: int | None
    series_index: Mapping[str, tuple[int, ...]] = field(compare=False, repr=False)


def cell_key(categories: Iterable[str]) -> CellKey:
    """Canonical key for a category set: sorted names joined by "|".

    Order-insensitive in input, deterministic in output; two journals share
    a key iff their category sets are equal (category names may not contain
    the separator).
    """
    return CELL_SEPARATOR.join(sorted(set(categories)))


def derive_partition_cells(journals: Iterable[Journal]) -> dict[str, CellKey]:
    """Map each journal id to the cell key canonicalizing its category set."""
    return {journal.id: cell_key(journal.categories) for journal in journals}


def cell_members(corpus: Corpus, cell: CellKey) -> frozenset[str]:
    """Publication ids whose journal belongs to `cell`."""
    members = corpus.cell_index.get(cell)
    if members is None:
        raise UnknownCellError(f"unknown cell {cell!r}")
    return members


def build_corpus(
    publications: Iterable[Publication],
    journals: Iterable[Journal],
    events: Iterable[CitationEvent],
) -> Corpus:
    """Validate already-parsed records and index them into a Corpus.

    Raises CorpusValidationError listing every violation found. Category
    names are expected pre-trimmed; the CSV loader takes care of that.
    """
    problems: list[str] = []

    journal_map: dict[str, Journal] = {}
    for journal in journals:
        if not journal.id:
            problems.append("journal with empty id")
            continue
        if any(ch in journal.id for ch in _ID_FORBIDDEN):
            problems.append(f"journal id {journal.id!r} contains a separator character")
            continue
        if journal.id in journal_map:
            problems.append(f"duplicate journal id {journal.id!r}")
            continue
        if not journal.categories:
            problems.append(f"journal {journal.id!r}: empty category set")
            continue
        bad = [c for c in journal.categories if not c or c != c.strip() or any(ch in c for ch in _CATEGORY_FORBIDDEN)]
        if bad:
            problems.append(f"journal {journal.id!r}: invalid category name {bad[0]!r}")
            continue
        journal_map[journal.id] = journal

    publication_map: dict[str, Publication] = {}
    seen_ids: set[str] = set()
    for pub in publications:
        if not pub.id:
            problems.append("publication with empty id")
            continue
        if any(ch in pub.id for ch in _ID_FORBIDDEN):
            problems.append(f"publication id {pub.id!r} contains a separator character")
            continue
        if pub.id in seen_ids:
            problems.append(f"duplicate publication id {pub.id!r}")
            continue
        seen_ids.add(pub.id)
        if pub.journal_id not in journal_map:
            problems.append(f"publication {pub.id!r}: unknown journal_id {pub.journal_id!r}")
            continue
        if not pub.doc_type:
            problems.append(f"publication {pub.id!r}: empty doc_type")
            continue
        publication_map[pub.id] = pub

    event_list = list(events)
    for event in event_list:
        pub = publication_map.get(event.publication_id)
        if pub is None:
            problems.append(f"citation of unknown publication {event.publication_id!r}")
        elif event.citing_year < pub.pub_year:
            problems.append(
                f"publication {pub.id!r}: citing_year {event.citing_year} precedes publication year {pub.pub_year}"
            )

    if problems:
        raise CorpusValidationError(problems)
    return _index_corpus(publication_map, journal_map, event_list)


def _index_corpus(
    publications: dict[str, Publication],
    journals: dict[str, Journal],
    events: list[CitationEvent],
) -> Corpus:
    years = [p.pub_year for p in publications.values()]
    years += [e.citing_year for e in events]
    horizon = max(years) if years else None

    cell_by_journal = derive_partition_cells(journals.values())
    cells: dict[CellKey, set[str]] = {key: set() for key in cell_by_journal.values()}
    for pub in publications.values():
        cells[cell_by_journal[pub.journal_id]].add(pub.id)

    series: dict[str, list[int]] = {
        pid: [0] * (horizon - pub.pub_year + 1) for pid, pub in publications.items()
    }
    for event in events:
        offset = event.citing_year - publications[event.publication_id].pub_year
        series[event.publication_id][offset] += 1

    return Corpus(
        publications=dict(publications),
        journals=dict(journals),
        events=tuple(sorted(events)),
        cell_index={key: frozenset(members) for key, members in cells.items()},
        horizon_year=horizon,
        series_index={pid: tuple(counts) for pid, counts in series.items()},
    )


def load_corpus(
    publications: Source,
    journals: Source,
    citations: Source,
    doc_type_filter: str | None = DEFAULT_DOC_TYPE,
) -> Corpus:
    """Load and validate a corpus from three CSV sources (paths or streams).

    When doc_type_filter is set (default "article"), publications of any
    other type and their citation events are dropped with a counted warning;
    pass None to keep every document type. All violations are collected and
    raised together as CorpusValidationError; each message names the file,
    row number, and field.
    """
    problems: list[str] = []

    journal_map = _parse_journals(journals, problems)
    publication_map, dropped_ids = _parse_publications(publications, journal_map, doc_type_filter, problems)
    events, dropped_events = _parse_citations(citations, publication_map, dropped_ids, problems)

    if problems:
        raise CorpusValidationError(problems)
    if dropped_ids:
        logger.warning(
            "doc_type filter %r dropped %d publications and %d citation events",
            doc_type_filter,
            len(dropped_ids),
            dropped_events,
        )
    return _index_corpus(publication_map, journal_map, events)


def load_corpus_dir(directory: str | Path, doc_type_filter: str | None = DEFAULT_DOC_TYPE) -> Corpus:
    """Load the three standard CSV files from a directory."""
    directory = Path(directory)
    return load_corpus(
        directory / PUBLICATIONS_FILE,
        directory / JOURNALS_FILE,
        directory / CITATIONS_FILE,
        doc_type_filter,
    )


def write_corpus(corpus: Corpus, directory: str | Path) -> None:
    """Serialize a corpus to the three standard CSV files.

    Output is deterministic (sorted rows, unix line endings, atomic writes),
    so an identical corpus always produces byte-identical files.
    """
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)

    pub_rows = [
        (p.id, p.journal_id, p.pub_year, p.doc_type)
        for p in sorted(corpus.publications.values(), key=lambda p: p.id)
    ]
    journal_rows = [
        (j.id, CATEGORY_SEPARATOR.join(sorted(j.categories)))
        for j in sorted(corpus.journals.values(), key=lambda j: j.id)
    ]
    event_rows = [(e.publication_id, e.citing_year) for e in corpus.events]

    write_text_atomic(directory / PUBLICATIONS_FILE, csv_text(PUBLICATIONS_HEADER, pub_rows))
    write_text_atomic(directory / JOURNALS_FILE, csv_text(JOURNALS_HEADER, journal_rows))
    write_text_atomic(directory / CITATIONS_FILE, csv_text(CITATIONS_HEADER, event_rows))


def _read_table(
    source: Source,
    default_name: str,
    expected_header: tuple[str, ...],
    problems: list[str],
    optional_last: bool = False,
) -> tuple[str, int, list[tuple[int, list[str]]]]:
    """Read CSV rows as (row_number, fields); row 1 is the header.

    A completely empty source is a valid empty table. Returns the source
    name (for error messages), the column count the header declared, and the
    data rows; header problems are appended to `problems`.
    """
    if hasattr(source, "read"):
        name = str(getattr(source, "name", "") or default_name)
        opener = nullcontext(source)
    else:
        path = Path(source)
        name = path.name
        opener = open(path, newline="", encoding="utf-8")

    rows: list[tuple[int, list[str]]] = []
    with opener as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header is None:
            return name, 0, rows
        allowed = [expected_header]
        if optional_last:
            allowed.append(expected_header[:-1])
        got = tuple(h.strip() for h in header)
        if got not in allowed:
            problems.append(
                f"{name} row 1: unexpected header {','.join(header)!r} (expected {','.join(expected_header)!r})"
            )
            return name, 0, rows
        for number, row in enumerate(reader, start=2):
            if not row:
                continue
            rows.append((number, row))
    return name, len(got), rows


def _check_id(value: str, name: str, number: int, fieldname: str, problems: list[str]) -> bool:
    if not value:
        problems.append(f"{name} row {number}: empty id (field {fieldname})")
        return False
    if any(ch in value for ch in _ID_FORBIDDEN):
        problems.append(f"{name} row {number}: id {value!r} contains a separator character (field {fieldname})")
        return False
    return True


def _parse_int(value: str, name: str, number: int, fieldname: str, problems: list[str]) -> int | None:
    try:
        return int(value)
    except ValueError:
        problems.append(f"{name} row {number}: {value!r} is not an integer (field {fieldname})")
        return None


def _parse_journals(source: Source, problems: list[str]) -> dict[str, Journal]:
    name, width, rows = _read_table(source, JOURNALS_FILE, JOURNALS_HEADER, problems)
    journals: dict[str, Journal] = {}
    for number, row in rows:
        if len(row) != width:
            problems.append(f"{name} row {number}: expected {width} fields, got {len(row)}")
            continue
        journal_id, categories_field = row
        if not _check_id(journal_id, name, number, "journal_id", problems):
            continue
        if journal_id in journals:
            problems.append(f"{name} row {number}: duplicate journal id {journal_id!r} (field journal_id)")
            continue
        names = [c.strip() for c in categories_field.split(CATEGORY_SEPARATOR)]
        if not any(names):
            problems.append(f"{name} row {number}: empty category list (field categories)")
            continue
        bad = [c for c in names if not c or any(ch in c for ch in _CATEGORY_FORBIDDEN)]
        if bad:
            problems.append(f"{name} row {number}: invalid category name {bad[0]!r} (field categories)")
            continue
        journals[journal_id] = Journal(id=journal_id, categories=frozenset(names))
    return journals


def _parse_publications(
    source: Source,
    journals: dict[str, Journal],
    doc_type_filter: str | None,
    problems: list[str],
) -> tuple[dict[str, Publication], set[str]]:
    name, width, rows = _read_table(source, PUBLICATIONS_FILE, PUBLICATIONS_HEADER, problems, optional_last=True)
    publications: dict[str, Publication] = {}
    dropped: set[str] = set()
    for number, row in rows:
        if len(row) != width:
            problems.append(f"{name} row {number}: expected {width} fields, got {len(row)}")
            continue
        pub_id, journal_id, year_field = row[0], row[1], row[2]
        doc_type = (row[3].strip() if width == 4 else "") or DEFAULT_DOC_TYPE
        ok = _check_id(pub_id, name, number, "id", problems)
        if ok and (pub_id in publications or pub_id in dropped):
            problems.append(f"{name} row {number}: duplicate publication id {pub_id!r} (field id)")
            ok = False
        if journal_id not in journals:
            problems.append(f"{name} row {number}: unknown journal_id {journal_id!r} (field journal_id)")
            ok = False
        year = _parse_int(year_field, name, number, "year", problems)
        if year is None or not ok:
            continue
        if doc_type_filter and doc_type != doc_type_filter:
            dropped.add(pub_id)
            continue
        publications[pub_id] = Publication(id=pub_id, journal_id=journal_id, pub_year=year, doc_type=doc_type)
    return publications, dropped


def _parse_citations(
    source: Source,
    publications: dict[str, Publication],
    dropped_ids: set[str],
    problems: list[str],
) -> tuple[list[CitationEvent], int]:
    name, width, rows = _read_table(source, CITATIONS_FILE, CITATIONS_HEADER, problems)
    events: list[CitationEvent] = []
    dropped_events = 0
    for number, row in rows:
        if len(row) != width:
            problems.append(f"{name} row {number}: expected {width} fields, got {len(row)}")
            continue
        pub_id, year_field = row
        year = _parse_int(year_field, name, number, "citing_year", problems)
        if year is None:
            continue
        if pub_id in dropped_ids:
            dropped_events += 1
            continue
        pub = publications.get(pub_id)
        if pub is None:
            problems.append(f"{name} row {number}: unknown publication_id {pub_id!r} (field publication_id)")
            continue
        if year < pub.pub_year:
            problems.append(
                f"{name} row {number}: citing_year {year} precedes publication year {pub.pub_year}"
                " (field citing_year)"
            )
            continue
        events.append(CitationEvent(publication_id=pub_id, citing_year=year))
    return events, dropped_events
