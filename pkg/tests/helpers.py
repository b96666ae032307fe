"""Shared corpus builders and independent brute-force oracles.

The oracles deliberately re-derive results the naive way (filter loops,
threshold scans) so they share no code path with the implementations they
check.
"""

from __future__ import annotations

import random
from fractions import Fraction

from hicite.corpus import CitationEvent, Corpus, Journal, Publication, build_corpus


def make_corpus(journals, publications, events=()) -> Corpus:
    """Build a corpus from compact tuples.

    journals: {journal_id: iterable of categories}
    publications: iterable of (pub_id, journal_id, pub_year) or
        (pub_id, journal_id, pub_year, doc_type)
    events: iterable of (pub_id, citing_year)
    """
    return build_corpus(
        [Publication(*entry) for entry in publications],
        [Journal(jid, frozenset(cats)) for jid, cats in journals.items()],
        [CitationEvent(pid, year) for pid, year in events],
    )


def single_cell_corpus(counts_by_offset: dict[str, list[int]], pub_year: int = 2004) -> Corpus:
    """One journal, one cell; each publication gets the given per-offset counts."""
    publications = [(pid, "J1", pub_year) for pid in counts_by_offset]
    events = [
        (pid, pub_year + offset)
        for pid, offsets in counts_by_offset.items()
        for offset, n in enumerate(offsets)
        for _ in range(n)
    ]
    return make_corpus({"J1": {"Cat"}}, publications, events)


def random_corpus(rng: random.Random, max_pubs: int = 30, max_events: int = 90, n_cells: int = 3) -> Corpus:
    """Small random corpus for property sweeps: a few cells, one cohort year
    span of up to 6 offsets."""
    categories = [{"A"}, {"B"}, {"A", "B"}, {"C"}][:n_cells]
    journals = {f"J{i}": cats for i, cats in enumerate(categories)}
    n_pubs = rng.randint(1, max_pubs)
    pub_year = 2000
    publications = [(f"P{i:03d}", f"J{rng.randrange(len(categories))}", pub_year) for i in range(n_pubs)]
    n_events = rng.randint(0, max_events)
    events = [
        (f"P{rng.randrange(n_pubs):03d}", pub_year + rng.randint(0, 5))
        for _ in range(n_events)
    ]
    return make_corpus(journals, publications, events)


def css_oracle(counts) -> tuple[list[Fraction], int | None]:
    """Reference CSS iteration: literal filter + mean, no shared code."""
    counts = list(counts)
    thresholds: list[Fraction] = []
    stalled = None
    previous = Fraction(0)
    for round_number in (1, 2, 3):
        subset = [c for c in counts if c >= previous]
        mean = Fraction(sum(subset), len(subset))
        if round_number > 1 and mean == previous:
            stalled = round_number
            break
        thresholds.append(mean)
        previous = mean
    return thresholds, stalled


def percentile_oracle(pairs, basis_points: int, tie_mode: str):
    """Reference percentile selection via a scan over every candidate cutoff.

    Returns (member ids, pivot count). The pivot is the largest count value
    whose at-or-above set reaches the required size.
    """
    n = len(pairs)
    required = -(-basis_points * n // 10000)
    candidates = sorted({count for _, count in pairs}, reverse=True)
    pivot = None
    for value in candidates:
        if sum(1 for _, count in pairs if count >= value) >= required:
            pivot = value
            break
    assert pivot is not None
    if tie_mode == "inclusive":
        members = {pid for pid, count in pairs if count >= pivot}
    else:
        ranked = sorted(pairs, key=lambda pair: (-pair[1], pair[0]))
        members = {pid for pid, _ in ranked[:required]}
    return members, pivot
