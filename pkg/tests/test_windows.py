import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hicite.errors import UnknownCellError, UnknownPublicationError, WindowRangeError
from hicite.windows import cell_counts, citation_count, citation_series, max_window_length

from helpers import make_corpus, random_corpus, single_cell_corpus


@pytest.fixture
def corpus():
    # P1: events at offsets 0, 1, 1, 3; P2: none; horizon set by P3's event
    return make_corpus(
        {"J1": {"A"}},
        [("P1", "J1", 2004), ("P2", "J1", 2004), ("P3", "J1", 2004)],
        [("P1", 2004), ("P1", 2005), ("P1", 2005), ("P1", 2007), ("P3", 2009)],
    )


def test_series_counts_events_per_offset(corpus):
    assert citation_series(corpus, "P1").counts_by_offset == (1, 2, 0, 1, 0, 0)


def test_series_is_all_zero_without_events(corpus):
    assert citation_series(corpus, "P2").counts_by_offset == (0,) * 6


def test_series_unknown_publication(corpus):
    with pytest.raises(UnknownPublicationError):
        citation_series(corpus, "nope")


def test_citation_count_window_semantics(corpus):
    assert citation_count(corpus, "P1", 2) == 3
    assert citation_count(corpus, "P1", 4) == 4
    assert citation_count(corpus, "P2", 3) == 0
    assert citation_count(corpus, "P1", 6) == 4  # full horizon covers everything


def test_citation_count_rejects_out_of_range_windows(corpus):
    with pytest.raises(WindowRangeError):
        citation_count(corpus, "P1", 0)
    with pytest.raises(WindowRangeError):
        citation_count(corpus, "P1", 7)


def test_cell_counts_orders_by_count_then_id():
    corpus = single_cell_corpus({"B": [3], "A": [0, 5], "C": [3]})
    assert cell_counts(corpus, "Cat", 2) == [("A", 5), ("B", 3), ("C", 3)]
    assert cell_counts(corpus, "Cat", 1) == [("B", 3), ("C", 3), ("A", 0)]


def test_cell_counts_empty_cell_and_unknown_cell():
    corpus = make_corpus({"J1": {"A"}, "J2": {"B"}}, [("P1", "J1", 2004)])
    assert cell_counts(corpus, "B", 1) == []
    with pytest.raises(UnknownCellError):
        cell_counts(corpus, "C", 1)


def test_cell_counts_rejects_window_beyond_cell_limit():
    # members published in different years: the later one caps the window
    corpus = make_corpus(
        {"J1": {"A"}},
        [("P1", "J1", 2000), ("P2", "J1", 2004)],
        [("P1", 2005)],
    )
    assert max_window_length(corpus, "A") == 2
    assert cell_counts(corpus, "A", 2) == [("P1", 0), ("P2", 0)]
    with pytest.raises(WindowRangeError):
        cell_counts(corpus, "A", 3)


@given(st.integers(0, 2**32))
def test_count_is_monotone_and_consistent_with_series(seed):
    corpus = random_corpus(random.Random(seed))
    for pid in corpus.publications:
        series = citation_series(corpus, pid).counts_by_offset
        assert sum(series) == sum(1 for e in corpus.events if e.publication_id == pid)
        previous = 0
        for length in range(1, len(series) + 1):
            count = citation_count(corpus, pid, length)
            assert count >= previous
            assert count == sum(series[:length])
            previous = count
