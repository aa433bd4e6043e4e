"""Keyword and event search, truncation accounting, and a brute-force oracle."""

from __future__ import annotations

import pytest
from hypothesis import given, settings as hsettings, strategies as st

from logchat.errors import EmptyKeywordsError
from logchat.parsing import parse_lines
from logchat.search import SearchResult, event_search, keyword_search, truncate_context

from test_drain import plain_config

LINES = [
    "ERROR disk full on node3",
    "info heartbeat ok",
    "error retry scheduled",
    "user login from 10.0.0.1",
    "Disk check passed",
]


# -- SearchResult invariants ----------------------------------------------------


def test_result_shown_must_match_matches():
    with pytest.raises(ValueError):
        SearchResult(matches=((1, "x"),), total=1, truncated=False, shown=2)


def test_result_total_not_below_shown():
    with pytest.raises(ValueError):
        SearchResult(matches=((1, "x"),), total=0, truncated=False, shown=1)


def test_result_truncated_flag_consistency():
    with pytest.raises(ValueError):
        SearchResult(matches=((1, "x"),), total=5, truncated=False, shown=1)
    with pytest.raises(ValueError):
        SearchResult(matches=((1, "x"),), total=1, truncated=True, shown=1)


# -- keyword search ---------------------------------------------------------------


def test_keyword_search_any_match_case_insensitive():
    result = keyword_search(LINES, ["disk"])
    assert result.lines == ["ERROR disk full on node3", "Disk check passed"]
    assert [line_id for line_id, _ in result.matches] == [1, 5]
    assert result.total == 2
    assert result.truncated is False


def test_keyword_search_multiple_keywords_union():
    result = keyword_search(LINES, ["error", "login"])
    assert [line_id for line_id, _ in result.matches] == [1, 3, 4]


def test_keyword_search_line_ids_are_one_based_file_order():
    result = keyword_search(["b", "a", "b"], ["b"])
    assert result.matches == ((1, "b"), (3, "b"))


def test_keyword_search_no_matches_is_empty_not_error():
    result = keyword_search(LINES, ["nonexistent"])
    assert result.total == 0
    assert result.matches == ()


def test_keyword_search_empty_keywords_rejected():
    with pytest.raises(EmptyKeywordsError):
        keyword_search(LINES, [])
    with pytest.raises(EmptyKeywordsError):
        keyword_search(LINES, ["", ""])


def test_keyword_search_blank_keywords_filtered_but_rest_search():
    result = keyword_search(LINES, ["", "heartbeat"])
    assert result.lines == ["info heartbeat ok"]


# -- event search -----------------------------------------------------------------


@pytest.fixture
def parsed():
    lines = [
        "connect user alice",
        "disk failure now",
        "connect user bob",
        "shutdown complete ok",
    ]
    return parse_lines(lines, plain_config())


def test_event_search_returns_rows_and_templates(parsed):
    structured, templates = parsed
    result, relevant = event_search(structured, templates, ["Event1"])
    assert result.lines == ["connect user alice", "connect user bob"]
    assert [line_id for line_id, _ in result.matches] == [1, 3]
    assert relevant == [["Event1", "connect user <*>", 2]]
    assert result.unknown_event_ids == ()


def test_event_search_unknown_ids_reported_not_fatal(parsed):
    structured, templates = parsed
    result, relevant = event_search(structured, templates, ["Event99", "Event2"])
    assert result.lines == ["disk failure now"]
    assert result.unknown_event_ids == ("Event99",)
    assert relevant == [["Event2", "disk failure now", 1]]


def test_event_search_all_unknown_yields_empty(parsed):
    structured, templates = parsed
    result, relevant = event_search(structured, templates, ["EventX"])
    assert result.total == 0
    assert result.unknown_event_ids == ("EventX",)
    assert relevant == []


def test_event_search_empty_ids_rejected(parsed):
    structured, templates = parsed
    with pytest.raises(EmptyKeywordsError):
        event_search(structured, templates, [])


def test_event_search_preserves_raw_lines(parsed):
    structured, templates = parsed
    result, _ = event_search(structured, templates, ["Event3"])
    assert result.lines == ["shutdown complete ok"]
    assert result.matches[0][0] == 4


# -- truncation -------------------------------------------------------------------


def test_truncate_keeps_head_and_true_total():
    result = keyword_search([f"error {i}" for i in range(10)], ["error"])
    trimmed = truncate_context(result, max_lines=3)
    assert trimmed.shown == 3
    assert trimmed.total == 10
    assert trimmed.truncated is True
    assert trimmed.lines == ["error 0", "error 1", "error 2"]


def test_truncate_noop_when_under_limit():
    result = keyword_search(["error a"], ["error"])
    assert truncate_context(result, max_lines=5) is result


def test_truncate_bad_limit_rejected():
    result = keyword_search(["error a"], ["error"])
    with pytest.raises(ValueError):
        truncate_context(result, max_lines=0)


# -- oracle property ---------------------------------------------------------------

words = st.sampled_from(["error", "disk", "ok", "warn", "node1", "x"])
line_st = st.lists(words, min_size=0, max_size=5).map(" ".join)


@given(
    st.lists(line_st, min_size=0, max_size=40),
    st.lists(st.sampled_from(["error", "disk", "OK", "zzz"]), min_size=1, max_size=3),
    st.integers(min_value=1, max_value=10),
)
@hsettings(max_examples=200, deadline=None)
def test_keyword_search_oracle(lines, keywords, max_lines):
    result = truncate_context(keyword_search(lines, keywords), max_lines)
    expected = [
        (i, line)
        for i, line in enumerate(lines, start=1)
        if any(k.lower() in line.lower() for k in keywords)
    ]
    assert result.total == len(expected)
    assert list(result.matches) == expected[:max_lines]
    assert result.truncated == (len(expected) > max_lines)
    assert result.shown == len(result.matches)
