"""Two-level routing over scripted model replies."""

from __future__ import annotations

import pytest

from logchat.errors import MissingParamsError, RouteParseError
from logchat.gateway import ChatRequest
from logchat.routing import (
    FALLBACK_DECISION,
    RouteDecision,
    Tier,
    Tool,
    route_level1,
    route_level2,
    route_query,
)

from conftest import L1_MARKER, L2_MARKER, make_gateway


# -- RouteDecision invariants ---------------------------------------------------


def test_decision_tool_only_with_partial():
    with pytest.raises(ValueError):
        RouteDecision(tier=Tier.ALL, tool=Tool.SEMANTIC)
    with pytest.raises(ValueError):
        RouteDecision(tier=Tier.PARTIAL)


def test_decision_keywords_only_with_keyword_tool():
    with pytest.raises(ValueError):
        RouteDecision(tier=Tier.PARTIAL, tool=Tool.SEMANTIC, keywords=("x",))
    with pytest.raises(ValueError):
        RouteDecision(tier=Tier.PARTIAL, tool=Tool.KEYWORD)
    with pytest.raises(ValueError):
        RouteDecision(tier=Tier.PARTIAL, tool=Tool.KEYWORD, keywords=())


def test_decision_event_ids_only_with_event_tool():
    with pytest.raises(ValueError):
        RouteDecision(tier=Tier.PARTIAL, tool=Tool.EVENT)
    with pytest.raises(ValueError):
        RouteDecision(tier=Tier.GENERAL, event_ids=("Event1",))


def test_fallback_is_partial_semantic():
    assert FALLBACK_DECISION.tier is Tier.PARTIAL
    assert FALLBACK_DECISION.tool is Tool.SEMANTIC
    assert FALLBACK_DECISION.keywords is None
    assert FALLBACK_DECISION.event_ids is None


# -- level 1 --------------------------------------------------------------------


@pytest.mark.parametrize(
    "reply,tier",
    [
        ('{"choice": "all"}', Tier.ALL),
        ('{"choice": "Partial"}', Tier.PARTIAL),
        ('{"choice": " GENERAL "}', Tier.GENERAL),
        ('Sure: {"choice": "all"} is my pick', Tier.ALL),
    ],
)
def test_level1_parses_choice(reply, tier):
    gw = make_gateway([(L1_MARKER, reply)])
    assert route_level1("how many errors?", gw) is tier


def test_level1_unparseable_raises_after_retry():
    calls = []
    gw = make_gateway([(L1_MARKER, "none of the above")])
    original = gw.chat_complete

    def counting(request: ChatRequest) -> str:
        calls.append(request)
        return original(request)

    gw.chat_complete = counting
    with pytest.raises(RouteParseError) as err:
        route_level1("q", gw)
    assert err.value.level == 1
    assert len(calls) == 2


def test_level1_rejects_empty_query():
    with pytest.raises(ValueError):
        route_level1("", make_gateway([]))


def test_level1_off_menu_choice_raises():
    gw = make_gateway([(L1_MARKER, '{"choice": "everything"}')])
    with pytest.raises(RouteParseError):
        route_level1("q", gw)


# -- level 2 --------------------------------------------------------------------


def test_level2_keyword_with_params():
    gw = make_gateway(
        [(L2_MARKER, '{"choice": "keyword", "keywords": ["error", "disk"]}')]
    )
    tool, keywords, events = route_level2("find disk errors", gw)
    assert tool is Tool.KEYWORD
    assert keywords == ("error", "disk")
    assert events is None


def test_level2_event_with_params():
    gw = make_gateway([(L2_MARKER, '{"choice": "event", "events": ["Event3", "Event7"]}')])
    tool, keywords, events = route_level2("what does Event3 mean", gw)
    assert tool is Tool.EVENT
    assert keywords is None
    assert events == ("Event3", "Event7")


def test_level2_semantic_and_se_alias():
    for choice in ("semantic", "se", "SE"):
        gw = make_gateway([(L2_MARKER, '{"choice": "%s"}' % choice)])
        tool, keywords, events = route_level2("q", gw)
        assert tool is Tool.SEMANTIC
        assert keywords is None and events is None


def test_level2_keyword_dedup_is_case_insensitive_first_wins():
    gw = make_gateway(
        [(
            L2_MARKER,
            '{"choice": "keyword", "keywords": ["Error", "error", " ERROR ", "disk", 5, ""]}',
        )]
    )
    _, keywords, _ = route_level2("q", gw)
    assert keywords == ("Error", "disk")


def test_level2_keyword_without_params_raises_immediately():
    calls = []
    gw = make_gateway([(L2_MARKER, '{"choice": "keyword", "keywords": []}')])
    original = gw.chat_complete

    def counting(request: ChatRequest) -> str:
        calls.append(request)
        return original(request)

    gw.chat_complete = counting
    with pytest.raises(MissingParamsError):
        route_level2("q", gw)
    assert len(calls) == 1  # params missing is not a parse failure, no retry


def test_level2_event_without_params_raises():
    gw = make_gateway([(L2_MARKER, '{"choice": "event"}')])
    with pytest.raises(MissingParamsError):
        route_level2("q", gw)


def test_level2_unparseable_raises_after_retry():
    gw = make_gateway([(L2_MARKER, "hmm let me think")])
    with pytest.raises(RouteParseError) as err:
        route_level2("q", gw)
    assert err.value.level == 2


# -- full routing ----------------------------------------------------------------


def test_route_query_all_skips_level2():
    calls = []
    gw = make_gateway([(L1_MARKER, '{"choice": "all"}')])
    original = gw.chat_complete

    def counting(request: ChatRequest) -> str:
        calls.append(request.user_text)
        return original(request)

    gw.chat_complete = counting
    decision = route_query("summarize this log", gw)
    assert decision == RouteDecision(tier=Tier.ALL)
    assert len(calls) == 1


def test_route_query_partial_keyword():
    gw = make_gateway(
        [
            (L1_MARKER, '{"choice": "partial"}'),
            (L2_MARKER, '{"choice": "keyword", "keywords": ["fatal"]}'),
        ]
    )
    decision = route_query("find fatal lines", gw)
    assert decision.tier is Tier.PARTIAL
    assert decision.tool is Tool.KEYWORD
    assert decision.keywords == ("fatal",)


def test_route_query_general():
    gw = make_gateway([(L1_MARKER, '{"choice": "general"}')])
    assert route_query("what is a segfault?", gw) == RouteDecision(tier=Tier.GENERAL)


def test_route_query_level1_garbage_degrades_to_fallback():
    gw = make_gateway([(L1_MARKER, "error: model overloaded")])
    assert route_query("q", gw) == FALLBACK_DECISION


def test_route_query_level2_garbage_degrades_to_fallback():
    gw = make_gateway(
        [(L1_MARKER, '{"choice": "partial"}'), (L2_MARKER, "no clue")]
    )
    assert route_query("q", gw) == FALLBACK_DECISION


def test_route_query_missing_params_degrades_to_fallback():
    gw = make_gateway(
        [
            (L1_MARKER, '{"choice": "partial"}'),
            (L2_MARKER, '{"choice": "keyword", "keywords": [""]}'),
        ]
    )
    assert route_query("q", gw) == FALLBACK_DECISION
