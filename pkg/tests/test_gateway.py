"""Model access layer: request validation, mock scripts, hashing embedder,
and HTTP behavior against a stub transport."""

from __future__ import annotations

import json

import httpx
import numpy as np
import pytest
from hypothesis import given, strategies as st

from logchat.errors import DimensionMismatchError, GatewayError
from logchat.gateway import (
    HASH_EMBED_DIM,
    ChatRequest,
    MockRule,
    MockScript,
    ModelGateway,
    hash_embed,
    load_mock_script,
    parse_mock_script,
)

from conftest import make_gateway, make_settings


# -- ChatRequest --------------------------------------------------------------


def test_chat_request_rejects_empty_user_text():
    with pytest.raises(ValueError):
        ChatRequest(system_text="s", user_text="")


def test_chat_request_temperature_bounds():
    ChatRequest(system_text="s", user_text="u", temperature=0.0)
    ChatRequest(system_text="s", user_text="u", temperature=2.0)
    with pytest.raises(ValueError):
        ChatRequest(system_text="s", user_text="u", temperature=-0.1)
    with pytest.raises(ValueError):
        ChatRequest(system_text="s", user_text="u", temperature=2.1)


def test_chat_request_is_immutable():
    request = ChatRequest(system_text="s", user_text="u")
    with pytest.raises(AttributeError):
        request.user_text = "other"


# -- mock scripts -------------------------------------------------------------

SCRIPT = """\
# two rules and a default
match: first question
answer one
---

match: re:count \\d+ events
answer two
line two of it
---
default:
fallback
---
"""


def test_parse_script_rules_and_default():
    script = parse_mock_script(SCRIPT)
    assert len(script.rules) == 2
    assert script.reply_for("the first question please") == "answer one"
    assert script.reply_for("count 42 events") == "answer two\nline two of it"
    assert script.reply_for("unrelated") == "fallback"


def test_first_matching_rule_wins():
    script = MockScript(
        rules=(
            MockRule(matcher="alpha", reply="one"),
            MockRule(matcher="alpha beta", reply="two"),
        )
    )
    assert script.reply_for("alpha beta gamma") == "one"


def test_reply_lines_kept_verbatim():
    script = parse_mock_script('match: x\n  {"a": 1}\n\nplain\n---\n')
    assert script.reply_for("x") == '  {"a": 1}\n\nplain'


def test_missing_default_yields_empty_reply():
    script = parse_mock_script("match: x\ny\n---\n")
    assert script.reply_for("zzz") == ""


def test_unterminated_rule_rejected():
    with pytest.raises(ValueError):
        parse_mock_script("match: x\nreply without closing")


def test_stray_line_outside_rule_rejected():
    with pytest.raises(ValueError):
        parse_mock_script("hello\nmatch: x\ny\n---\n")


def test_load_script_from_file(tmp_path):
    path = tmp_path / "replies.txt"
    path.write_text("match: hi\nhello\n---\n", encoding="utf-8")
    script = load_mock_script(path)
    assert script.reply_for("hi there") == "hello"


def test_gateway_uses_script_from_settings(tmp_path):
    path = tmp_path / "replies.txt"
    path.write_text("default:\nscripted\n---\n", encoding="utf-8")
    gw = ModelGateway(settings=make_settings(mock_script=str(path)))
    assert gw.chat_complete(ChatRequest(system_text="s", user_text="anything")) == "scripted"


# -- hashing embedder ---------------------------------------------------------


def test_hash_embed_shape_and_determinism():
    first = hash_embed(["error in datanode", "another line"])
    second = hash_embed(["error in datanode", "another line"])
    assert len(first) == 2
    assert first[0].shape == (HASH_EMBED_DIM,)
    assert np.array_equal(first[0], second[0])
    assert np.array_equal(first[1], second[1])


def test_hash_embed_empty_text_gets_basis_vector():
    vec = hash_embed([""])[0]
    assert vec[0] == 1.0
    assert float(np.linalg.norm(vec)) == 1.0


def test_hash_embed_case_insensitive():
    a, b = hash_embed(["Error Disk", "error disk"])
    assert np.array_equal(a, b)


def test_hash_embed_distinguishes_texts():
    a, b = hash_embed(["receiving block", "deleting file"])
    assert not np.array_equal(a, b)


@given(st.text(alphabet=st.characters(whitelist_categories=("Ll", "Nd", "Zs")), max_size=60))
def test_hash_embed_unit_norm_property(text):
    vec = hash_embed([text])[0]
    assert float(np.linalg.norm(vec)) == pytest.approx(1.0, abs=1e-12)


# -- offline gateway ----------------------------------------------------------


def test_chat_without_backend_or_mock_fails_as_network():
    gw = ModelGateway(settings=make_settings())
    with pytest.raises(GatewayError) as err:
        gw.chat_complete(ChatRequest(system_text="s", user_text="u"))
    assert err.value.category == "network"


def test_mock_reply_takes_priority():
    gw = make_gateway([("ping", "pong")])
    assert gw.chat_complete(ChatRequest(system_text="s", user_text="ping")) == "pong"


def test_embed_offline_uses_hashing():
    gw = ModelGateway(settings=make_settings())
    vecs = gw.embed(["a b c"])
    assert np.array_equal(vecs[0], hash_embed(["a b c"])[0])


def test_embed_rejects_empty_batch():
    gw = ModelGateway(settings=make_settings())
    with pytest.raises(ValueError):
        gw.embed([])


# -- HTTP paths ---------------------------------------------------------------

SECRET = "sk-test-secret-0123"


def http_gateway(handler, **overrides) -> ModelGateway:
    values = {"api_base": "http://api.test/v1/", "api_key": SECRET}
    values.update(overrides)
    gw = ModelGateway(settings=make_settings(**values), backoff_base=0.0)
    gw._client = httpx.Client(transport=httpx.MockTransport(handler))
    return gw


def chat_reply(text: str) -> httpx.Response:
    return httpx.Response(200, json={"choices": [{"message": {"content": text}}]})


def test_chat_posts_expected_payload():
    seen: list[httpx.Request] = []

    def handler(request: httpx.Request) -> httpx.Response:
        seen.append(request)
        return chat_reply("hello back")

    gw = http_gateway(handler)
    out = gw.chat_complete(
        ChatRequest(system_text="frame", user_text="question", temperature=0.2)
    )
    assert out == "hello back"
    request = seen[0]
    assert str(request.url) == "http://api.test/v1/chat/completions"
    assert request.headers["authorization"] == f"Bearer {SECRET}"
    payload = json.loads(request.content)
    assert payload["model"] == "test-chat"
    assert payload["temperature"] == 0.2
    assert payload["messages"] == [
        {"role": "system", "content": "frame"},
        {"role": "user", "content": "question"},
    ]
    assert "max_tokens" not in payload


def test_chat_forwards_max_tokens_and_model_override():
    seen: list[httpx.Request] = []

    def handler(request: httpx.Request) -> httpx.Response:
        seen.append(request)
        return chat_reply("ok")

    gw = http_gateway(handler)
    gw.chat_complete(
        ChatRequest(system_text="s", user_text="u", max_tokens=64, model_name="special")
    )
    payload = json.loads(seen[0].content)
    assert payload["max_tokens"] == 64
    assert payload["model"] == "special"


def test_rate_limit_retries_three_times_then_fails():
    calls = []

    def handler(request: httpx.Request) -> httpx.Response:
        calls.append(1)
        return httpx.Response(429, json={"error": "slow down"})

    gw = http_gateway(handler)
    with pytest.raises(GatewayError) as err:
        gw.chat_complete(ChatRequest(system_text="s", user_text="u"))
    assert err.value.category == "rate_limit"
    assert len(calls) == 3


def test_rate_limit_then_success_recovers():
    calls = []

    def handler(request: httpx.Request) -> httpx.Response:
        calls.append(1)
        if len(calls) == 1:
            return httpx.Response(429)
        return chat_reply("recovered")

    gw = http_gateway(handler)
    assert gw.chat_complete(ChatRequest(system_text="s", user_text="u")) == "recovered"
    assert len(calls) == 2


@pytest.mark.parametrize(
    "status,category",
    [(401, "auth"), (403, "auth"), (500, "network"), (503, "network"), (418, "malformed_response")],
)
def test_http_status_maps_to_category(status, category):
    gw = http_gateway(lambda request: httpx.Response(status, text="nope"))
    with pytest.raises(GatewayError) as err:
        gw.chat_complete(ChatRequest(system_text="s", user_text="u"))
    assert err.value.category == category


def test_non_json_body_is_malformed():
    gw = http_gateway(lambda request: httpx.Response(200, text="<html>oops</html>"))
    with pytest.raises(GatewayError) as err:
        gw.chat_complete(ChatRequest(system_text="s", user_text="u"))
    assert err.value.category == "malformed_response"


def test_json_array_body_is_malformed():
    gw = http_gateway(lambda request: httpx.Response(200, json=[1, 2]))
    with pytest.raises(GatewayError) as err:
        gw.chat_complete(ChatRequest(system_text="s", user_text="u"))
    assert err.value.category == "malformed_response"


def test_reply_missing_choices_is_malformed():
    gw = http_gateway(lambda request: httpx.Response(200, json={"choices": []}))
    with pytest.raises(GatewayError) as err:
        gw.chat_complete(ChatRequest(system_text="s", user_text="u"))
    assert err.value.category == "malformed_response"


def test_transport_failure_is_network_and_never_leaks_key():
    def handler(request: httpx.Request) -> httpx.Response:
        raise httpx.ConnectError("boom with Bearer " + SECRET)

    gw = http_gateway(handler)
    with pytest.raises(GatewayError) as err:
        gw.chat_complete(ChatRequest(system_text="s", user_text="u"))
    assert err.value.category == "network"
    assert SECRET not in str(err.value)


@pytest.mark.parametrize("status", [401, 429, 500, 418])
def test_error_messages_never_leak_key_or_body(status):
    gw = http_gateway(lambda request: httpx.Response(status, text=f"secret body {SECRET}"))
    with pytest.raises(GatewayError) as err:
        gw.chat_complete(ChatRequest(system_text="s", user_text="u"))
    assert SECRET not in str(err.value)
    assert "secret body" not in str(err.value)


def test_no_auth_header_without_key():
    seen: list[httpx.Request] = []

    def handler(request: httpx.Request) -> httpx.Response:
        seen.append(request)
        return chat_reply("ok")

    gw = http_gateway(handler, api_key="")
    gw.chat_complete(ChatRequest(system_text="s", user_text="u"))
    assert "authorization" not in seen[0].headers


def test_embeddings_sorted_by_index():
    def handler(request: httpx.Request) -> httpx.Response:
        return httpx.Response(
            200,
            json={
                "data": [
                    {"index": 1, "embedding": [0.0, 1.0]},
                    {"index": 0, "embedding": [1.0, 0.0]},
                ]
            },
        )

    gw = http_gateway(handler)
    vecs = gw.embed(["first", "second"])
    assert np.array_equal(vecs[0], np.array([1.0, 0.0]))
    assert np.array_equal(vecs[1], np.array([0.0, 1.0]))


def test_embeddings_count_mismatch_is_malformed():
    def handler(request: httpx.Request) -> httpx.Response:
        return httpx.Response(200, json={"data": [{"index": 0, "embedding": [1.0]}]})

    gw = http_gateway(handler)
    with pytest.raises(GatewayError) as err:
        gw.embed(["a", "b"])
    assert err.value.category == "malformed_response"


def test_embeddings_inconsistent_dims_rejected():
    def handler(request: httpx.Request) -> httpx.Response:
        return httpx.Response(
            200,
            json={
                "data": [
                    {"index": 0, "embedding": [1.0, 0.0]},
                    {"index": 1, "embedding": [1.0]},
                ]
            },
        )

    gw = http_gateway(handler)
    with pytest.raises(DimensionMismatchError):
        gw.embed(["a", "b"])


def test_embeddings_non_finite_rejected():
    def handler(request: httpx.Request) -> httpx.Response:
        return httpx.Response(
            200,
            content=b'{"data": [{"index": 0, "embedding": [1.0, NaN]}]}',
            headers={"content-type": "application/json"},
        )

    gw = http_gateway(handler)
    with pytest.raises(GatewayError) as err:
        gw.embed(["a"])
    assert err.value.category == "malformed_response"


def test_close_is_idempotent():
    gw = ModelGateway(settings=make_settings())
    gw.close()
    gw.close()
