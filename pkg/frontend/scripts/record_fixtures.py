#!/usr/bin/env python3
"""Record real service responses as test fixtures.

The UI tests replay these verbatim, so the frontend is tested against
actual wire bodies rather than hand-written approximations. Re-run after
any change to the service's JSON shapes:

    python3 scripts/record_fixtures.py
"""

import json
from pathlib import Path

from fastapi.testclient import TestClient

from logchat.config import Settings
from logchat.gateway import ModelGateway, parse_mock_script
from logchat.service import create_app

LOG_TEXT = """\
Jun 14 15:16:01 combo sshd(pam_unix)[19939]: authentication failure; logname= uid=0
Jun 14 15:16:02 combo sshd(pam_unix)[19937]: check pass; user unknown
Jun 15 02:04:59 combo kernel: audit: initializing netlink socket (disabled)
Jun 15 02:04:59 combo sshd(pam_unix)[20882]: authentication failure; logname= uid=0
"""

SCRIPT = r"""match: categorizing a provided log line
{"category": "Linux"}
---
match: re:'keyword', 'event', or 'se'[\s\S]*authentication
{"choice": "keyword", "keywords": ["authentication"]}
---
match: re:'all', 'partial', or 'general'[\s\S]*what is pam_unix
{"choice": "general"}
---
match: 'all', 'partial', or 'general'
{"choice": "partial"}
---
match: were matched by keywords:
Two sshd lines failed authentication for uid 0.
---
default:
pam_unix is the PAM module that checks passwords against /etc/shadow.
---
"""


def main():
    out = Path(__file__).resolve().parent.parent / "tests" / "fixtures"
    out.mkdir(parents=True, exist_ok=True)

    settings = Settings(
        api_base="", api_key="", mock_script="", cache_dir="",
        temperature=0.0, chunk_tokens=64, max_lines=200,
    )
    gateway = ModelGateway(settings=settings, mock=parse_mock_script(SCRIPT))
    app = create_app(gateway=gateway, settings=settings, max_sessions=4)
    client = TestClient(app)

    upload = client.post(
        "/api/sessions", files={"file": ("sys.log", LOG_TEXT.encode(), "text/plain")}
    )
    upload.raise_for_status()
    session_id = upload.json()["session_id"]

    keyword = client.post(
        f"/api/sessions/{session_id}/chat",
        json={"question": "which lines mention authentication failure"},
    )
    keyword.raise_for_status()

    general = client.post(
        f"/api/sessions/{session_id}/chat", json={"question": "what is pam_unix"}
    )
    general.raise_for_status()

    health = client.get("/api/health")
    health.raise_for_status()

    events = client.get(f"/api/sessions/{session_id}/events")
    events.raise_for_status()

    structured = client.get(f"/api/sessions/{session_id}/structured", params={"event": "Event2"})
    structured.raise_for_status()

    for name, payload in [
        ("upload_response.json", upload.json()),
        ("chat_keyword.json", keyword.json()),
        ("chat_general.json", general.json()),
        ("health.json", health.json()),
        ("structured_event2.json", structured.json()),
    ]:
        (out / name).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    (out / "events.csv").write_text(events.text, encoding="utf-8")
    (out / "uploaded_log.txt").write_text(LOG_TEXT, encoding="utf-8")
    print(f"wrote fixtures to {out}")


if __name__ == "__main__":
    main()
