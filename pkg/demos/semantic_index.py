#!/usr/bin/env python3
"""Chunk a log, embed the chunks, and run nearest-neighbor queries.

With no api_base configured the gateway embeds with a deterministic
hashing scheme, so this demo gives the same output on every run.
"""

import tempfile

from logchat.config import Settings
from logchat.gateway import ModelGateway
from logchat.indexing import (
    build_index,
    chunk_log,
    content_key,
    load_index,
    save_index,
    semantic_search,
)

LOG_TEXT = """\
kernel: audit: initializing netlink socket (disabled)
kernel: audit(1134909868.396:1): initialized
sshd(pam_unix)[19939]: authentication failure; logname= uid=0
sshd(pam_unix)[19937]: check pass; user unknown
su(pam_unix)[21416]: session opened for user cyrus by (uid=0)
su(pam_unix)[21416]: session closed for user cyrus
ftpd[27466]: connection from 84.102.20.2 () at Sun Jun 19 01:55:13 2005
ftpd[27467]: connection from 84.102.20.2 () at Sun Jun 19 01:55:14 2005
"""


def main():
    offline = Settings(api_base="", api_key="", mock_script="", cache_dir="")
    gateway = ModelGateway(settings=offline)

    # small budget so the demo produces several chunks
    chunks = chunk_log(LOG_TEXT, chunk_budget=12)
    print(f"Split {len(LOG_TEXT.splitlines())} lines into {len(chunks)} chunks")
    for c in chunks:
        print(f"  chunk {c.chunk_id}: lines {c.line_span[0]}-{c.line_span[1]}, {c.token_count} tokens")

    # chunks tile the input exactly
    joined = "\n".join(c.text for c in chunks)
    assert joined == LOG_TEXT[:-1]

    index = build_index(chunks, gateway)
    print(f"\nIndex: {len(index.chunks)} vectors of dim {index.vectors.shape[1]}")
    print(f"Content key: {content_key(LOG_TEXT)[:16]}...")

    for query in ["authentication failure", "ftpd connection", "session opened"]:
        hits = semantic_search(index, query, gateway, k=2)
        print(f"\nQuery: {query!r}")
        for chunk, score in hits:
            first_line = chunk.text.splitlines()[0]
            print(f"  score={score:+.4f}  chunk {chunk.chunk_id}: {first_line[:60]}")

    # round-trip through disk
    with tempfile.NamedTemporaryFile(suffix=".idx") as f:
        save_index(index, f.name)
        reloaded = load_index(f.name)
    assert [c.text for c in reloaded.chunks] == [c.text for c in index.chunks]
    print("\nSave/load round-trip OK")


if __name__ == "__main__":
    main()
