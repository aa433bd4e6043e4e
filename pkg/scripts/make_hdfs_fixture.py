"""Generate the deterministic HDFS-style accuracy fixture.

Emits tests/data/HDFS_2k_surrogate.log (2000 lines in the classic HDFS v1
layout) plus a ground-truth CSV mapping each line to its generating event.
One event intentionally varies its trailing token count, so a fixed-depth
miner must split it: the fixture exercises the accuracy bar without being a
rigged perfect score.

Run from the repo root: python scripts/make_hdfs_fixture.py
"""

from __future__ import annotations

import csv
import random
from pathlib import Path

SEED = 20240601
LINES = 2000
SPLIT_EVENT_LINES = 6

OUT_DIR = Path(__file__).resolve().parent.parent / "tests" / "data"


def _ip(rng: random.Random) -> str:
    return f"10.251.{rng.randint(0, 255)}.{rng.randint(1, 254)}"


def _blk(rng: random.Random) -> str:
    return f"blk_{rng.choice(['', '-'])}{rng.randint(10**15, 10**18)}"


def _size(rng: random.Random) -> int:
    return rng.randint(1024, 67108864)


def _port(rng: random.Random) -> int:
    return rng.choice([50010, 50020, 50075])


# (truth_id, component, content builder)
EVENTS = [
    ("T01", "dfs.DataNode$DataXceiver",
     lambda r: f"Receiving block {_blk(r)} src: /{_ip(r)}:{_port(r)} dest: /{_ip(r)}:{_port(r)}"),
    ("T02", "dfs.DataNode$PacketResponder",
     lambda r: f"PacketResponder {r.randint(0, 2)} for block {_blk(r)} terminating"),
    ("T03", "dfs.DataNode$DataXceiver",
     lambda r: f"Received block {_blk(r)} of size {_size(r)} from /{_ip(r)}"),
    ("T04", "dfs.FSNamesystem",
     lambda r: f"BLOCK* NameSystem.allocateBlock: /mnt/hadoop/mapred/system/job_20081109{r.randint(1000, 9999)}_{r.randint(1, 999):04d}/job.jar. {_blk(r)}"),
    ("T05", "dfs.FSNamesystem",
     lambda r: f"BLOCK* NameSystem.addStoredBlock: blockMap updated: {_ip(r)}:{_port(r)} is added to {_blk(r)} size {_size(r)}"),
    ("T06", "dfs.DataBlockScanner",
     lambda r: f"Verification succeeded for {_blk(r)}"),
    ("T07", "dfs.DataNode",
     lambda r: f"Deleting block {_blk(r)} file /mnt/hadoop/dfs/data/current/subdir{r.randint(0, 63)}/{_blk(r)}"),
    ("T08", "dfs.FSNamesystem",
     lambda r: f"BLOCK* NameSystem.delete: {_blk(r)} is added to invalidSet of {_ip(r)}:{_port(r)}"),
    ("T09", "dfs.FSNamesystem",
     lambda r: f"BLOCK* ask {_ip(r)}:{_port(r)} to replicate {_blk(r)} to datanode(s) {_ip(r)}:{_port(r)}"),
    ("T10", "dfs.DataNode",
     lambda r: f"{_ip(r)}:Transmitted block {_blk(r)} to /{_ip(r)}:{_port(r)}"),
    ("T11", "dfs.DataNode$DataXceiver",
     lambda r: f"Received block {_blk(r)} src: /{_ip(r)}:{_port(r)} dest: /{_ip(r)}:{_port(r)} of size {_size(r)}"),
    ("T12", "dfs.DataNode$DataXceiver",
     lambda r: f"writeBlock {_blk(r)} received exception java.io.IOException: Could not read from stream"),
    ("T13", "dfs.DataNode$PacketResponder",
     lambda r: f"PacketResponder {_blk(r)} {r.randint(0, 2)} Exception java.io.IOException: Broken pipe"),
    ("T14", "dfs.DataNode",
     lambda r: f"Starting thread to transfer block {_blk(r)} to {_ip(r)}:{_port(r)}"),
]

SPLIT_EVENT = (
    "T15",
    "dfs.DataNode$DataXceiver",
    # Trailing message length varies: 4 tokens vs 2. A length-keyed tree
    # cannot keep these together.
    [
        lambda r: f"Exception in receiveBlock for block {_blk(r)} java.io.IOException: Connection reset by peer",
        lambda r: f"Exception in receiveBlock for block {_blk(r)} java.io.IOException: Broken pipe",
    ],
)


def generate() -> tuple[list[str], list[str]]:
    rng = random.Random(SEED)
    picks: list[tuple[str, str, str]] = []
    for _ in range(LINES - SPLIT_EVENT_LINES):
        truth_id, component, make = rng.choice(EVENTS)
        picks.append((truth_id, component, make(rng)))
    truth_id, component, variants = SPLIT_EVENT
    for i in range(SPLIT_EVENT_LINES):
        picks.append((truth_id, component, variants[i % 2](rng)))
    rng.shuffle(picks)

    lines: list[str] = []
    truth: list[str] = []
    base_minute = 0
    for i, (tid, component, content) in enumerate(picks):
        minute = base_minute + i // 60
        second = i % 60
        stamp = f"0811{9 + minute // 1440:02d} {20_00_00 + (minute % 1440) * 100 + second:06d}"
        pid = 140 + (i * 7) % 400
        lines.append(f"{stamp} {pid} INFO {component}: {content}")
        truth.append(tid)
    return lines, truth


def main() -> None:
    lines, truth = generate()
    OUT_DIR.mkdir(parents=True, exist_ok=True)
    log_path = OUT_DIR / "HDFS_2k_surrogate.log"
    log_path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    truth_path = OUT_DIR / "HDFS_2k_surrogate_truth.csv"
    with truth_path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["LineId", "EventId"])
        for i, tid in enumerate(truth, start=1):
            writer.writerow([i, tid])
    print(f"wrote {log_path} ({len(lines)} lines) and {truth_path}")


if __name__ == "__main__":
    main()
