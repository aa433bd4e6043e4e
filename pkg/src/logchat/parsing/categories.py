"""The registry of supported log categories."""

from __future__ import annotations

# Alphabetical; names double as config-registry keys and recognizer labels.
CATEGORIES: tuple[str, ...] = (
    "Android",
    "Apache",
    "BGL",
    "HDFS",
    "HPC",
    "Hadoop",
    "HealthApp",
    "Linux",
    "Mac",
    "OpenSSH",
    "OpenStack",
    "Proxifier",
    "Spark",
    "Thunderbird",
    "Windows",
    "Zookeeper",
)


def is_category(name: str) -> bool:
    return name in CATEGORIES
