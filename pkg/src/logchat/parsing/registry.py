"""Per-category parsing settings, shipped as editable YAML documents.

One file per category under configs/; an alternative directory can be pointed
at with LOGCHAT_DRAIN_REGISTRY for site overrides. A category without a file
falls back to generic settings (st=0.4, depth=4, whole line as content).
"""

from __future__ import annotations

import os
from importlib import resources
from pathlib import Path

import yaml

from ..errors import UnknownCategoryError
from .categories import is_category
from .drain import DrainConfig


def _config_text(category: str) -> str | None:
    override_dir = os.environ.get("LOGCHAT_DRAIN_REGISTRY", "")
    if override_dir:
        path = Path(override_dir) / f"{category}.yaml"
        if path.is_file():
            return path.read_text(encoding="utf-8")
    packaged = resources.files(__package__) / "configs" / f"{category}.yaml"
    if packaged.is_file():
        return packaged.read_text(encoding="utf-8")
    return None


def load_drain_config(category: str) -> DrainConfig:
    if not is_category(category):
        raise UnknownCategoryError(category)
    text = _config_text(category)
    if text is None:
        return DrainConfig(category=category, log_format="<Content>")
    doc = yaml.safe_load(text) or {}
    return DrainConfig(
        category=category,
        log_format=doc.get("log_format", "<Content>"),
        mask_regexes=tuple(doc.get("mask_regexes", []) or []),
        st=float(doc.get("st", 0.4)),
        depth=int(doc.get("depth", 4)),
        max_children=int(doc.get("max_children", 100)),
    )
