"""Log type identification and template mining."""

from .categories import CATEGORIES, is_category
from .drain import (
    WILDCARD,
    DrainConfig,
    DrainTree,
    EventTemplate,
    StructuredLog,
    StructuredRow,
    export_structured_csv,
    export_templates_csv,
    iter_template_rows,
    mask_content,
    parse_lines,
    preprocess_line,
    seq_dist,
    split_line,
)
from .recognizer import identify_log_type
from .registry import load_drain_config

__all__ = [
    "CATEGORIES",
    "DrainConfig",
    "DrainTree",
    "EventTemplate",
    "StructuredLog",
    "StructuredRow",
    "WILDCARD",
    "export_structured_csv",
    "export_templates_csv",
    "identify_log_type",
    "is_category",
    "iter_template_rows",
    "load_drain_config",
    "mask_content",
    "parse_lines",
    "preprocess_line",
    "seq_dist",
    "split_line",
]
