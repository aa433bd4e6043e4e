"""Interactive log analysis: template mining, semantic retrieval, routed
question answering, and evaluation metrics."""

__version__ = "0.1.0"

from .errors import (
    DimensionMismatchError,
    EmptyInputError,
    EmptyKeywordsError,
    EmptyTextError,
    GatewayError,
    LengthMismatchError,
    LogChatError,
    ManifestError,
    MissingParamsError,
    RouteParseError,
    UnknownCategoryError,
)

__all__ = [
    "DimensionMismatchError",
    "EmptyInputError",
    "EmptyKeywordsError",
    "EmptyTextError",
    "GatewayError",
    "LengthMismatchError",
    "LogChatError",
    "ManifestError",
    "MissingParamsError",
    "RouteParseError",
    "UnknownCategoryError",
    "__version__",
]
