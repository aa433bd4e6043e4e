"""Exception hierarchy shared across the package."""


class LogChatError(Exception):
    """Base class for all package errors."""


class EmptyInputError(LogChatError):
    """Raised when an operation receives no lines / no text to work on."""


class UnknownCategoryError(LogChatError):
    """The log type recognizer named a category outside the registry."""

    def __init__(self, reply: str):
        super().__init__(f"no supported log category in model reply: {reply!r}")
        self.reply = reply


class LengthMismatchError(LogChatError):
    """Internal invariant violation: token sequences of different lengths compared."""


class EmptyKeywordsError(LogChatError):
    """keyword_search called with an empty keyword list."""


class RouteParseError(LogChatError):
    """The routing model reply could not be mapped to a route after retry."""

    def __init__(self, reply: str, level: int):
        super().__init__(f"unroutable level-{level} reply: {reply!r}")
        self.reply = reply
        self.level = level


class MissingParamsError(LogChatError):
    """A route choice arrived without the parameters that choice requires."""


class DimensionMismatchError(LogChatError):
    """The embedding backend returned vectors of inconsistent dimension."""


class EmptyTextError(LogChatError):
    """A text metric received input with no tokens after normalization."""


class ManifestError(LogChatError):
    """An evaluation manifest failed validation.

    Carries enough context (case index, field) to point at the offending entry.
    """

    def __init__(self, message: str, case_index: int | None = None, field: str | None = None):
        detail = message
        if case_index is not None:
            detail = f"case {case_index}: {detail}"
        super().__init__(detail)
        self.case_index = case_index
        self.field = field


class GatewayError(LogChatError):
    """A model backend call failed.

    category is one of: network, auth, rate_limit, malformed_response.
    """

    CATEGORIES = ("network", "auth", "rate_limit", "malformed_response")

    def __init__(self, category: str, message: str):
        if category not in self.CATEGORIES:
            raise ValueError(f"unknown gateway error category: {category}")
        super().__init__(f"[{category}] {message}")
        self.category = category
