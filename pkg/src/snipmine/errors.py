"""Exception types shared across the toolkit."""


class SnipmineError(Exception):
    """Base class for all toolkit errors."""


class UndefinedInputError(SnipmineError, ValueError):
    """An operation received input for which its result is undefined (e.g. empty)."""


class TaggingError(SnipmineError):
    """A tagger backend failed; carries the index of the offending token."""

    def __init__(self, message: str, token_index: int):
        super().__init__(f"{message} (token index {token_index})")
        self.token_index = token_index


class IngestError(SnipmineError):
    """An input archive or dump could not be read."""


class ConfigError(SnipmineError):
    """Bad configuration or missing resource files."""
