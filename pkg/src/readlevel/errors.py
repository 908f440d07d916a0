"""Exception types shared across the package."""


class ReadlevelError(Exception):
    """Base class for all readlevel errors."""


class DataFormatError(ReadlevelError):
    """A corpus, lexicon, or model file is malformed or violates an invariant."""


class ConfigError(ReadlevelError):
    """A run configuration is invalid or inconsistent."""


class LeakageError(ReadlevelError):
    """A validation document reached a fitting step."""


class CatalogMismatchError(ReadlevelError):
    """A model was applied to features from a different catalog."""
