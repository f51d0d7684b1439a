"""Exception types shared across the package."""


class NewsumError(Exception):
    """Base class for all newsum errors."""


class EmptyInputError(NewsumError):
    """No usable text survived cleaning/segmentation."""


class MissingColumnError(NewsumError):
    """CSV header lacks a required column."""


class MalformedRowError(NewsumError):
    """More than half of the rows failed to parse — wrong format."""


class EmptyCorpusError(NewsumError):
    """Evaluation requested over an empty corpus."""


class MissingModelError(NewsumError):
    """Hybrid method requested without a trained forest."""


class FeatureSpaceMismatchError(NewsumError):
    """Forest feature count does not match the feature space."""


class AuthError(NewsumError):
    """News endpoint rejected the API key (HTTP 401)."""


class RateLimitedError(NewsumError):
    """News endpoint rate limit hit (HTTP 429)."""

    def __init__(self, message: str, retry_after: float | None = None):
        super().__init__(message)
        self.retry_after = retry_after


class TransportError(NewsumError):
    """Timeout / connection failure talking to the news endpoint."""


class BadPayloadError(NewsumError):
    """News endpoint answered with an unexpected body."""
