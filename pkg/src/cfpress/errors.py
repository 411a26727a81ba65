"""Exception types shared across the package."""


class CfpressError(Exception):
    """Base class for all package-specific failures."""


class SchemaError(CfpressError):
    """An input table or record is missing required structure (for example a column)."""


class AmbiguityError(CfpressError):
    """A pairing key collides, so articles cannot be matched one-to-one."""


class TaggingError(CfpressError):
    """An external entity-tagger exchange line could not be parsed."""


class UndefinedFocusError(CfpressError):
    """Focus is requested for a zero-length body."""


class UndefinedKeynessError(CfpressError):
    """Keyness is requested for empty corpora or for a word absent from both."""


class DegenerateDistributionError(CfpressError):
    """An effect size is undefined because the pooled spread is zero."""


class UndefinedCorrelationError(CfpressError):
    """A correlation is undefined because one input has zero variance."""


class PromptError(CfpressError):
    """A prompt cannot be built from the given article fields."""


class MissingFrameworkError(CfpressError):
    """A context strategy needs a framework snapshot that was not supplied."""


class SnapshotNotFoundError(CfpressError):
    """No usable archive snapshot exists for the requested page and date."""


class ExtractionError(CfpressError):
    """A fetched archive page did not yield the expected content."""


class GenerationError(CfpressError):
    """The completion endpoint failed for an article after retries."""


class MalformedResponseError(GenerationError):
    """The completion endpoint answered but without usable text."""


class ConfigError(CfpressError):
    """A configuration file or value is invalid."""
