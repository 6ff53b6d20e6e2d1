"""Exception hierarchy shared by every stage of the toolchain."""


class MedSynthError(Exception):
    """Base class for all package errors."""


class SchemaError(MedSynthError):
    """Header/schema mismatch or an invalid column declaration."""


class FormatError(MedSynthError):
    """A file could not be parsed at all."""


class ConfigError(MedSynthError):
    """Invalid configuration, rules file, or checks file."""


class InsufficientDataError(MedSynthError, ValueError):
    """Too few non-missing values to compute a statistic."""


class UndefinedMetricError(MedSynthError, ValueError):
    """A metric is mathematically undefined for the given inputs."""


class TemplateError(MedSynthError):
    """A prompt template referenced a placeholder with no value."""

    def __init__(self, tag):
        super().__init__(f"unresolved placeholder {{{tag}}}")
        self.tag = tag


class BackendError(MedSynthError):
    """Permanent failure of a text-generation backend."""

    def __init__(self, message, status=None, log=None):
        super().__init__(message)
        self.status = status
        self.log = log


class EmptyGenerationError(MedSynthError):
    """No lines came back from the backend after all retries."""

    def __init__(self, message, log=None):
        super().__init__(message)
        self.log = log


class InfeasibleRulesError(MedSynthError):
    """Rule repair gave up on more than half of the sampled rows."""


class DegenerateLabelError(MedSynthError, ValueError):
    """Training labels contain a single class."""
