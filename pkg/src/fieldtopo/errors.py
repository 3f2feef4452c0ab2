"""Exception hierarchy shared across the package."""


class FieldtopoError(Exception):
    """Base class for all errors raised by fieldtopo."""


class ConfigError(FieldtopoError):
    """Invalid configuration value (bad grid size, malformed config file, ...)."""


class DomainError(FieldtopoError):
    """Argument outside the mathematical domain of an operation."""


class DivergenceError(DomainError):
    """A spectral integral does not converge; the message names the offending limit."""


class DegenerateFieldError(DomainError):
    """The field has zero variance (or zero gradient variance) where a scale is required."""


class FormatError(FieldtopoError):
    """A binary or text file does not match the expected on-disk format."""


class SizeError(DomainError):
    """An enumeration request exceeds the guard limit for exhaustive counting."""
