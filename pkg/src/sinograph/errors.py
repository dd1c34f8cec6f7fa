"""Exception types shared across the package.

The CLI maps these onto its exit-code scheme: ``InputError`` (and plain
OS errors) become exit code 2, ``DataError`` exit code 3.
"""


class SinographError(Exception):
    """Base class for all package-specific errors."""


class InputError(SinographError, ValueError):
    """Malformed or inconsistent input data (files, records, arguments)."""


class DataError(SinographError, RuntimeError):
    """Inputs parsed fine but the requested computation is impossible,
    e.g. no edge of a graph carries a finite phonetic distance."""
