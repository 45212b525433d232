"""Exceptions raised by the sieve toolkit.

Operations raise these; only sieve_toolkit.main turns them into exit codes.
"""


class SieveError(Exception):
    """Base class for every error raised by this package."""


class DomainError(SieveError, ValueError):
    """An argument lies outside the domain of the operation."""


class ResourceError(SieveError):
    """A configured cap (segment, enumeration, table or numeric) was hit."""


class FixtureParseError(SieveError, ValueError):
    """A fixture file could not be parsed."""
    def __init__(self, path, lineno, message):
        super().__init__('{}:{}: {}'.format(path, lineno, message))
        self.path = path
        self.lineno = lineno
