"""Exception types shared across the package.

The split matters for the command line tool: scenario/flag validation
problems exit with status 1, mathematical domain violations discovered
during computation exit with status 2.
"""


class EsplanError(Exception):
    """Base class for all package errors."""


class DomainError(EsplanError, ValueError):
    """A value lies outside the mathematical domain of an operation."""


class UsageError(EsplanError, ValueError):
    """An operation was applied to the wrong kind of value."""


class MissingContextError(UsageError):
    """A baseline risk is required for the requested conversion but none
    was carried by the value or supplied by the caller."""


class ScenarioError(EsplanError, ValueError):
    """One or more invalid entries in a scenario definition.

    ``errors`` holds one human-readable message per problem, each naming
    the offending key and, when parsed from a file, the line number.
    """

    def __init__(self, errors: list[str]):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))
