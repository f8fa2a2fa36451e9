"""Shared exception types."""


class ArgForecastError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(ArgForecastError, ValueError):
    """A numeric input fell outside its legal interval, or inputs were mixed up."""


class CyclicGraphError(ArgForecastError):
    """The attack/support relation contains a cycle; strength propagation is undefined."""

    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__("cycle detected: " + " -> ".join(self.cycle))


class NotFoundError(ArgForecastError, KeyError):
    """A referenced debate, forecaster or argument does not exist."""


class UnsupportedShapeError(ArgForecastError):
    """The debate does not have the shape an operation requires."""


class GenerationError(ArgForecastError):
    """A variant generation request cannot be satisfied."""


class UndefinedTestError(ArgForecastError):
    """A statistical test is undefined for the given inputs (e.g. zero discordance)."""


class SchemaError(ArgForecastError, ValueError):
    """A document failed schema validation; the message names the offending field."""


class PreconditionError(ArgForecastError, ValueError):
    """An operation precondition was violated (e.g. unresolved records)."""
