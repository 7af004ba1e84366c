"""Exception hierarchy.

``FrobcalcError`` subclasses are domain errors (the CLI maps them to exit
code 2).  They also derive from ``ValueError`` so callers that only know the
standard library still catch them.
"""


class FrobcalcError(ValueError):
    """Base class for every domain error raised by the package."""


class ParseError(FrobcalcError):
    def __init__(self, message, position=None, text=None):
        self.position = position
        self.text = text
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)


class ContextMismatchError(FrobcalcError):
    """Operands live in different rings."""


class InvalidQError(FrobcalcError):
    """``q`` is not a power of the characteristic, or exceeds the cap."""


class ExponentOverflowError(FrobcalcError):
    """An exponent left the supported machine-integer range."""


class UnstabilizedError(FrobcalcError):
    """A chain did not stabilize within its step budget.

    ``chain`` carries the partial :class:`~frobcalc.chains.ChainReport`.
    """

    def __init__(self, message, chain=None):
        self.chain = chain
        super().__init__(message)


class DomainError(FrobcalcError):
    """Input outside an operation's domain (unit where a nonunit is required, ...)."""
