"""Error types raised by the mining pipeline.

Class names double as the stable error identifiers surfaced by the CLI
and the HTTP service (``type(exc).__name__``), so they are kept short
and descriptive rather than suffixed with ``Error``.
"""


class KmapperError(Exception):
    """Base class for all domain errors."""


# dataset ---------------------------------------------------------------

class DuplicateVariable(KmapperError):
    pass


class RaggedRow(KmapperError):
    pass


class NonNumericCell(KmapperError):
    pass


class EmptyTable(KmapperError):
    pass


class OutOfRange(KmapperError):
    pass


class WindowTooSmall(KmapperError):
    pass


class SpecExceedsTable(KmapperError):
    pass


# relation --------------------------------------------------------------

class TooFewPoints(KmapperError):
    pass


class ConstantSeries(KmapperError):
    pass


class UnknownVariable(KmapperError):
    pass


# fuzzy -----------------------------------------------------------------

class NoCompleteRows(KmapperError):
    pass


class NoRuleFires(KmapperError):
    pass


class MissingInput(KmapperError):
    pass


# kmap ------------------------------------------------------------------

class TooFewVariables(KmapperError):
    pass


# fcm -------------------------------------------------------------------

class TooFewStates(KmapperError):
    pass


class LengthMismatch(KmapperError):
    pass


# analysis --------------------------------------------------------------

class VariableSetMismatch(KmapperError):
    pass
